// Copyright 2026 The qnetlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnetlab/network.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qnetlab/errors.h"

using namespace qnetlab;

PauliCorrection PauliFrame::at(QubitHandle q) const {
    auto it = entries_.find(q);
    return it == entries_.end() ? PauliCorrection{} : it->second;
}

void PauliFrame::toggle(QubitHandle q, PauliCorrection delta) {
    auto updated = at(q) ^ delta;
    if (updated.is_identity()) {
        entries_.erase(q);
    } else {
        entries_[q] = updated;
    }
}

void PauliFrame::purge(QubitHandle q) {
    entries_.erase(q);
}

uint64_t qnetlab::event_seq(const Event &event) {
    return std::visit([](const auto &e) { return e.seq; }, event);
}

MessageStatus EventLog::status(uint64_t message_seq) const {
    auto it = status_.find(message_seq);
    if (it == status_.end()) {
        throw std::out_of_range("no message with seq " + std::to_string(message_seq));
    }
    return it->second;
}

uint64_t EventLog::append(Event event) {
    uint64_t seq = next_seq_++;
    std::visit([seq](auto &e) { e.seq = seq; }, event);
    if (auto *m = std::get_if<ClassicalMessage>(&event)) {
        status_[seq] = m->status;
    }
    events_.push_back(std::move(event));
    return seq;
}

Topology::Topology(std::vector<PartyId> parties, TopologyOptions options)
    : parties_(std::move(parties)), options_(options), rng_(options.seed) {
    std::set<PartyId> seen;
    for (const auto &p : parties_) {
        if (p.empty()) {
            throw std::invalid_argument("party names must be non-empty");
        }
        if (!seen.insert(p).second) {
            throw std::invalid_argument("duplicate party '" + p + "'");
        }
    }
    worlds_.push_back(World{});
}

bool Topology::has_party(const PartyId &party) const {
    return std::find(parties_.begin(), parties_.end(), party) != parties_.end();
}

void Topology::require_party(const PartyId &party) const {
    if (!has_party(party)) {
        throw std::invalid_argument("unknown party '" + party + "'");
    }
}

QubitHandle Topology::add_qubit(const PartyId &owner) {
    QubitHandle handle{static_cast<uint32_t>(qubits_.size())};
    uint32_t local = label_counter_[owner]++;
    qubits_.push_back(QubitRecord{handle, owner, owner + "." + std::to_string(local), true, live_count_});
    live_count_++;
    return handle;
}

void Topology::append_state(const PureState &state) {
    if (live_count_ + state.num_qubits() > options_.qubit_cap) {
        throw ResourceLimitError(
            "adding " + std::to_string(state.num_qubits()) + " qubits to " + std::to_string(live_count_) +
            " live qubits exceeds the cap of " + std::to_string(options_.qubit_cap));
    }
    for (auto &w : worlds_) {
        w.state = tensor(w.state, state, options_.qubit_cap);
    }
}

ResourceId Topology::add_bell_pair(const PartyId &a, const PartyId &b, std::string name) {
    require_party(a);
    require_party(b);
    if (a == b) {
        throw std::invalid_argument("Bell pair endpoints must be distinct parties");
    }
    append_state(PureState::bell_pair());
    ResourceId id{static_cast<uint32_t>(resources_.size())};
    if (name.empty()) {
        name = "r" + std::to_string(id.value);
    }
    resources_.push_back(Resource{id, ResourceKind::BellPair, std::move(name), {add_qubit(a), add_qubit(b)}});
    return id;
}

ResourceId Topology::add_ghz(const PartyId &a, const PartyId &b, const PartyId &c, std::string name) {
    require_party(a);
    require_party(b);
    require_party(c);
    if (a == b || b == c || a == c) {
        throw std::invalid_argument("GHZ endpoints must be three distinct parties");
    }
    append_state(PureState::ghz(3));
    ResourceId id{static_cast<uint32_t>(resources_.size())};
    if (name.empty()) {
        name = "r" + std::to_string(id.value);
    }
    resources_.push_back(
        Resource{id, ResourceKind::Ghz, std::move(name), {add_qubit(a), add_qubit(b), add_qubit(c)}});
    return id;
}

QubitHandle Topology::allocate_secret(const PartyId &owner, Amplitude alpha, Amplitude beta) {
    require_party(owner);
    auto s = PureState::qubit(alpha, beta);
    append_state(s);
    secret_ = s;
    return add_qubit(owner);
}

const Resource &Topology::resource(ResourceId id) const {
    if (id.value >= resources_.size()) {
        throw std::out_of_range("unknown resource id " + std::to_string(id.value));
    }
    return resources_[id.value];
}

std::optional<ResourceId> Topology::find_resource(const std::string &name) const {
    for (const auto &r : resources_) {
        if (r.name == name) {
            return r.id;
        }
    }
    return std::nullopt;
}

std::vector<PartyId> Topology::endpoints(ResourceId id) const {
    std::vector<PartyId> result;
    for (auto q : resource(id).qubits) {
        result.push_back(qubit(q).owner);
    }
    return result;
}

const QubitRecord &Topology::qubit(QubitHandle q) const {
    if (q.id >= qubits_.size()) {
        throw std::out_of_range("unknown qubit handle " + std::to_string(q.id));
    }
    return qubits_[q.id];
}

std::vector<QubitHandle> Topology::live_qubits_of(const PartyId &party) const {
    std::vector<QubitHandle> result;
    for (const auto &r : qubits_) {
        if (r.alive && r.owner == party) {
            result.push_back(r.handle);
        }
    }
    return result;
}

void Topology::require_live_owned(const PartyId &who, QubitHandle q) const {
    require_party(who);
    const auto &r = qubit(q);
    if (!r.alive) {
        throw ProtocolError(who + " cannot act on " + r.label + ": qubit already measured");
    }
    if (r.owner != who) {
        throw ProtocolError(who + " cannot act on " + r.label + ": it belongs to " + r.owner);
    }
}

uint64_t Topology::record_measurement(
    const PartyId &who, Basis basis, const std::vector<QubitHandle> &measured,
    const std::function<std::vector<Branch>(const PureState &)> &measure, const std::vector<PartyId> &recipients,
    MessageStatus status) {
    require_party(who);
    for (const auto &p : recipients) {
        require_party(p);
    }
    for (auto q : measured) {
        require_live_owned(who, q);
    }

    uint64_t seq = log_.next_seq();
    std::vector<World> next;
    size_t next_actual = 0;
    for (size_t w = 0; w < worlds_.size(); w++) {
        auto &world = worlds_[w];
        // A pending Pauli on a measured qubit is equivalent to relabeling the
        // outcome; remember the relabeling before the frame entry is purged.
        PauliCorrection flip;
        for (auto q : measured) {
            flip ^= world.frame.at(q);
        }
        if (basis == Basis::Hadamard) {
            flip.x = false;
        }
        world.outcome_flips[seq] = flip;
        auto branches = measure(world.state);
        bool is_actual = w == actual_;
        if (options_.mode == SimulationMode::Sampled || is_actual) {
            // Draw for the actual world in both modes so a seed yields the
            // same reported timeline whether or not the others are kept.
            const Branch &chosen = sample_measurement(branches, rng_);
            if (options_.mode == SimulationMode::Sampled) {
                World updated = std::move(world);
                updated.probability *= chosen.outcome.probability;
                updated.state = chosen.post_state;
                updated.outcomes[seq] = chosen.outcome;
                next.push_back(std::move(updated));
                next_actual = 0;
                continue;
            }
            for (const auto &b : branches) {
                if (b.zero_probability) {
                    pruned_++;
                    continue;
                }
                if (b.outcome.label == chosen.outcome.label) {
                    next_actual = next.size();
                }
                World child = world;
                child.probability *= b.outcome.probability;
                child.state = b.post_state;
                child.outcomes[seq] = b.outcome;
                next.push_back(std::move(child));
            }
            continue;
        }
        for (const auto &b : branches) {
            if (b.zero_probability) {
                pruned_++;
                continue;
            }
            World child = world;
            child.probability *= b.outcome.probability;
            child.state = b.post_state;
            child.outcomes[seq] = b.outcome;
            next.push_back(std::move(child));
        }
    }
    worlds_ = std::move(next);
    actual_ = next_actual;

    std::vector<std::string> labels;
    for (auto q : measured) {
        auto &r = qubits_[q.id];
        labels.push_back(r.label);
        r.alive = false;
        live_count_--;
        for (auto &w : worlds_) {
            w.frame.purge(q);
        }
    }
    std::vector<std::pair<std::string, size_t>> relabel;
    size_t index = 0;
    for (auto &r : qubits_) {
        if (r.alive) {
            r.global_index = index++;
            relabel.emplace_back(r.label, r.global_index);
        }
    }

    Outcome reported = worlds_[actual_].outcomes.at(seq);
    log_.append(MeasurementEvent{0, who, basis, std::move(labels), reported, std::move(relabel)});
    for (const auto &p : recipients) {
        send(who, p, {seq}, status);
    }
    return seq;
}

uint64_t Topology::measure_bell(
    const PartyId &who, QubitHandle q1, QubitHandle q2, const std::vector<PartyId> &recipients,
    MessageStatus status) {
    if (q1 == q2) {
        throw std::invalid_argument("Bell measurement needs two distinct qubits");
    }
    require_live_owned(who, q1);
    require_live_owned(who, q2);
    size_t i1 = qubit(q1).global_index;
    size_t i2 = qubit(q2).global_index;
    auto convention = options_.bell_convention;
    return record_measurement(
        who, Basis::Bell, {q1, q2},
        [=](const PureState &s) { return measure_bell_branches(s, i1, i2, convention); }, recipients, status);
}

uint64_t Topology::measure_hadamard(
    const PartyId &who, QubitHandle q, const std::vector<PartyId> &recipients, MessageStatus status) {
    require_live_owned(who, q);
    size_t i = qubit(q).global_index;
    return record_measurement(
        who, Basis::Hadamard, {q}, [=](const PureState &s) { return measure_hadamard_branches(s, i); },
        recipients, status);
}

uint64_t Topology::send(const PartyId &from, const PartyId &to, std::vector<uint64_t> about, MessageStatus status) {
    require_party(from);
    require_party(to);
    std::vector<OutcomeLabel> payload;
    const auto &actual = worlds_[actual_];
    for (auto s : about) {
        auto it = actual.outcomes.find(s);
        if (it == actual.outcomes.end()) {
            throw std::invalid_argument("no measurement with seq " + std::to_string(s));
        }
        payload.push_back(it->second.label);
    }
    return log_.append(ClassicalMessage{0, from, to, std::move(about), std::move(payload), status});
}

void Topology::release(uint64_t message_seq) {
    if (log_.status(message_seq) == MessageStatus::Released) {
        return;
    }
    const ClassicalMessage *message = nullptr;
    for (const auto &e : log_.events()) {
        if (auto *m = std::get_if<ClassicalMessage>(&e); m && m->seq == message_seq) {
            message = m;
            break;
        }
    }
    log_.status_[message_seq] = MessageStatus::Released;
    log_.append(ReleaseEvent{0, message_seq, message->from, message->to});
}

void Topology::release_bits(const PartyId &from, const PartyId &to) {
    require_party(from);
    require_party(to);
    std::vector<uint64_t> pending;
    for (const auto &e : log_.events()) {
        if (auto *m = std::get_if<ClassicalMessage>(&e);
            m && m->from == from && m->to == to && log_.status(m->seq) == MessageStatus::Withheld) {
            pending.push_back(m->seq);
        }
    }
    for (auto seq : pending) {
        release(seq);
    }
    auto source = known_measurements(from);
    auto target = known_measurements(to);
    std::vector<uint64_t> missing;
    std::set_difference(source.begin(), source.end(), target.begin(), target.end(), std::back_inserter(missing));
    if (!missing.empty()) {
        send(from, to, std::move(missing), MessageStatus::Released);
    }
}

std::set<uint64_t> Topology::known_to(const std::vector<PartyId> &coalition) const {
    std::set<uint64_t> known;
    auto member = [&](const PartyId &p) { return std::find(coalition.begin(), coalition.end(), p) != coalition.end(); };
    for (const auto &e : log_.events()) {
        if (auto *m = std::get_if<MeasurementEvent>(&e); m && member(m->who)) {
            known.insert(m->seq);
        } else if (auto *c = std::get_if<ClassicalMessage>(&e);
                   c && member(c->to) && log_.status(c->seq) == MessageStatus::Released) {
            known.insert(c->about.begin(), c->about.end());
        }
    }
    return known;
}

std::set<uint64_t> Topology::known_measurements(const PartyId &party) const {
    require_party(party);
    return known_to({party});
}

uint64_t Topology::apply_correction(
    const PartyId &who, QubitHandle q, const std::function<PauliCorrection(const World &)> &rule) {
    require_party(who);
    require_live_owned(who, q);
    size_t index = qubit(q).global_index;
    uint64_t seq = log_.next_seq();
    for (auto &w : worlds_) {
        auto p = rule(w);
        w.state = apply_pauli(w.state, p, index);
        w.corrections[seq] = p;
    }
    return log_.append(CorrectionEvent{0, who, qubit(q).label, worlds_[actual_].corrections.at(seq)});
}

uint64_t Topology::update_frames(
    const PartyId &reporter, const std::function<void(const World &, PauliFrame &)> &edit) {
    require_party(reporter);
    for (auto &w : worlds_) {
        edit(w, w.frame);
    }
    std::vector<std::pair<std::string, PauliCorrection>> entries;
    for (const auto &[q, p] : worlds_[actual_].frame.entries()) {
        entries.emplace_back(qubit(q).label, p);
    }
    std::sort(entries.begin(), entries.end());
    return log_.append(FrameEvent{0, reporter, std::move(entries)});
}

PartyView Topology::party_view(const PartyId &party) const {
    return coalition_view({party});
}

PartyView Topology::coalition_view(const std::vector<PartyId> &coalition) const {
    for (const auto &p : coalition) {
        require_party(p);
    }
    if (options_.mode != SimulationMode::Exact) {
        throw ProtocolError("party views average over unseen branches and need exact mode");
    }
    auto known = known_to(coalition);
    const auto &actual = worlds_[actual_];

    PartyView view;
    view.parties = coalition;
    for (const auto &e : log_.events()) {
        if (auto *m = std::get_if<MeasurementEvent>(&e); m && known.count(m->seq)) {
            view.known_outcomes.push_back(KnownOutcome{m->seq, m->who, actual.outcomes.at(m->seq).label});
        }
    }

    std::vector<size_t> held;
    for (const auto &r : qubits_) {
        if (r.alive && std::find(coalition.begin(), coalition.end(), r.owner) != coalition.end()) {
            held.push_back(r.global_index);
        }
    }
    if (held.empty()) {
        view.local_dm = DensityMatrix();
        return view;
    }

    std::vector<WeightedState> ensemble;
    double total = 0;
    for (const auto &w : worlds_) {
        bool consistent = std::all_of(known.begin(), known.end(), [&](uint64_t s) {
            return w.outcomes.at(s).label == actual.outcomes.at(s).label;
        });
        if (consistent) {
            ensemble.push_back(WeightedState{w.probability, partial_trace(w.state, held)});
            total += w.probability;
        }
    }
    for (auto &e : ensemble) {
        e.probability /= total;
    }
    view.local_dm = mix(ensemble);
    return view;
}

std::vector<KnowledgeBranch> Topology::knowledge(const std::vector<PartyId> &coalition) const {
    for (const auto &p : coalition) {
        require_party(p);
    }
    if (options_.mode != SimulationMode::Exact) {
        throw ProtocolError("knowledge states average over unseen branches and need exact mode");
    }
    auto known = known_to(coalition);
    std::vector<size_t> held;
    for (const auto &r : qubits_) {
        if (r.alive && std::find(coalition.begin(), coalition.end(), r.owner) != coalition.end()) {
            held.push_back(r.global_index);
        }
    }
    std::sort(held.begin(), held.end());

    std::map<std::vector<std::pair<uint64_t, OutcomeLabel>>, std::vector<WeightedState>> groups;
    for (const auto &w : worlds_) {
        std::vector<std::pair<uint64_t, OutcomeLabel>> key;
        for (auto s : known) {
            key.emplace_back(s, w.outcomes.at(s).label);
        }
        if (held.empty()) {
            groups[key].push_back(WeightedState{w.probability, DensityMatrix()});
        } else {
            groups[key].push_back(WeightedState{w.probability, partial_trace(w.state, held)});
        }
    }

    std::vector<KnowledgeBranch> result;
    for (auto &[key, ensemble] : groups) {
        double total = 0;
        for (const auto &e : ensemble) {
            total += e.probability;
        }
        for (auto &e : ensemble) {
            e.probability /= total;
        }
        result.push_back(KnowledgeBranch{key, total, mix(ensemble)});
    }
    return result;
}

double qnetlab::knowledge_distance(std::span<const KnowledgeBranch> a, std::span<const KnowledgeBranch> b) {
    auto find = [](std::span<const KnowledgeBranch> side, const KnowledgeBranch &k) -> const KnowledgeBranch * {
        for (const auto &x : side) {
            if (x.known == k.known) {
                return &x;
            }
        }
        return nullptr;
    };
    double distance = 0;
    for (const auto &x : a) {
        const auto *y = find(b, x);
        if (!y) {
            distance += x.probability;
            continue;
        }
        if (x.local_dm.dimension() != y->local_dm.dimension()) {
            throw std::invalid_argument("knowledge branches hold different numbers of qubits");
        }
        Eigen::MatrixXcd diff = x.probability * x.local_dm.matrix() - y->probability * y->local_dm.matrix();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff);
        distance += solver.eigenvalues().cwiseAbs().sum();
    }
    for (const auto &y : b) {
        if (!find(a, y)) {
            distance += y.probability;
        }
    }
    return distance / 2;
}

std::vector<double> Topology::secret_fidelities(QubitHandle q) const {
    if (!secret_) {
        throw std::logic_error("no secret allocated");
    }
    const auto &r = qubit(q);
    if (!r.alive) {
        throw ProtocolError(r.label + " is no longer alive");
    }
    std::array<size_t, 1> keep{r.global_index};
    std::vector<double> result;
    result.reserve(worlds_.size());
    for (const auto &w : worlds_) {
        result.push_back(fidelity(partial_trace(w.state, keep), *secret_));
    }
    return result;
}

Topology qnetlab::build_topology(const TopologySpec &spec, TopologyOptions options) {
    Topology t(spec.parties, options);
    auto check_endpoints = [&](const ResourceSpec &r, size_t expected) {
        if (r.endpoints.size() != expected) {
            throw std::invalid_argument(
                "resource '" + r.name + "' needs " + std::to_string(expected) + " endpoints, got " +
                std::to_string(r.endpoints.size()));
        }
        for (const auto &p : r.endpoints) {
            if (!t.has_party(p)) {
                throw std::invalid_argument("resource '" + r.name + "' references unknown party '" + p + "'");
            }
        }
    };
    for (const auto &r : spec.resources) {
        check_endpoints(r, r.kind == ResourceKind::BellPair ? 2 : 3);
    }
    if (spec.secret) {
        t.allocate_secret(spec.secret->owner, spec.secret->alpha, spec.secret->beta);
    }
    for (const auto &r : spec.resources) {
        if (r.kind == ResourceKind::BellPair) {
            t.add_bell_pair(r.endpoints[0], r.endpoints[1], r.name);
        } else {
            t.add_ghz(r.endpoints[0], r.endpoints[1], r.endpoints[2], r.name);
        }
    }
    return t;
}
