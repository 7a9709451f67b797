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


#include "qnetlab/scenario.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qnetlab/errors.h"
#include "qnetlab/protocols.h"

using namespace qnetlab;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::pair<size_t, size_t> line_column(std::string_view text, size_t byte) {
    size_t line = 1;
    size_t column = 1;
    for (size_t i = 0; i < byte && i < text.size(); i++) {
        if (text[i] == '\n') {
            line++;
            column = 1;
        } else {
            column++;
        }
    }
    return {line, column};
}

[[noreturn]] void schema_error(const std::string &path, const std::string &message) {
    throw ScenarioError(path + ": " + message);
}

const json &field(const json &object, const std::string &key, const std::string &path) {
    if (!object.is_object()) {
        schema_error(path, "expected an object");
    }
    auto it = object.find(key);
    if (it == object.end()) {
        schema_error(path, "missing field '" + key + "'");
    }
    return *it;
}

std::string string_field(const json &object, const std::string &key, const std::string &path) {
    const auto &v = field(object, key, path);
    if (!v.is_string()) {
        schema_error(path + "/" + key, "expected a string");
    }
    return v.get<std::string>();
}

Amplitude amplitude(const json &v, const std::string &path) {
    if (v.is_number()) {
        return {v.get<double>(), 0};
    }
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        schema_error(path, "expected [re, im]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

ResourceSpec resource_spec(const json &r, const std::string &path, const std::string &default_name) {
    ResourceSpec spec;
    spec.name = r.contains("id") ? string_field(r, "id", path) : default_name;
    auto kind = string_field(r, "kind", path);
    if (kind == "bell") {
        spec.kind = ResourceKind::BellPair;
    } else if (kind == "ghz") {
        spec.kind = ResourceKind::Ghz;
    } else {
        schema_error(path + "/kind", "unknown resource kind '" + kind + "' (expected bell or ghz)");
    }
    const auto &endpoints = field(r, "endpoints", path);
    if (!endpoints.is_array()) {
        schema_error(path + "/endpoints", "expected an array of party names");
    }
    for (size_t i = 0; i < endpoints.size(); i++) {
        if (!endpoints[i].is_string()) {
            schema_error(path + "/endpoints/" + std::to_string(i), "expected a party name");
        }
        spec.endpoints.push_back(endpoints[i].get<std::string>());
    }
    return spec;
}

class Validator {
   public:
    explicit Validator(const TopologySpec &network) : parties_(network.parties.begin(), network.parties.end()) {
        for (size_t i = 0; i < network.resources.size(); i++) {
            add_resource(network.resources[i], "/resources/" + std::to_string(i));
        }
    }

    void party(const PartyId &p, const std::string &path) const {
        if (!parties_.count(p)) {
            schema_error(path, "unknown party '" + p + "'");
        }
    }

    void resource(const std::string &name, const std::string &path) const {
        if (!resources_.count(name)) {
            schema_error(path, "unknown resource '" + name + "'");
        }
    }

    void add_resource(const ResourceSpec &r, const std::string &path) {
        size_t expected = r.kind == ResourceKind::BellPair ? 2 : 3;
        if (r.endpoints.size() != expected) {
            schema_error(
                path + "/endpoints", "resource '" + r.name + "' needs " + std::to_string(expected) +
                                         " endpoints, got " + std::to_string(r.endpoints.size()));
        }
        for (size_t i = 0; i < r.endpoints.size(); i++) {
            party(r.endpoints[i], path + "/endpoints/" + std::to_string(i));
        }
        if (!resources_.insert(r.name).second) {
            schema_error(path, "duplicate resource id '" + r.name + "'");
        }
    }

   private:
    std::set<PartyId> parties_;
    std::set<std::string> resources_;
};

ScenarioStep parse_step(const json &s, const std::string &path, Validator &v, size_t &resource_count) {
    auto action = string_field(s, "action", path);
    if (action == "share") {
        ShareStep step{string_field(s, "dealer", path), string_field(s, "resource", path)};
        v.party(step.dealer, path + "/dealer");
        v.resource(step.resource, path + "/resource");
        return step;
    }
    if (action == "revoke") {
        RevokeStep step{string_field(s, "resource", path)};
        v.resource(step.resource, path + "/resource");
        return step;
    }
    if (action == "route") {
        RouteStep step{string_field(s, "receiver", path), string_field(s, "resource", path)};
        v.party(step.receiver, path + "/receiver");
        v.resource(step.resource, path + "/resource");
        return step;
    }
    if (action == "hop") {
        HopStep step{string_field(s, "resource_a", path), string_field(s, "resource_b", path)};
        v.resource(step.resource_a, path + "/resource_a");
        v.resource(step.resource_b, path + "/resource_b");
        return step;
    }
    if (action == "release_bits") {
        ReleaseStep step{string_field(s, "from", path), string_field(s, "to", path)};
        v.party(step.from, path + "/from");
        v.party(step.to, path + "/to");
        return step;
    }
    if (action == "entangle") {
        EntangleStep step{resource_spec(s, path, "r" + std::to_string(resource_count))};
        v.add_resource(step.resource, path);
        resource_count++;
        return step;
    }
    schema_error(path + "/action", "unknown action '" + action + "'");
}

double rounded(double value) {
    return std::round(value * 1e12) / 1e12;
}

std::string join(const std::vector<std::string> &parts) {
    std::string s;
    for (size_t i = 0; i < parts.size(); i++) {
        s += (i ? "," : "") + parts[i];
    }
    return s;
}

std::string payload_text(const std::vector<OutcomeLabel> &payload) {
    std::vector<std::string> parts;
    for (auto o : payload) {
        parts.emplace_back(outcome_name(o));
    }
    return join(parts);
}

ResourceId add_resource(Topology &t, const ResourceSpec &r) {
    if (r.kind == ResourceKind::BellPair) {
        return t.add_bell_pair(r.endpoints[0], r.endpoints[1], r.name);
    }
    return t.add_ghz(r.endpoints[0], r.endpoints[1], r.endpoints[2], r.name);
}

}  // namespace

Scenario qnetlab::parse_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        auto [line, column] = line_column(text, byte);
        std::string what = e.what();
        auto colon = what.find("syntax error");
        throw ScenarioError(
            "syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                (colon == std::string::npos ? what : what.substr(colon)),
            line, column);
    }

    Scenario scenario;
    const auto &parties = field(doc, "parties", "");
    if (!parties.is_array()) {
        schema_error("/parties", "expected an array of party names");
    }
    std::set<PartyId> seen;
    for (size_t i = 0; i < parties.size(); i++) {
        auto path = "/parties/" + std::to_string(i);
        if (!parties[i].is_string() || parties[i].get<std::string>().empty()) {
            schema_error(path, "expected a non-empty party name");
        }
        auto name = parties[i].get<std::string>();
        if (!seen.insert(name).second) {
            schema_error(path, "duplicate party '" + name + "'");
        }
        scenario.network.parties.push_back(name);
    }

    size_t resource_count = 0;
    if (doc.contains("resources")) {
        const auto &resources = doc["resources"];
        if (!resources.is_array()) {
            schema_error("/resources", "expected an array");
        }
        for (size_t i = 0; i < resources.size(); i++) {
            scenario.network.resources.push_back(
                resource_spec(resources[i], "/resources/" + std::to_string(i), "r" + std::to_string(i)));
        }
        resource_count = resources.size();
    }
    Validator validator(scenario.network);

    if (doc.contains("secret")) {
        const auto &s = doc["secret"];
        SecretSpec secret{string_field(s, "owner", "/secret"), amplitude(field(s, "alpha", "/secret"), "/secret/alpha"),
                          amplitude(field(s, "beta", "/secret"), "/secret/beta")};
        validator.party(secret.owner, "/secret/owner");
        double norm = std::sqrt(std::norm(secret.alpha) + std::norm(secret.beta));
        if (!std::isfinite(norm) || std::abs(norm - 1) > 1e-6) {
            schema_error("/secret", "amplitudes have norm " + std::to_string(norm) + ", expected 1 within 1e-6");
        }
        secret.alpha /= norm;
        secret.beta /= norm;
        scenario.network.secret = secret;
    }

    if (doc.contains("script")) {
        const auto &script = doc["script"];
        if (!script.is_array()) {
            schema_error("/script", "expected an array of steps");
        }
        for (size_t i = 0; i < script.size(); i++) {
            scenario.script.push_back(parse_step(script[i], "/script/" + std::to_string(i), validator, resource_count));
        }
    }
    return scenario;
}

Scenario qnetlab::load_scenario(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError("cannot open " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::vector<std::string> qnetlab::trace_lines(const Topology &t) {
    const auto &events = t.log().events();
    std::vector<std::string> lines;
    for (size_t i = 0; i < events.size(); i++) {
        ordered_json j;
        std::visit(
            [&](const auto &e) {
                using T = std::decay_t<decltype(e)>;
                j["seq"] = e.seq;
                if constexpr (std::is_same_v<T, MeasurementEvent>) {
                    bool released = false;
                    for (size_t k = i + 1; k < events.size(); k++) {
                        auto *m = std::get_if<ClassicalMessage>(&events[k]);
                        if (!m) {
                            break;
                        }
                        released |= m->status == MessageStatus::Released;
                    }
                    j["actor"] = e.who;
                    j["action"] = e.basis == Basis::Bell ? "measure_bell" : "measure_hadamard";
                    j["target"] = join(e.qubits);
                    j["outcome"] = outcome_name(e.outcome.label);
                    j["released"] = released;
                    ordered_json relabel = ordered_json::object();
                    for (const auto &[label, index] : e.relabel) {
                        relabel[label] = index;
                    }
                    j["relabel"] = relabel;
                } else if constexpr (std::is_same_v<T, ClassicalMessage>) {
                    j["actor"] = e.from;
                    j["action"] = "send";
                    j["target"] = e.to;
                    j["outcome"] = payload_text(e.payload);
                    j["released"] = e.status == MessageStatus::Released;
                } else if constexpr (std::is_same_v<T, ReleaseEvent>) {
                    j["actor"] = e.from;
                    j["action"] = "release";
                    j["target"] = e.to;
                    j["message"] = e.message_seq;
                    j["released"] = true;
                } else if constexpr (std::is_same_v<T, CorrectionEvent>) {
                    j["actor"] = e.who;
                    j["action"] = "correct";
                    j["target"] = e.qubit;
                    j["correction"] = e.correction.name();
                    j["released"] = false;
                } else {
                    j["actor"] = e.reporter;
                    j["action"] = "frame";
                    j["released"] = true;
                    ordered_json frame = ordered_json::object();
                    for (const auto &[label, p] : e.entries) {
                        frame[label] = p.name();
                    }
                    j["frame"] = frame;
                }
            },
            events[i]);
        lines.push_back(j.dump());
    }
    return lines;
}

RunResult qnetlab::run_scenario(const Scenario &scenario, const TopologyOptions &options) {
    Topology t = build_topology(scenario.network, options);
    std::optional<QubitHandle> secret;
    if (scenario.network.secret) {
        secret = QubitHandle{0};
    }

    auto resource = [&](const std::string &name) {
        auto id = t.find_resource(name);
        if (!id) {
            throw std::invalid_argument("resource '" + name + "' does not exist yet");
        }
        return *id;
    };
    auto live_handle = [](std::optional<SharedSecretHandle> &h, const char *action) -> SharedSecretHandle & {
        if (!h || h->consumed) {
            throw ProtocolError(std::string(action) + " needs a shared secret, but none is live");
        }
        return *h;
    };

    std::optional<SharedSecretHandle> handle;
    std::optional<QubitHandle> result;
    for (const auto &step : scenario.script) {
        std::visit(
            [&](const auto &s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, ShareStep>) {
                    if (!secret) {
                        throw ProtocolError("share needs a secret declared in the scenario");
                    }
                    if (handle && !handle->consumed) {
                        throw ProtocolError("a shared secret is already live");
                    }
                    handle = share(t, s.dealer, resource(s.resource), *secret);
                    secret.reset();
                } else if constexpr (std::is_same_v<T, RevokeStep>) {
                    result = revoke(t, live_handle(handle, "revoke"), resource(s.resource)).recovered;
                } else if constexpr (std::is_same_v<T, RouteStep>) {
                    result = route_reconstruct(t, live_handle(handle, "route"), s.receiver, resource(s.resource))
                                 .reconstructed;
                } else if constexpr (std::is_same_v<T, HopStep>) {
                    handle = hop(t, live_handle(handle, "hop"), resource(s.resource_a), resource(s.resource_b));
                } else if constexpr (std::is_same_v<T, ReleaseStep>) {
                    t.release_bits(s.from, s.to);
                } else {
                    add_resource(t, s.resource);
                }
            },
            step);
    }

    RunResult run;
    run.trace = trace_lines(t);
    run.summary.branches = t.worlds().size();
    run.summary.pruned = t.pruned_worlds();

    ordered_json j;
    j["seq"] = t.log().next_seq();
    if (result && t.qubit(*result).alive) {
        const auto &q = t.qubit(*result);
        auto fidelities = t.secret_fidelities(*result);
        run.summary.holder = q.owner;
        run.summary.qubit = q.label;
        run.summary.fidelity_min = *std::min_element(fidelities.begin(), fidelities.end());
        run.summary.fidelity_max = *std::max_element(fidelities.begin(), fidelities.end());
        j["actor"] = q.owner;
        j["action"] = "verify_secret";
        j["target"] = q.label;
        j["released"] = false;
        j["fidelity"] = rounded(run.summary.fidelity_min);
        j["fidelity_max"] = rounded(run.summary.fidelity_max);
    } else {
        j["actor"] = nullptr;
        j["action"] = "verify_secret";
        j["released"] = false;
        j["fidelity"] = nullptr;
    }
    j["branches"] = run.summary.branches;
    j["pruned"] = run.summary.pruned;
    run.trace.push_back(j.dump());
    return run;
}
