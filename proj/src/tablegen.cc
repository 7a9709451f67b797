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

#include "qnetlab/tablegen.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qnetlab/errors.h"

using namespace qnetlab;

namespace {

using PauliPair = std::vector<PauliCorrection>;

bool restores(const PureState &candidate, const PureState &target) {
    return fidelity_phase_invariant(candidate, target) >= 1 - kTolerance;
}

PureState apply_all(PureState state, std::span<const PauliCorrection> paulis) {
    for (size_t q = 0; q < paulis.size(); q++) {
        state = apply_pauli(state, paulis[q], q);
    }
    return state;
}

std::vector<PauliPair> all_pairs() {
    std::vector<PauliPair> result;
    for (auto a : kAllPaulis) {
        for (auto b : kAllPaulis) {
            result.push_back({a, b});
        }
    }
    return result;
}

std::vector<PauliPair> singletons() {
    std::vector<PauliPair> result;
    for (auto p : kAllPaulis) {
        result.push_back({p});
    }
    return result;
}

// Keeps the candidates that map `state` onto `target`.
void narrow(std::vector<PauliPair> &candidates, const PureState &state, const PureState &target) {
    std::erase_if(candidates, [&](const PauliPair &c) { return !restores(apply_all(state, c), target); });
}

struct PendingRow {
    double probability = -1;
    std::vector<PauliPair> admissible;
};

void record_probability(PendingRow &row, double p, std::span<const OutcomeLabel> outcomes) {
    if (row.probability < 0) {
        row.probability = p;
        return;
    }
    if (std::abs(row.probability - p) > kTolerance) {
        std::string label;
        for (auto o : outcomes) {
            label += std::string(outcome_name(o)) + " ";
        }
        throw OracleError("probability of outcome " + label + "depends on the secret");
    }
}

void require_branch(OutcomeLabel branch) {
    if (!is_bell(branch)) {
        throw std::invalid_argument("sharing branch must be a Bell outcome");
    }
}

void require_samples(std::span<const SecretSample> samples) {
    if (samples.empty()) {
        throw std::invalid_argument("at least one secret sample is required");
    }
}

CorrectionTable finish(
    TableProtocol protocol, OutcomeLabel branch, std::map<std::vector<OutcomeLabel>, PendingRow> pending,
    const std::function<std::string(const PauliPair &)> &fingerprint) {
    CorrectionTable table{protocol, branch, {}};
    for (auto &[outcomes, row] : pending) {
        if (row.admissible.empty()) {
            std::string label;
            for (auto o : outcomes) {
                label += std::string(outcome_name(o)) + " ";
            }
            throw OracleError("no Pauli candidate restores the reference state for outcome " + label);
        }
        TableRow out;
        out.outcomes = outcomes;
        out.probability = row.probability;
        out.admissible = row.admissible;
        out.correction = row.admissible.front();
        out.fingerprint = fingerprint(out.correction);
        table.rows.push_back(std::move(out));
    }
    return table;
}

struct FormTerm {
    int sign;
    char coefficient;
    std::string bits;
};

// Parses "a|00>+b|11>" style forms.
std::vector<FormTerm> parse_form(std::string_view form) {
    std::vector<FormTerm> terms;
    size_t i = 0;
    auto malformed = [&] { return std::invalid_argument("malformed form: " + std::string(form)); };
    while (i < form.size()) {
        int sign = 1;
        if (form[i] == '+' || form[i] == '-') {
            sign = form[i] == '-' ? -1 : 1;
            i++;
        }
        if (i + 1 >= form.size() || (form[i] != 'a' && form[i] != 'b') || form[i + 1] != '|') {
            throw malformed();
        }
        char coefficient = form[i];
        i += 2;
        size_t close = form.find('>', i);
        if (close == std::string_view::npos || close == i) {
            throw malformed();
        }
        terms.push_back({sign, coefficient, std::string(form.substr(i, close - i))});
        i = close + 1;
    }
    if (terms.empty()) {
        throw malformed();
    }
    return terms;
}

std::string secret_form() {
    return "a|0>+b|1>";
}

// Indexed by the dealer's Bell outcome.
constexpr std::array<std::string_view, 4> kFormNames = {
    "a|00>+b|11>",
    "a|00>-b|11>",
    "a|11>+b|00>",
    "a|11>-b|00>",
};

std::string fixed(double value, int digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
    return buffer;
}

double rounded(double value) {
    return std::round(value * 1e12) / 1e12;
}

std::string join_paulis(const PauliPair &paulis) {
    std::string s;
    for (size_t k = 0; k < paulis.size(); k++) {
        if (k) {
            s += ",";
        }
        s += paulis[k].name();
    }
    return s;
}

std::string join_outcomes(std::span<const OutcomeLabel> outcomes) {
    std::string s;
    for (size_t k = 0; k < outcomes.size(); k++) {
        if (k) {
            s += " ";
        }
        s += outcome_name(outcomes[k]);
    }
    return s;
}

// Published rows. Outcome columns follow each table's own column order, which
// matches the outcome order of the derived tables.
using O = OutcomeLabel;
constexpr std::string_view kPsiRetrievalNote =
    "an odd-parity Bell result leaves the dealer's end bit-flipped, so an X is required";

constexpr std::array<PublishedRow, 4> kSharingRows{{
    {"sharing", 1, {O::PhiPlus, O::PhiPlus}, 1, "a|00>+b|11>", false, ""},
    {"sharing", 2, {O::PhiMinus, O::PhiPlus}, 1, "a|00>-b|11>", false, ""},
    {"sharing", 3, {O::PsiPlus, O::PhiPlus}, 1, "a|11>+b|00>", false, ""},
    {"sharing", 4, {O::PsiMinus, O::PhiPlus}, 1, "a|11>-b|00>", false, ""},
}};

constexpr std::array<PublishedRow, 8> kRetrievingRows{{
    {"retrieving", 1, {O::PhiPlus, O::Plus}, 2, "I", false, ""},
    {"retrieving", 2, {O::PhiPlus, O::Minus}, 2, "Z", false, ""},
    {"retrieving", 3, {O::PhiMinus, O::Plus}, 2, "Z", false, ""},
    {"retrieving", 4, {O::PhiMinus, O::Minus}, 2, "I", false, ""},
    {"retrieving", 5, {O::PsiPlus, O::Plus}, 2, "I", true, kPsiRetrievalNote},
    {"retrieving", 6, {O::PsiPlus, O::Minus}, 2, "Z", true, kPsiRetrievalNote},
    {"retrieving", 7, {O::PsiMinus, O::Plus}, 2, "Z", true, kPsiRetrievalNote},
    {"retrieving", 8, {O::PsiMinus, O::Minus}, 2, "I", true, kPsiRetrievalNote},
}};

constexpr std::array<PublishedRow, 8> kSendingRows{{
    {"sending", 1, {O::PhiPlus, O::Plus}, 2, "I", false, ""},
    {"sending", 2, {O::PhiMinus, O::Plus}, 2, "Z", false, ""},
    {"sending", 3, {O::PhiPlus, O::Minus}, 2, "Z", false, ""},
    {"sending", 4, {O::PhiMinus, O::Minus}, 2, "I", false, ""},
    {"sending", 5, {O::PsiPlus, O::Plus}, 2, "X", false, ""},
    {"sending", 6, {O::PsiMinus, O::Plus}, 2, "ZX", false, ""},
    {"sending", 7, {O::PsiPlus, O::Minus}, 2, "ZX", false, ""},
    {"sending", 8, {O::PsiMinus, O::Minus}, 2, "X", false, ""},
}};

}  // namespace

std::string_view qnetlab::protocol_name(TableProtocol protocol) {
    switch (protocol) {
        case TableProtocol::Share:
            return "share";
        case TableProtocol::Revoke:
            return "revoke";
        case TableProtocol::Route:
            return "route";
        case TableProtocol::Hop:
            return "hop";
    }
    return "?";
}

std::optional<TableProtocol> qnetlab::parse_protocol(std::string_view name) {
    for (auto p : {TableProtocol::Share, TableProtocol::Revoke, TableProtocol::Route, TableProtocol::Hop}) {
        if (protocol_name(p) == name) {
            return p;
        }
    }
    return std::nullopt;
}

std::vector<SecretSample> qnetlab::default_secret_samples() {
    std::vector<SecretSample> samples;
    const std::array<std::pair<double, double>, 6> angles{{
        {0.3, 1.1},
        {0.5, -2.0},
        {0.9, 0.4},
        {1.2, 2.7},
        {0.2, -0.6},
        {0.65, 1.9},
    }};
    for (auto [theta, phi] : angles) {
        samples.push_back({std::cos(theta), std::polar(std::sin(theta), phi)});
    }
    return samples;
}

PureState qnetlab::sharing_form(OutcomeLabel branch, const SecretSample &secret) {
    require_branch(branch);
    const auto a = secret.alpha;
    const auto b = secret.beta;
    switch (branch) {
        case OutcomeLabel::PhiPlus:
            return PureState::normalized({a, 0, 0, b});
        case OutcomeLabel::PhiMinus:
            return PureState::normalized({a, 0, 0, -b});
        case OutcomeLabel::PsiPlus:
            return PureState::normalized({b, 0, 0, a});
        default:
            return PureState::normalized({-b, 0, 0, a});
    }
}

std::string_view qnetlab::sharing_form_name(OutcomeLabel branch) {
    require_branch(branch);
    return kFormNames[outcome_index(branch)];
}

bool qnetlab::is_degenerate_secret(const SecretSample &secret) {
    for (size_t i = 0; i < kBellOutcomes.size(); i++) {
        for (size_t j = i + 1; j < kBellOutcomes.size(); j++) {
            if (restores(sharing_form(kBellOutcomes[i], secret), sharing_form(kBellOutcomes[j], secret))) {
                return true;
            }
        }
    }
    return false;
}

const TableRow &CorrectionTable::row(std::span<const OutcomeLabel> outcomes) const {
    for (const auto &r : rows) {
        if (std::equal(r.outcomes.begin(), r.outcomes.end(), outcomes.begin(), outcomes.end())) {
            return r;
        }
    }
    throw std::out_of_range("no row for outcomes " + join_outcomes(outcomes));
}

std::vector<PauliCorrection> qnetlab::admissible_corrections(const PureState &state, const PureState &target) {
    if (state.num_qubits() != 1) {
        throw std::invalid_argument("admissible_corrections expects a single-qubit state");
    }
    std::vector<PauliCorrection> result;
    for (auto p : kAllPaulis) {
        if (restores(apply_pauli(state, p, 0), target)) {
            result.push_back(p);
        }
    }
    return result;
}

std::string qnetlab::render_form(std::span<const PauliCorrection> paulis, std::string_view form) {
    auto terms = parse_form(form);
    for (auto &t : terms) {
        if (t.bits.size() != paulis.size()) {
            throw std::invalid_argument("Pauli count does not match the form's qubit count");
        }
        for (size_t q = 0; q < paulis.size(); q++) {
            if (paulis[q].x) {
                t.bits[q] = t.bits[q] == '0' ? '1' : '0';
            }
            if (paulis[q].z && t.bits[q] == '1') {
                t.sign = -t.sign;
            }
        }
    }
    std::sort(terms.begin(), terms.end(), [](const FormTerm &a, const FormTerm &b) {
        return a.coefficient < b.coefficient;
    });
    int flip = terms.front().sign;
    std::string out;
    for (size_t k = 0; k < terms.size(); k++) {
        int s = terms[k].sign * flip;
        if (k > 0 || s < 0) {
            out += s < 0 ? "-" : "+";
        }
        out += terms[k].coefficient;
        out += "|" + terms[k].bits + ">";
    }
    return out;
}

PureState qnetlab::evaluate_form(std::string_view form, const SecretSample &secret) {
    auto terms = parse_form(form);
    size_t n = terms.front().bits.size();
    std::vector<Amplitude> amps(size_t{1} << n);
    for (const auto &t : terms) {
        if (t.bits.size() != n) {
            throw std::invalid_argument("malformed form: " + std::string(form));
        }
        Amplitude c = t.coefficient == 'a' ? secret.alpha : secret.beta;
        amps[std::stoul(t.bits, nullptr, 2)] += static_cast<double>(t.sign) * c;
    }
    return PureState::normalized(std::move(amps));
}

CorrectionTable qnetlab::derive_share_table(std::span<const SecretSample> samples, BellConvention convention) {
    size_t generic = std::count_if(
        samples.begin(), samples.end(), [](const SecretSample &s) { return !is_degenerate_secret(s); });
    if (generic < 3) {
        throw std::invalid_argument("share table derivation needs at least three non-degenerate secrets");
    }

    std::map<std::vector<OutcomeLabel>, PendingRow> pending;
    std::map<OutcomeLabel, OutcomeLabel> identified;
    std::vector<std::pair<SecretSample, std::vector<Branch>>> degenerate;

    for (const auto &secret : samples) {
        // Qubits: secret, dealer, wing a, wing b.
        auto joint = tensor(PureState::qubit(secret.alpha, secret.beta), PureState::ghz(3));
        auto branches = measure_bell_branches(joint, 0, 1, convention);
        bool is_generic = !is_degenerate_secret(secret);
        for (const auto &b : branches) {
            std::vector<OutcomeLabel> key{b.outcome.label};
            auto &row = pending[key];
            record_probability(row, b.outcome.probability, key);
            if (!is_generic) {
                continue;
            }
            std::vector<OutcomeLabel> matches;
            for (auto form : kBellOutcomes) {
                if (restores(b.post_state, sharing_form(form, secret))) {
                    matches.push_back(form);
                }
            }
            if (matches.size() != 1) {
                throw OracleError(
                    "outcome " + std::string(outcome_name(b.outcome.label)) + " matched " +
                    std::to_string(matches.size()) + " sharing forms for a generic secret");
            }
            auto [it, inserted] = identified.emplace(b.outcome.label, matches.front());
            if (!inserted && it->second != matches.front()) {
                throw OracleError(
                    "outcome " + std::string(outcome_name(b.outcome.label)) + " identified inconsistently");
            }
        }
        if (!is_generic) {
            degenerate.emplace_back(secret, std::move(branches));
        }
    }

    // Wing Paulis relating each row to the phi+ form, narrowed over every sample.
    for (auto &[key, row] : pending) {
        row.admissible = all_pairs();
    }
    for (const auto &secret : samples) {
        auto joint = tensor(PureState::qubit(secret.alpha, secret.beta), PureState::ghz(3));
        auto base = sharing_form(OutcomeLabel::PhiPlus, secret);
        for (const auto &b : measure_bell_branches(joint, 0, 1, convention)) {
            auto &row = pending[{b.outcome.label}];
            std::erase_if(row.admissible, [&](const PauliPair &c) { return !restores(apply_all(base, c), b.post_state); });
        }
    }

    // Degenerate samples cannot identify a form but must still be consistent.
    for (const auto &[secret, branches] : degenerate) {
        for (const auto &b : branches) {
            auto form = identified.at(b.outcome.label);
            if (!restores(b.post_state, sharing_form(form, secret))) {
                throw OracleError("degenerate secret contradicts the identified sharing form");
            }
        }
    }

    return finish(TableProtocol::Share, OutcomeLabel::PhiPlus, std::move(pending), [&](const PauliPair &c) {
        return render_form(c, kFormNames[0]);
    });
}

CorrectionTable qnetlab::derive_revocation_table(
    OutcomeLabel branch, std::span<const SecretSample> samples, BellConvention convention) {
    require_branch(branch);
    require_samples(samples);
    std::map<std::vector<OutcomeLabel>, PendingRow> pending;
    for (const auto &secret : samples) {
        auto target = PureState::qubit(secret.alpha, secret.beta);
        // Qubits: dealer end, holder-a end, wing a, wing b.
        auto joint = tensor(PureState::bell_pair(), sharing_form(branch, secret));
        for (const auto &bell : measure_bell_branches(joint, 1, 2, convention)) {
            // Remaining: dealer end, wing b.
            for (const auto &had : measure_hadamard_branches(bell.post_state, 1)) {
                std::vector<OutcomeLabel> key{bell.outcome.label, had.outcome.label};
                auto &row = pending[key];
                bool first = row.probability < 0;
                record_probability(row, bell.outcome.probability * had.outcome.probability, key);
                if (first) {
                    row.admissible = singletons();
                }
                narrow(row.admissible, had.post_state, target);
            }
        }
    }
    return finish(TableProtocol::Revoke, branch, std::move(pending), [](const PauliPair &c) {
        return render_form(c, secret_form());
    });
}

CorrectionTable qnetlab::derive_routing_table(
    OutcomeLabel branch, std::span<const SecretSample> samples, BellConvention convention) {
    require_branch(branch);
    require_samples(samples);
    std::map<std::vector<OutcomeLabel>, PendingRow> pending;
    for (const auto &secret : samples) {
        auto target = PureState::qubit(secret.alpha, secret.beta);
        // Qubits: wing a, wing b, holder-b end, receiver end.
        auto joint = tensor(sharing_form(branch, secret), PureState::bell_pair());
        for (const auto &bell : measure_bell_branches(joint, 1, 2, convention)) {
            // Remaining: wing a, receiver end.
            for (const auto &had : measure_hadamard_branches(bell.post_state, 0)) {
                std::vector<OutcomeLabel> key{bell.outcome.label, had.outcome.label};
                auto &row = pending[key];
                bool first = row.probability < 0;
                record_probability(row, bell.outcome.probability * had.outcome.probability, key);
                if (first) {
                    row.admissible = singletons();
                }
                narrow(row.admissible, had.post_state, target);
            }
        }
    }
    return finish(TableProtocol::Route, branch, std::move(pending), [](const PauliPair &c) {
        return render_form(c, secret_form());
    });
}

CorrectionTable qnetlab::derive_hop_table(
    OutcomeLabel branch, std::span<const SecretSample> samples, BellConvention convention) {
    require_branch(branch);
    require_samples(samples);
    std::map<std::vector<OutcomeLabel>, PendingRow> pending;
    for (const auto &secret : samples) {
        auto wings = sharing_form(branch, secret);
        // Qubits: wing a, wing b, a end, a next, b end, b next.
        auto joint = tensor(tensor(wings, PureState::bell_pair()), PureState::bell_pair());
        for (const auto &first_swap : measure_bell_branches(joint, 0, 2, convention)) {
            // Remaining: wing b, a next, b end, b next.
            for (const auto &second_swap : measure_bell_branches(first_swap.post_state, 0, 2, convention)) {
                std::vector<OutcomeLabel> key{first_swap.outcome.label, second_swap.outcome.label};
                auto &row = pending[key];
                bool first = row.probability < 0;
                record_probability(row, first_swap.outcome.probability * second_swap.outcome.probability, key);
                if (first) {
                    row.admissible = all_pairs();
                }
                narrow(row.admissible, second_swap.post_state, wings);
            }
        }
    }
    std::string form(sharing_form_name(branch));
    return finish(TableProtocol::Hop, branch, std::move(pending), [form](const PauliPair &c) {
        return render_form(c, form);
    });
}

CorrectionTable qnetlab::derive_share_table() {
    auto samples = default_secret_samples();
    return derive_share_table(samples);
}

CorrectionTable qnetlab::derive_revocation_table(OutcomeLabel branch) {
    auto samples = default_secret_samples();
    return derive_revocation_table(branch, samples);
}

CorrectionTable qnetlab::derive_routing_table(OutcomeLabel branch) {
    auto samples = default_secret_samples();
    return derive_routing_table(branch, samples);
}

CorrectionTable qnetlab::derive_hop_table(OutcomeLabel branch) {
    auto samples = default_secret_samples();
    return derive_hop_table(branch, samples);
}

std::span<const PublishedRow> qnetlab::published_rows(TableProtocol protocol) {
    switch (protocol) {
        case TableProtocol::Share:
            return kSharingRows;
        case TableProtocol::Revoke:
            return kRetrievingRows;
        case TableProtocol::Route:
            return kSendingRows;
        default:
            return {};
    }
}

std::string_view qnetlab::diff_status_name(DiffStatus status) {
    switch (status) {
        case DiffStatus::Agree:
            return "agree";
        case DiffStatus::Erratum:
            return "erratum";
        case DiffStatus::Disagree:
            return "DISAGREE";
    }
    return "?";
}

size_t DiffReport::count(DiffStatus status) const {
    return static_cast<size_t>(
        std::count_if(rows.begin(), rows.end(), [status](const DiffRow &r) { return r.status == status; }));
}

DiffReport qnetlab::diff_against_published(const CorrectionTable &derived) {
    DiffReport report{derived.protocol, derived.branch, false, {}};
    auto published = published_rows(derived.protocol);
    if (published.empty() || derived.branch != OutcomeLabel::PhiPlus) {
        return report;
    }
    report.applicable = true;
    for (const auto &p : published) {
        std::span<const OutcomeLabel> key(p.outcomes.data(), p.arity);
        const auto &row = derived.row(key);
        bool agrees;
        std::string shown;
        if (derived.protocol == TableProtocol::Share) {
            shown = row.fingerprint;
            agrees = shown == p.expected;
        } else {
            shown = join_paulis(row.correction);
            auto expected = PauliCorrection::from_name(p.expected);
            agrees = expected && std::any_of(row.admissible.begin(), row.admissible.end(), [&](const PauliPair &c) {
                         return c.size() == 1 && c[0] == *expected;
                     });
        }
        DiffStatus status = agrees ? DiffStatus::Agree
                                   : (p.suspected_erratum ? DiffStatus::Erratum : DiffStatus::Disagree);
        report.rows.push_back(DiffRow{p, shown, status});
    }
    return report;
}

std::string qnetlab::format_table_text(const CorrectionTable &table, const DiffReport &diff) {
    std::ostringstream out;
    out << "# " << protocol_name(table.protocol) << " table, branch " << outcome_name(table.branch) << ", "
        << table.rows.size() << " rows\n";
    for (const auto &r : table.rows) {
        std::string admissible;
        for (size_t k = 0; k < r.admissible.size(); k++) {
            admissible += (k ? " " : "") + join_paulis(r.admissible[k]);
        }
        char line[256];
        std::snprintf(
            line, sizeof(line), "%-10s p=%s  correction=%-6s state=%-12s admissible=%s\n",
            join_outcomes(r.outcomes).c_str(), fixed(r.probability, 6).c_str(), join_paulis(r.correction).c_str(),
            r.fingerprint.c_str(), admissible.c_str());
        out << line;
    }
    if (!diff.applicable) {
        out << "# no published rows to compare\n";
        return out.str();
    }
    out << "# published " << diff.rows.front().published.table << " table: " << diff.count(DiffStatus::Agree)
        << " agree, " << diff.count(DiffStatus::Erratum) << " suspected erratum, "
        << diff.count(DiffStatus::Disagree) << " disagree\n";
    for (const auto &d : diff.rows) {
        std::span<const OutcomeLabel> key(d.published.outcomes.data(), d.published.arity);
        char line[512];
        std::snprintf(
            line, sizeof(line), "  row %d  %-10s published=%-12s derived=%-12s %s", d.published.row,
            join_outcomes(key).c_str(), std::string(d.published.expected).c_str(), d.derived.c_str(),
            std::string(diff_status_name(d.status)).c_str());
        out << line;
        if (d.status == DiffStatus::Erratum) {
            out << " (" << d.published.note << ")";
        }
        out << "\n";
    }
    return out.str();
}

nlohmann::ordered_json qnetlab::table_to_json(const CorrectionTable &table, const DiffReport &diff) {
    nlohmann::ordered_json j;
    j["protocol"] = protocol_name(table.protocol);
    j["branch"] = outcome_name(table.branch);
    auto rows = nlohmann::ordered_json::array();
    for (const auto &r : table.rows) {
        nlohmann::ordered_json row;
        auto outcomes = nlohmann::ordered_json::array();
        for (auto o : r.outcomes) {
            outcomes.push_back(outcome_name(o));
        }
        row["outcomes"] = outcomes;
        row["probability"] = rounded(r.probability);
        auto correction = nlohmann::ordered_json::array();
        for (auto p : r.correction) {
            correction.push_back(p.name());
        }
        row["correction"] = correction;
        auto admissible = nlohmann::ordered_json::array();
        for (const auto &c : r.admissible) {
            admissible.push_back(join_paulis(c));
        }
        row["admissible"] = admissible;
        row["state"] = r.fingerprint;
        rows.push_back(row);
    }
    j["rows"] = rows;
    if (diff.applicable) {
        nlohmann::ordered_json d;
        d["table"] = diff.rows.front().published.table;
        d["agree"] = diff.count(DiffStatus::Agree);
        d["erratum"] = diff.count(DiffStatus::Erratum);
        d["disagree"] = diff.count(DiffStatus::Disagree);
        auto entries = nlohmann::ordered_json::array();
        for (const auto &r : diff.rows) {
            nlohmann::ordered_json e;
            e["row"] = r.published.row;
            auto outcomes = nlohmann::ordered_json::array();
            for (size_t k = 0; k < r.published.arity; k++) {
                outcomes.push_back(outcome_name(r.published.outcomes[k]));
            }
            e["outcomes"] = outcomes;
            e["published"] = r.published.expected;
            e["derived"] = r.derived;
            e["status"] = diff_status_name(r.status);
            entries.push_back(e);
        }
        d["rows"] = entries;
        j["diff"] = d;
    } else {
        j["diff"] = nullptr;
    }
    return j;
}
