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

// Brute-force derivation of every correction table.
//
// Everything here is built from statevec primitives only: prepare the state a
// protocol step acts on, enumerate measurement branches, then try every Pauli
// candidate against the reference state. Nothing from protocols.h is used, so
// the tables are an independent check on the protocol implementation.

#ifndef QNETLAB_TABLEGEN_H
#define QNETLAB_TABLEGEN_H

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "qnetlab/outcome.h"
#include "qnetlab/pauli.h"
#include "qnetlab/statevec.h"

namespace qnetlab {

enum class TableProtocol : uint8_t { Share, Revoke, Route, Hop };

std::string_view protocol_name(TableProtocol protocol);
std::optional<TableProtocol> parse_protocol(std::string_view name);

struct SecretSample {
    Amplitude alpha;
    Amplitude beta;
};

/// Fixed generic secrets (no zero amplitudes, |alpha| != |beta|, complex ratio).
std::vector<SecretSample> default_secret_samples();

/// True when two or more sharing forms coincide for this secret.
bool is_degenerate_secret(const SecretSample &secret);

/// The two-qubit state the wings hold for each dealer Bell outcome:
/// a|00>+b|11>, a|00>-b|11>, a|11>+b|00>, a|11>-b|00>.
PureState sharing_form(OutcomeLabel branch, const SecretSample &secret);
std::string_view sharing_form_name(OutcomeLabel branch);

struct TableRow {
    std::vector<OutcomeLabel> outcomes;
    /// Joint probability of `outcomes` given the protocol's input state.
    double probability = 0;
    /// Canonical correction, one Pauli per target qubit.
    std::vector<PauliCorrection> correction;
    /// Every candidate that works for all samples, in canonical order.
    std::vector<std::vector<PauliCorrection>> admissible;
    /// The state before correction, written in terms of a and b.
    std::string fingerprint;
};

/// Rows are sorted by outcome tuple. Outcome order per protocol:
///   share:  (dealer Bell)                              -> wings relative to a|00>+b|11>
///   revoke: (wing-a Bell, wing-b Hadamard)             -> dealer qubit
///   route:  (wing-b Bell, wing-a Hadamard)             -> receiver qubit
///   hop:    (wing-a Bell, wing-b Bell)                 -> both new wings
struct CorrectionTable {
    TableProtocol protocol;
    /// Sharing branch the table assumes; phi+ for the share table itself.
    OutcomeLabel branch;
    std::vector<TableRow> rows;

    const TableRow &row(std::span<const OutcomeLabel> outcomes) const;
    const TableRow &row(std::initializer_list<OutcomeLabel> outcomes) const {
        return row(std::span<const OutcomeLabel>(outcomes.begin(), outcomes.size()));
    }
};

/// Needs at least three non-degenerate samples. Degenerate samples are still
/// checked for fidelity but do not vote on identification.
CorrectionTable derive_share_table(
    std::span<const SecretSample> samples, BellConvention convention = BellConvention::Standard);
CorrectionTable derive_revocation_table(
    OutcomeLabel branch, std::span<const SecretSample> samples,
    BellConvention convention = BellConvention::Standard);
CorrectionTable derive_routing_table(
    OutcomeLabel branch, std::span<const SecretSample> samples,
    BellConvention convention = BellConvention::Standard);
CorrectionTable derive_hop_table(
    OutcomeLabel branch, std::span<const SecretSample> samples,
    BellConvention convention = BellConvention::Standard);

CorrectionTable derive_share_table();
CorrectionTable derive_revocation_table(OutcomeLabel branch);
CorrectionTable derive_routing_table(OutcomeLabel branch);
CorrectionTable derive_hop_table(OutcomeLabel branch);

/// Single-qubit Paulis P with |<target| P |state>| >= 1 - tolerance.
std::vector<PauliCorrection> admissible_corrections(const PureState &state, const PureState &target);

/// Renders P|psi> for psi = a|x..>+b|y..> with the a-term first and positive.
std::string render_form(std::span<const PauliCorrection> paulis, std::string_view form);

/// The state a form such as "a|11>-b|00>" denotes for this secret.
PureState evaluate_form(std::string_view form, const SecretSample &secret);

/// One row of a published table, transcribed verbatim.
struct PublishedRow {
    std::string_view table;
    int row;
    std::array<OutcomeLabel, 2> outcomes;
    size_t arity;
    /// A sharing form for the share table, a Pauli name otherwise.
    std::string_view expected;
    bool suspected_erratum;
    std::string_view note;
};

/// Published rows for the phi+ branch, in publication order. Empty for hop.
std::span<const PublishedRow> published_rows(TableProtocol protocol);

enum class DiffStatus : uint8_t { Agree, Erratum, Disagree };
std::string_view diff_status_name(DiffStatus status);

struct DiffRow {
    PublishedRow published;
    std::string derived;
    DiffStatus status;
};

struct DiffReport {
    TableProtocol protocol;
    OutcomeLabel branch;
    /// False when there are no published rows for this protocol and branch.
    bool applicable = false;
    std::vector<DiffRow> rows;

    size_t count(DiffStatus status) const;
    /// No disagreement outside rows marked as suspected errata.
    bool ok() const {
        return count(DiffStatus::Disagree) == 0;
    }
    /// Every published row reproduced as printed.
    bool all_agree() const {
        return applicable && count(DiffStatus::Agree) == rows.size();
    }
};

/// Compares a derived table with the published rows for its protocol.
DiffReport diff_against_published(const CorrectionTable &derived);

std::string format_table_text(const CorrectionTable &table, const DiffReport &diff);
nlohmann::ordered_json table_to_json(const CorrectionTable &table, const DiffReport &diff);

}  // namespace qnetlab

#endif
