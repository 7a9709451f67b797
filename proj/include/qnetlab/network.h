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

#ifndef QNETLAB_NETWORK_H
#define QNETLAB_NETWORK_H

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qnetlab/outcome.h"
#include "qnetlab/pauli.h"
#include "qnetlab/statevec.h"

namespace qnetlab {

using PartyId = std::string;

/// Stable name of a qubit. Survives measurements of other qubits; the
/// volatile position in the state vector lives in QubitRecord.
struct QubitHandle {
    uint32_t id = 0;
    auto operator<=>(const QubitHandle &) const = default;
};

struct QubitRecord {
    QubitHandle handle;
    PartyId owner;
    /// Party-local name, e.g. "Bob.1".
    std::string label;
    bool alive = true;
    /// Index into the live state; meaningful only while alive.
    size_t global_index = 0;
};

struct ResourceId {
    uint32_t value = 0;
    auto operator<=>(const ResourceId &) const = default;
};

enum class ResourceKind : uint8_t { BellPair, Ghz };

struct Resource {
    ResourceId id;
    ResourceKind kind;
    std::string name;
    /// One qubit per endpoint, in the order the endpoints were declared.
    std::vector<QubitHandle> qubits;
};

/// Pending X/Z corrections per live qubit.
class PauliFrame {
   public:
    PauliCorrection at(QubitHandle q) const;
    void toggle(QubitHandle q, PauliCorrection delta);
    void purge(QubitHandle q);
    const std::map<QubitHandle, PauliCorrection> &entries() const {
        return entries_;
    }
    bool operator==(const PauliFrame &) const = default;

   private:
    // Identity entries are never stored.
    std::map<QubitHandle, PauliCorrection> entries_;
};

enum class SimulationMode : uint8_t {
    /// Every measurement branch is kept as a separate world.
    Exact,
    /// Each measurement keeps one branch, drawn from the seeded generator.
    Sampled,
};

/// One branch of the simulation: a pure global state plus everything that
/// differs between branches.
struct World {
    /// Probability of reaching this world from the start of the scenario.
    double probability = 1;
    PureState state;
    /// Measurement seq -> outcome, with the conditional probability it had.
    std::map<uint64_t, Outcome> outcomes;
    PauliFrame frame;
    /// Measurement seq -> flip of the outcome implied by the frame on the
    /// measured qubits just before measuring (Bell: both bits; Hadamard: z).
    std::map<uint64_t, PauliCorrection> outcome_flips;
    /// Correction seq -> Pauli applied in this world.
    std::map<uint64_t, PauliCorrection> corrections;
};

enum class MessageStatus : uint8_t { Withheld, Released };

struct MeasurementEvent {
    uint64_t seq;
    PartyId who;
    Basis basis;
    std::vector<std::string> qubits;
    /// The outcome in the actual (reported) world.
    Outcome outcome;
    /// Label -> new global index for every qubit still alive afterwards.
    std::vector<std::pair<std::string, size_t>> relabel;
};

struct ClassicalMessage {
    uint64_t seq;
    PartyId from;
    PartyId to;
    /// Measurement seqs whose outcomes this message carries.
    std::vector<uint64_t> about;
    /// Outcomes in the actual world; 2 bits per Bell and 1 per Hadamard label.
    std::vector<OutcomeLabel> payload;
    /// Status at the time the message was created.
    MessageStatus status;
};

struct ReleaseEvent {
    uint64_t seq;
    uint64_t message_seq;
    PartyId from;
    PartyId to;
};

struct CorrectionEvent {
    uint64_t seq;
    PartyId who;
    std::string qubit;
    /// Correction applied in the actual world.
    PauliCorrection correction;
};

struct FrameEvent {
    uint64_t seq;
    PartyId reporter;
    /// Actual-world frame keyed by qubit label, sorted by label.
    std::vector<std::pair<std::string, PauliCorrection>> entries;
};

using Event = std::variant<MeasurementEvent, ClassicalMessage, ReleaseEvent, CorrectionEvent, FrameEvent>;

uint64_t event_seq(const Event &event);

/// Append-only, totally ordered record of classical activity.
class EventLog {
   public:
    const std::vector<Event> &events() const {
        return events_;
    }
    /// Current status; release is monotone.
    MessageStatus status(uint64_t message_seq) const;
    uint64_t next_seq() const {
        return next_seq_;
    }

   private:
    friend class Topology;
    uint64_t append(Event event);

    std::vector<Event> events_;
    std::map<uint64_t, MessageStatus> status_;
    uint64_t next_seq_ = 0;
};

struct KnownOutcome {
    uint64_t seq;
    PartyId measured_by;
    OutcomeLabel label;
};

/// What a semi-honest party (or coalition) can infer.
struct PartyView {
    std::vector<PartyId> parties;
    std::vector<KnownOutcome> known_outcomes;
    /// Reduced state of the parties' live qubits, averaged over every outcome
    /// they have not been told. Zero-qubit sentinel if they hold nothing.
    DensityMatrix local_dm;
};

/// The coalition's state conditioned on one assignment of the outcomes it
/// knows, weighted by the probability of that assignment.
struct KnowledgeBranch {
    /// (measurement seq, outcome) sorted by seq.
    std::vector<std::pair<uint64_t, OutcomeLabel>> known;
    double probability = 0;
    DensityMatrix local_dm;
};

/// Trace distance between two classical-quantum states. Branches are matched
/// by their known outcomes; an unmatched branch counts with weight zero on
/// the other side.
double knowledge_distance(std::span<const KnowledgeBranch> a, std::span<const KnowledgeBranch> b);

struct TopologyOptions {
    size_t qubit_cap = kDefaultQubitCap;
    SimulationMode mode = SimulationMode::Exact;
    uint64_t seed = 0;
    BellConvention bell_convention = BellConvention::Standard;
};

/// Parties, qubit ownership, resources, the classical log and the ensemble of
/// worlds. Mutated in place by one writer; copy it to fork a scenario.
class Topology {
   public:
    /// Throws std::invalid_argument on duplicate or empty party names.
    explicit Topology(std::vector<PartyId> parties, TopologyOptions options = {});

    const std::vector<PartyId> &parties() const {
        return parties_;
    }
    bool has_party(const PartyId &party) const;
    const TopologyOptions &options() const {
        return options_;
    }

    ResourceId add_bell_pair(const PartyId &a, const PartyId &b, std::string name = "");
    ResourceId add_ghz(const PartyId &a, const PartyId &b, const PartyId &c, std::string name = "");
    /// Appends one qubit alpha|0>+beta|1> owned by `owner`; it becomes the
    /// reference for secret_fidelities(). Throws on non-normalized input.
    QubitHandle allocate_secret(const PartyId &owner, Amplitude alpha, Amplitude beta);

    const std::vector<Resource> &resources() const {
        return resources_;
    }
    const Resource &resource(ResourceId id) const;
    std::optional<ResourceId> find_resource(const std::string &name) const;
    /// Owners of the resource qubits, in endpoint order.
    std::vector<PartyId> endpoints(ResourceId id) const;

    const QubitRecord &qubit(QubitHandle q) const;
    std::vector<QubitHandle> live_qubits_of(const PartyId &party) const;
    size_t num_live_qubits() const {
        return live_count_;
    }
    const std::optional<PureState> &secret() const {
        return secret_;
    }

    /// Bell-measures (q1, q2) in every world; q1 is the left ket. Sends the
    /// outcome to each recipient with the given status. Returns the seq.
    uint64_t measure_bell(
        const PartyId &who, QubitHandle q1, QubitHandle q2, const std::vector<PartyId> &recipients,
        MessageStatus status);
    uint64_t measure_hadamard(
        const PartyId &who, QubitHandle q, const std::vector<PartyId> &recipients, MessageStatus status);

    /// New message carrying already-recorded outcomes.
    uint64_t send(const PartyId &from, const PartyId &to, std::vector<uint64_t> about, MessageStatus status);
    /// Flip one withheld message to released. Releasing twice is a no-op.
    void release(uint64_t message_seq);
    /// Discloses to `to` every outcome `from` knows that `to` does not:
    /// flips matching withheld messages and sends one released message for
    /// the remainder.
    void release_bits(const PartyId &from, const PartyId &to);

    /// Seqs of measurements the party made itself or received released.
    std::set<uint64_t> known_measurements(const PartyId &party) const;

    /// Applies, in every world, the correction `rule` picks for that world.
    uint64_t apply_correction(
        const PartyId &who, QubitHandle q, const std::function<PauliCorrection(const World &)> &rule);

    /// Lets the caller edit each world's frame, then logs the actual frame.
    uint64_t update_frames(const PartyId &reporter, const std::function<void(const World &, PauliFrame &)> &edit);

    std::span<const World> worlds() const {
        return worlds_;
    }
    const World &actual_world() const {
        return worlds_[actual_];
    }
    size_t actual_index() const {
        return actual_;
    }
    /// Worlds whose probability fell below kZeroProbability and were dropped.
    size_t pruned_worlds() const {
        return pruned_;
    }

    /// Exact-mode only. Throws ProtocolError in sampled mode.
    PartyView party_view(const PartyId &party) const;
    PartyView coalition_view(const std::vector<PartyId> &coalition) const;
    /// Everything the coalition holds across all worlds, classical and
    /// quantum, as a list of branches sorted by known outcomes. Exact mode only.
    std::vector<KnowledgeBranch> knowledge(const std::vector<PartyId> &coalition) const;

    /// Fidelity of `q`'s reduced state with the allocated secret, per world.
    std::vector<double> secret_fidelities(QubitHandle q) const;

    const EventLog &log() const {
        return log_;
    }

   private:
    QubitHandle add_qubit(const PartyId &owner);
    void append_state(const PureState &state);
    void require_party(const PartyId &party) const;
    void require_live_owned(const PartyId &who, QubitHandle q) const;
    uint64_t record_measurement(
        const PartyId &who, Basis basis, const std::vector<QubitHandle> &measured,
        const std::function<std::vector<Branch>(const PureState &)> &measure,
        const std::vector<PartyId> &recipients, MessageStatus status);
    std::set<uint64_t> known_to(const std::vector<PartyId> &coalition) const;

    std::vector<PartyId> parties_;
    TopologyOptions options_;
    std::mt19937_64 rng_;
    std::vector<QubitRecord> qubits_;
    std::map<PartyId, uint32_t> label_counter_;
    size_t live_count_ = 0;
    std::vector<Resource> resources_;
    std::optional<PureState> secret_;
    std::vector<World> worlds_;
    size_t actual_ = 0;
    size_t pruned_ = 0;
    EventLog log_;
};

struct ResourceSpec {
    std::string name;
    ResourceKind kind;
    std::vector<PartyId> endpoints;
};

struct SecretSpec {
    PartyId owner;
    Amplitude alpha;
    Amplitude beta;
};

/// Declarative network description.
struct TopologySpec {
    std::vector<PartyId> parties;
    std::vector<ResourceSpec> resources;
    std::optional<SecretSpec> secret;
};

/// Secret qubit (if any) first, then the resources in declaration order.
/// Throws std::invalid_argument on duplicate parties, unknown endpoints or
/// the wrong endpoint count.
Topology build_topology(const TopologySpec &spec, TopologyOptions options = {});

}  // namespace qnetlab

#endif
