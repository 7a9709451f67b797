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

#ifndef QNETLAB_PROTOCOLS_H
#define QNETLAB_PROTOCOLS_H

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qnetlab/network.h"
#include "qnetlab/outcome.h"
#include "qnetlab/pauli.h"

namespace qnetlab {

/// A secret held as two entangled wings by two parties.
///
/// In each world the wings hold F * T_b, where T_b is the sharing-table state
/// for that world's dealer outcome b (world.outcomes[share_seq]) and F is the
/// world's PauliFrame restricted to the wings.
struct SharedSecretHandle {
    PartyId dealer;
    QubitHandle wing_a;
    QubitHandle wing_b;
    uint64_t share_seq = 0;
    /// Measurement seqs of every hop so far, in order.
    std::vector<uint64_t> hop_seqs;
    bool consumed = false;
};

/// Hook for the receiver identification step. The default accepts everyone.
using ReceiverAuthenticator = std::function<bool(const PartyId &receiver)>;
bool accept_any_receiver(const PartyId &receiver);

struct RevokeResult {
    QubitHandle recovered;
    uint64_t wing_a_seq;
    uint64_t wing_b_seq;
    uint64_t correction_seq;
};

struct RouteResult {
    QubitHandle reconstructed;
    uint64_t wing_b_seq;
    uint64_t wing_a_seq;
    uint64_t correction_seq;
};

/// Dealer Bell-measures (secret, their GHZ qubit); the outcome is logged as
/// withheld messages to both wing owners. Wing a is the first non-dealer GHZ
/// endpoint, wing b the second.
SharedSecretHandle share(Topology &t, const PartyId &dealer, ResourceId ghz, QubitHandle secret);

/// Wing-a owner Bell-measures (their end of `dealer_bell`, wing a); wing-b owner
/// Hadamard-measures wing b; both report to the dealer, who corrects their end
/// of `dealer_bell`. Consumes `h`.
RevokeResult revoke(Topology &t, SharedSecretHandle &h, ResourceId dealer_bell);

/// Wing-b owner Bell-measures (wing b, their end of `link`); wing-a owner
/// Hadamard-measures wing a; both report to the receiver, who corrects their end
/// of `link`. The receiver must already hold the dealer's released share and
/// hop outcomes, otherwise OrderingError. Consumes `h`.
RouteResult route_reconstruct(
    Topology &t, SharedSecretHandle &h, const PartyId &receiver, ResourceId link,
    const ReceiverAuthenticator &authenticate = accept_any_receiver);

/// Entanglement-swaps both wings one step along `link_a` and `link_b`.
/// Outcomes go to the dealer and the byproducts are folded into each world's
/// frame; nothing is applied physically. Consumes `h`.
SharedSecretHandle hop(Topology &t, SharedSecretHandle &h, ResourceId link_a, ResourceId link_b);

/// XOR of all entries. Phases are dropped, so order does not matter.
PauliCorrection compose_corrections(std::span<const PauliCorrection> entries);

/// Paulis (wing a, wing b) mapping the phi+ sharing state a|00>+b|11> to the
/// state left by dealer outcome `branch`.
std::pair<PauliCorrection, PauliCorrection> share_branch_paulis(OutcomeLabel branch);

/// Dealer correction for the phi+ sharing branch given Bob's Bell outcome and
/// Charlie's Hadamard outcome.
PauliCorrection revocation_base_correction(OutcomeLabel bell, OutcomeLabel hadamard);

/// Receiver correction for the phi+ sharing branch given Charlie's Bell
/// outcome and Bob's Hadamard outcome.
PauliCorrection routing_base_correction(OutcomeLabel bell, OutcomeLabel hadamard);

/// Teleportation byproduct left on the far end of a link by a Bell outcome.
PauliCorrection swap_byproduct(OutcomeLabel bell);

/// Correction the dealer applies after revocation, for a world whose sharing
/// outcome was `branch`. The flips are the frame-induced outcome flips
/// recorded for the two revocation measurements.
PauliCorrection revocation_correction(
    OutcomeLabel branch, OutcomeLabel bell, PauliCorrection bell_flip, OutcomeLabel hadamard,
    PauliCorrection hadamard_flip);

/// Correction the receiver applies after routing; arguments as above.
PauliCorrection routing_correction(
    OutcomeLabel branch, OutcomeLabel bell, PauliCorrection bell_flip, OutcomeLabel hadamard,
    PauliCorrection hadamard_flip);

}  // namespace qnetlab

#endif
