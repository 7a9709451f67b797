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

#include "qnetlab/protocols.h"

#include <algorithm>
#include <array>

#include "qnetlab/errors.h"

using namespace qnetlab;

namespace {

constexpr PauliCorrection I = PauliCorrection::identity();
constexpr PauliCorrection X = PauliCorrection::pauli_x();
constexpr PauliCorrection Z = PauliCorrection::pauli_z();
constexpr PauliCorrection ZX = PauliCorrection::pauli_zx();

// Rows phi+, phi-, psi+, psi-; columns +, -. Bob's Bell outcome, Charlie's
// Hadamard outcome. The psi rows carry an X: after an odd-parity Bell result
// the dealer's end is bit-flipped relative to the secret.
constexpr std::array<std::array<PauliCorrection, 2>, 4> kRevocationBase{{
    {I, Z},
    {Z, I},
    {X, ZX},
    {ZX, X},
}};

// Rows phi+, phi-, psi+, psi-; columns +, -. Charlie's Bell outcome, Bob's
// Hadamard outcome.
constexpr std::array<std::array<PauliCorrection, 2>, 4> kRoutingBase{{
    {I, Z},
    {Z, I},
    {X, ZX},
    {ZX, X},
}};

void require_bell(OutcomeLabel label) {
    if (!is_bell(label)) {
        throw std::invalid_argument("expected a Bell outcome, got " + std::string(outcome_name(label)));
    }
}

void require_hadamard(OutcomeLabel label) {
    if (is_bell(label)) {
        throw std::invalid_argument("expected a Hadamard outcome, got " + std::string(outcome_name(label)));
    }
}

OutcomeLabel flip_bell(OutcomeLabel bell, PauliCorrection flip) {
    return bell_from_bits(bell_bits(bell) ^ flip);
}

OutcomeLabel flip_hadamard(OutcomeLabel h, bool flip) {
    if (!flip) {
        return h;
    }
    return h == OutcomeLabel::Plus ? OutcomeLabel::Minus : OutcomeLabel::Plus;
}

void require_usable(const Topology &t, const SharedSecretHandle &h) {
    if (h.consumed) {
        throw ProtocolError("shared secret handle was already consumed");
    }
    if (!t.qubit(h.wing_a).alive || !t.qubit(h.wing_b).alive) {
        throw ProtocolError("shared secret wings are no longer alive");
    }
}

// The endpoint of `link` owned by `party`, and the other one.
std::pair<QubitHandle, QubitHandle> split_link(
    const Topology &t, ResourceId link, const PartyId &near, const PartyId &far, const char *what) {
    const auto &r = t.resource(link);
    if (r.kind != ResourceKind::BellPair) {
        throw ProtocolError(std::string(what) + " '" + r.name + "' is not a Bell pair");
    }
    const auto &q0 = t.qubit(r.qubits[0]);
    const auto &q1 = t.qubit(r.qubits[1]);
    if (!q0.alive || !q1.alive) {
        throw ProtocolError(std::string(what) + " '" + r.name + "' was already used");
    }
    if (q0.owner == near && (far.empty() || q1.owner == far)) {
        return {r.qubits[0], r.qubits[1]};
    }
    if (q1.owner == near && (far.empty() || q0.owner == far)) {
        return {r.qubits[1], r.qubits[0]};
    }
    throw ProtocolError(
        std::string(what) + " '" + r.name + "' connects " + q0.owner + " and " + q1.owner + ", expected " + near +
        (far.empty() ? "" : " and " + far));
}

void require_known(const Topology &t, const PartyId &party, const SharedSecretHandle &h) {
    auto known = t.known_measurements(party);
    if (!known.count(h.share_seq)) {
        throw OrderingError(party + " has not received the dealer's share outcome");
    }
    for (auto s : h.hop_seqs) {
        if (!known.count(s)) {
            throw OrderingError(party + " has not received the outcome of hop measurement " + std::to_string(s));
        }
    }
}

}  // namespace

bool qnetlab::accept_any_receiver(const PartyId &) {
    return true;
}

PauliCorrection qnetlab::compose_corrections(std::span<const PauliCorrection> entries) {
    PauliCorrection total;
    for (auto p : entries) {
        total ^= p;
    }
    return total;
}

std::pair<PauliCorrection, PauliCorrection> qnetlab::share_branch_paulis(OutcomeLabel branch) {
    require_bell(branch);
    switch (branch) {
        case OutcomeLabel::PhiMinus:
            return {I, Z};  // a|00>-b|11>
        case OutcomeLabel::PsiPlus:
            return {X, X};  // a|11>+b|00>
        case OutcomeLabel::PsiMinus:
            return {X, ZX};  // a|11>-b|00> up to sign
        default:
            return {I, I};
    }
}

PauliCorrection qnetlab::revocation_base_correction(OutcomeLabel bell, OutcomeLabel hadamard) {
    require_bell(bell);
    require_hadamard(hadamard);
    return kRevocationBase[outcome_index(bell)][outcome_index(hadamard)];
}

PauliCorrection qnetlab::routing_base_correction(OutcomeLabel bell, OutcomeLabel hadamard) {
    require_bell(bell);
    require_hadamard(hadamard);
    return kRoutingBase[outcome_index(bell)][outcome_index(hadamard)];
}

PauliCorrection qnetlab::swap_byproduct(OutcomeLabel bell) {
    require_bell(bell);
    return bell_bits(bell);
}

PauliCorrection qnetlab::revocation_correction(
    OutcomeLabel branch, OutcomeLabel bell, PauliCorrection bell_flip, OutcomeLabel hadamard,
    PauliCorrection hadamard_flip) {
    // Pending Paulis on the measured wings relabel the outcomes; look the
    // relabeled outcomes up in the phi+ table.
    auto [on_a, on_b] = share_branch_paulis(branch);
    auto effective_bell = flip_bell(bell, bell_flip ^ on_a);
    auto effective_h = flip_hadamard(hadamard, hadamard_flip.z != on_b.z);
    return revocation_base_correction(effective_bell, effective_h);
}

PauliCorrection qnetlab::routing_correction(
    OutcomeLabel branch, OutcomeLabel bell, PauliCorrection bell_flip, OutcomeLabel hadamard,
    PauliCorrection hadamard_flip) {
    // Roles swap relative to revocation: wing b is Bell-measured, wing a is
    // Hadamard-measured.
    auto [on_a, on_b] = share_branch_paulis(branch);
    auto effective_bell = flip_bell(bell, bell_flip ^ on_b);
    auto effective_h = flip_hadamard(hadamard, hadamard_flip.z != on_a.z);
    return routing_base_correction(effective_bell, effective_h);
}

SharedSecretHandle qnetlab::share(Topology &t, const PartyId &dealer, ResourceId ghz, QubitHandle secret) {
    const auto &r = t.resource(ghz);
    if (r.kind != ResourceKind::Ghz) {
        throw ProtocolError("resource '" + r.name + "' is not a GHZ triangle");
    }
    std::vector<QubitHandle> others;
    std::optional<QubitHandle> dealer_qubit;
    for (auto q : r.qubits) {
        if (t.qubit(q).owner == dealer && !dealer_qubit) {
            dealer_qubit = q;
        } else {
            others.push_back(q);
        }
    }
    if (!dealer_qubit) {
        throw ProtocolError("GHZ resource '" + r.name + "' has no endpoint owned by " + dealer);
    }
    SharedSecretHandle h;
    h.dealer = dealer;
    h.wing_a = others[0];
    h.wing_b = others[1];
    std::vector<PartyId> holders{t.qubit(h.wing_a).owner, t.qubit(h.wing_b).owner};
    h.share_seq = t.measure_bell(dealer, secret, *dealer_qubit, holders, MessageStatus::Withheld);
    return h;
}

RevokeResult qnetlab::revoke(Topology &t, SharedSecretHandle &h, ResourceId dealer_bell) {
    require_usable(t, h);
    const PartyId holder_a = t.qubit(h.wing_a).owner;
    const PartyId holder_b = t.qubit(h.wing_b).owner;
    auto [holder_end, dealer_end] = split_link(t, dealer_bell, holder_a, h.dealer, "revocation resource");
    require_known(t, h.dealer, h);

    RevokeResult result{};
    result.recovered = dealer_end;
    result.wing_a_seq = t.measure_bell(holder_a, holder_end, h.wing_a, {h.dealer}, MessageStatus::Released);
    result.wing_b_seq = t.measure_hadamard(holder_b, h.wing_b, {h.dealer}, MessageStatus::Released);
    h.consumed = true;

    uint64_t share_seq = h.share_seq;
    uint64_t a_seq = result.wing_a_seq;
    uint64_t b_seq = result.wing_b_seq;
    result.correction_seq = t.apply_correction(h.dealer, dealer_end, [=](const World &w) {
        return revocation_correction(
            w.outcomes.at(share_seq).label, w.outcomes.at(a_seq).label, w.outcome_flips.at(a_seq),
            w.outcomes.at(b_seq).label, w.outcome_flips.at(b_seq));
    });
    return result;
}

RouteResult qnetlab::route_reconstruct(
    Topology &t, SharedSecretHandle &h, const PartyId &receiver, ResourceId link,
    const ReceiverAuthenticator &authenticate) {
    require_usable(t, h);
    if (!t.has_party(receiver)) {
        throw std::invalid_argument("unknown receiver '" + receiver + "'");
    }
    if (!authenticate(receiver)) {
        throw ProtocolError("receiver '" + receiver + "' failed identification");
    }
    const PartyId holder_a = t.qubit(h.wing_a).owner;
    const PartyId holder_b = t.qubit(h.wing_b).owner;
    auto [holder_end, receiver_end] = split_link(t, link, holder_b, receiver, "routing link");
    require_known(t, receiver, h);

    RouteResult result{};
    result.reconstructed = receiver_end;
    result.wing_b_seq = t.measure_bell(holder_b, h.wing_b, holder_end, {receiver}, MessageStatus::Released);
    result.wing_a_seq = t.measure_hadamard(holder_a, h.wing_a, {receiver}, MessageStatus::Released);
    h.consumed = true;

    uint64_t share_seq = h.share_seq;
    uint64_t b_seq = result.wing_b_seq;
    uint64_t a_seq = result.wing_a_seq;
    result.correction_seq = t.apply_correction(receiver, receiver_end, [=](const World &w) {
        return routing_correction(
            w.outcomes.at(share_seq).label, w.outcomes.at(b_seq).label, w.outcome_flips.at(b_seq),
            w.outcomes.at(a_seq).label, w.outcome_flips.at(a_seq));
    });
    return result;
}

SharedSecretHandle qnetlab::hop(Topology &t, SharedSecretHandle &h, ResourceId link_a, ResourceId link_b) {
    require_usable(t, h);
    const PartyId holder_a = t.qubit(h.wing_a).owner;
    const PartyId holder_b = t.qubit(h.wing_b).owner;
    auto [a_end, a_next] = split_link(t, link_a, holder_a, "", "hop link");
    auto [b_end, b_next] = split_link(t, link_b, holder_b, "", "hop link");
    if (t.qubit(a_next).owner == t.qubit(b_next).owner) {
        throw ProtocolError("both wings would land on " + t.qubit(a_next).owner);
    }

    uint64_t a_seq = t.measure_bell(holder_a, h.wing_a, a_end, {h.dealer}, MessageStatus::Released);
    uint64_t b_seq = t.measure_bell(holder_b, h.wing_b, b_end, {h.dealer}, MessageStatus::Released);
    h.consumed = true;

    // Teleporting a wing that already carried Pauli F with outcome m leaves
    // byproduct(m) * F on the far end; F survives as the recorded flip.
    t.update_frames(h.dealer, [&](const World &w, PauliFrame &frame) {
        std::array<PauliCorrection, 2> on_a{swap_byproduct(w.outcomes.at(a_seq).label), w.outcome_flips.at(a_seq)};
        std::array<PauliCorrection, 2> on_b{swap_byproduct(w.outcomes.at(b_seq).label), w.outcome_flips.at(b_seq)};
        frame.toggle(a_next, compose_corrections(on_a));
        frame.toggle(b_next, compose_corrections(on_b));
    });

    SharedSecretHandle next = h;
    next.consumed = false;
    next.wing_a = a_next;
    next.wing_b = b_next;
    next.hop_seqs.push_back(a_seq);
    next.hop_seqs.push_back(b_seq);
    return next;
}
