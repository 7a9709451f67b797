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


#include <gtest/gtest.h>

#include <numbers>

#include "qnetlab/errors.h"
#include "qnetlab/protocols.h"
#include "qnetlab/tablegen.h"
#include "test_util.h"

using namespace qnetlab;
using O = OutcomeLabel;

namespace {

constexpr double kR = 1 / std::numbers::sqrt2;
const SecretSample kSecret{0.6, Amplitude(0, 0.8)};

struct Fig1 {
    Topology t;
    QubitHandle secret;
    ResourceId ghz;
    ResourceId alice_bob;
};

Fig1 fig1(const SecretSample &s = kSecret, TopologyOptions options = {}) {
    Topology t({"Alice", "Bob", "Charlie", "R"}, options);
    auto secret = t.allocate_secret("Alice", s.alpha, s.beta);
    auto ghz = t.add_ghz("Alice", "Bob", "Charlie");
    auto bell = t.add_bell_pair("Alice", "Bob");
    return {std::move(t), secret, ghz, bell};
}

const World &world_with(const Topology &t, std::initializer_list<std::pair<uint64_t, OutcomeLabel>> outcomes) {
    for (const auto &w : t.worlds()) {
        bool match = true;
        for (const auto &[seq, label] : outcomes) {
            match &= w.outcomes.at(seq).label == label;
        }
        if (match) {
            return w;
        }
    }
    throw std::runtime_error("no such world");
}

// Fidelity of the two wings, everything else traced out.
double wing_fidelity(const Topology &t, const World &w, const SharedSecretHandle &h, const PureState &target) {
    std::array<size_t, 2> wings{t.qubit(h.wing_a).global_index, t.qubit(h.wing_b).global_index};
    return fidelity(partial_trace(w.state, wings), target);
}

}  // namespace

TEST(Compose, examples) {
    std::array<PauliCorrection, 2> ii{PauliCorrection::identity(), PauliCorrection::identity()};
    EXPECT_EQ(compose_corrections(ii), PauliCorrection::identity());
    std::array<PauliCorrection, 2> zz{PauliCorrection::pauli_z(), PauliCorrection::pauli_z()};
    EXPECT_EQ(compose_corrections(zz), PauliCorrection::identity());
    std::array<PauliCorrection, 2> xz{PauliCorrection::pauli_x(), PauliCorrection::pauli_z()};
    EXPECT_EQ(compose_corrections(xz), PauliCorrection::pauli_zx());
}

TEST(Compose, order_independent) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; trial++) {
        std::vector<PauliCorrection> entries;
        for (int k = 0; k < 5; k++) {
            entries.push_back(kAllPaulis[rng() % 4]);
        }
        auto forward = compose_corrections(entries);
        std::shuffle(entries.begin(), entries.end(), rng);
        EXPECT_EQ(compose_corrections(entries), forward);
    }
}

TEST(Share, wing_states) {
    auto f = fig1();
    auto h = share(f.t, "Alice", f.ghz, f.secret);
    EXPECT_EQ(f.t.worlds().size(), 4u);
    for (const auto &w : f.t.worlds()) {
        auto label = w.outcomes.at(h.share_seq).label;
        EXPECT_NEAR(w.outcomes.at(h.share_seq).probability, 0.25, 1e-9);
        EXPECT_NEAR(wing_fidelity(f.t, w, h, sharing_form(label, kSecret)), 1, 1e-9);
    }
    const auto &phi = world_with(f.t, {{h.share_seq, O::PhiPlus}});
    EXPECT_NEAR(wing_fidelity(f.t, phi, h, PureState::from_amplitudes({kSecret.alpha, 0, 0, kSecret.beta})), 1,
                1e-9);
    const auto &psi = world_with(f.t, {{h.share_seq, O::PsiMinus}});
    EXPECT_NEAR(
        wing_fidelity(f.t, psi, h, PureState::from_amplitudes({-kSecret.beta, 0, 0, kSecret.alpha})), 1, 1e-9);
}

TEST(Share, basis_secret) {
    auto f = fig1({1, 0});
    auto h = share(f.t, "Alice", f.ghz, f.secret);
    const auto &w = world_with(f.t, {{h.share_seq, O::PhiPlus}});
    EXPECT_NEAR(wing_fidelity(f.t, w, h, PureState::basis(2, 0)), 1, 1e-9);
}

TEST(Share, outcome_is_withheld) {
    auto f = fig1();
    auto h = share(f.t, "Alice", f.ghz, f.secret);
    EXPECT_EQ(f.t.known_measurements("Bob").count(h.share_seq), 0u);
    EXPECT_EQ(f.t.known_measurements("Charlie").count(h.share_seq), 0u);
    EXPECT_EQ(f.t.qubit(h.wing_a).owner, "Bob");
    EXPECT_EQ(f.t.qubit(h.wing_b).owner, "Charlie");
}

TEST(Share, errors) {
    auto f = fig1();
    EXPECT_THROW(share(f.t, "Alice", f.alice_bob, f.secret), ProtocolError);
    EXPECT_THROW(share(f.t, "R", f.ghz, f.secret), ProtocolError);
    share(f.t, "Alice", f.ghz, f.secret);
    EXPECT_THROW(share(f.t, "Alice", f.ghz, f.secret), ProtocolError);
}

TEST(Revoke, corrections) {
    auto f = fig1();
    auto h = share(f.t, "Alice", f.ghz, f.secret);
    auto r = revoke(f.t, h, f.alice_bob);
    auto at = [&](O branch, O bell, O had) {
        return world_with(f.t, {{h.share_seq, branch}, {r.wing_a_seq, bell}, {r.wing_b_seq, had}})
            .corrections.at(r.correction_seq);
    };
    EXPECT_EQ(at(O::PhiPlus, O::PhiPlus, O::Plus), PauliCorrection::identity());
    EXPECT_EQ(at(O::PhiPlus, O::PhiMinus, O::Plus), PauliCorrection::pauli_z());
    // The published retrieval table lists Z here; the state needs ZX.
    EXPECT_EQ(at(O::PhiPlus, O::PsiMinus, O::Plus), PauliCorrection::pauli_zx());
    EXPECT_EQ(at(O::PsiPlus, O::PhiPlus, O::Plus), PauliCorrection::pauli_x());

    auto fidelities = f.t.secret_fidelities(r.recovered);
    EXPECT_EQ(fidelities.size(), 32u);
    for (double x : fidelities) {
        EXPECT_NEAR(x, 1, 1e-9);
    }
    EXPECT_EQ(f.t.qubit(r.recovered).owner, "Alice");
    EXPECT_FALSE(f.t.qubit(h.wing_a).alive);
    EXPECT_FALSE(f.t.qubit(h.wing_b).alive);
    EXPECT_TRUE(h.consumed);
}

TEST(Revoke, outcomes_go_to_dealer_only) {
    auto f = fig1();
    auto h = share(f.t, "Alice", f.ghz, f.secret);
    auto r = revoke(f.t, h, f.alice_bob);
    auto alice = f.t.known_measurements("Alice");
    EXPECT_TRUE(alice.count(r.wing_a_seq) && alice.count(r.wing_b_seq));
    EXPECT_EQ(f.t.known_measurements("Charlie").count(r.wing_a_seq), 0u);
    EXPECT_EQ(f.t.known_measurements("Bob").count(r.wing_b_seq), 0u);
}

TEST(Revoke, errors) {
    auto f = fig1();
    auto charlie_link = f.t.add_bell_pair("Alice", "Charlie");
    auto h = share(f.t, "Alice", f.ghz, f.secret);
    EXPECT_THROW(revoke(f.t, h, charlie_link), ProtocolError);
    EXPECT_THROW(revoke(f.t, h, f.ghz), ProtocolError);
    revoke(f.t, h, f.alice_bob);
    EXPECT_THROW(revoke(f.t, h, f.alice_bob), ProtocolError);
}

TEST(Route, corrections) {
    auto f = fig1();
    auto link = f.t.add_bell_pair("Charlie", "R");
    auto h = share(f.t, "Alice", f.ghz, f.secret);
    f.t.release_bits("Alice", "R");
    auto r = route_reconstruct(f.t, h, "R", link);
    auto at = [&](O branch, O bell, O had) {
        return world_with(f.t, {{h.share_seq, branch}, {r.wing_b_seq, bell}, {r.wing_a_seq, had}})
            .corrections.at(r.correction_seq);
    };
    EXPECT_EQ(at(O::PhiPlus, O::PhiPlus, O::Plus), PauliCorrection::identity());
    EXPECT_EQ(at(O::PhiPlus, O::PsiMinus, O::Plus), PauliCorrection::pauli_zx());
    EXPECT_EQ(at(O::PsiPlus, O::PhiPlus, O::Plus), PauliCorrection::pauli_x());
    for (double x : f.t.secret_fidelities(r.reconstructed)) {
        EXPECT_NEAR(x, 1, 1e-9);
    }
}

TEST(Route, ordering) {
    auto f = fig1();
    auto link = f.t.add_bell_pair("Charlie", "R");
    auto h = share(f.t, "Alice", f.ghz, f.secret);
    size_t events = f.t.log().events().size();
    EXPECT_THROW(route_reconstruct(f.t, h, "R", link), OrderingError);
    // A refused attempt leaves no trace.
    EXPECT_EQ(f.t.log().events().size(), events);
    EXPECT_TRUE(f.t.qubit(h.wing_b).alive);
    f.t.release_bits("Alice", "R");
    EXPECT_NO_THROW(route_reconstruct(f.t, h, "R", link));
}

TEST(Route, errors) {
    auto f = fig1();
    auto wrong = f.t.add_bell_pair("Bob", "R");
    auto link = f.t.add_bell_pair("Charlie", "R");
    auto h = share(f.t, "Alice", f.ghz, f.secret);
    f.t.release_bits("Alice", "R");
    EXPECT_THROW(route_reconstruct(f.t, h, "R", wrong), ProtocolError);
    EXPECT_THROW(route_reconstruct(f.t, h, "Nobody", link), std::invalid_argument);
    auto reject = [](const PartyId &) { return false; };
    EXPECT_THROW(route_reconstruct(f.t, h, "R", link, reject), ProtocolError);
}

namespace {

struct Chain {
    Topology t;
    SharedSecretHandle h;
};

// S deals over GHZ(S, A1, B1); links are added as the wings move.
Chain chain(const SecretSample &s, int pairs, TopologyOptions options = {}) {
    std::vector<PartyId> parties{"S", "R"};
    for (int i = 1; i <= pairs; i++) {
        parties.push_back("A" + std::to_string(i));
        parties.push_back("B" + std::to_string(i));
    }
    Topology t(parties, options);
    auto secret = t.allocate_secret("S", s.alpha, s.beta);
    auto ghz = t.add_ghz("S", "A1", "B1");
    auto h = share(t, "S", ghz, secret);
    return {std::move(t), h};
}

SharedSecretHandle step(Chain &c, int from, int to) {
    auto la = c.t.add_bell_pair("A" + std::to_string(from), "A" + std::to_string(to));
    auto lb = c.t.add_bell_pair("B" + std::to_string(from), "B" + std::to_string(to));
    return hop(c.t, c.h, la, lb);
}

}  // namespace

TEST(Hop, frame_deltas) {
    auto c = chain(kSecret, 2);
    auto next = step(c, 1, 2);
    EXPECT_TRUE(c.h.consumed);
    ASSERT_EQ(next.hop_seqs.size(), 2u);
    EXPECT_EQ(c.t.worlds().size(), 64u);
    const auto &same = world_with(
        c.t, {{next.share_seq, O::PhiPlus}, {next.hop_seqs[0], O::PhiPlus}, {next.hop_seqs[1], O::PhiPlus}});
    EXPECT_TRUE(same.frame.entries().empty());
    EXPECT_NEAR(wing_fidelity(c.t, same, next, sharing_form(O::PhiPlus, kSecret)), 1, 1e-9);

    const auto &flipped = world_with(
        c.t, {{next.share_seq, O::PhiPlus}, {next.hop_seqs[0], O::PsiPlus}, {next.hop_seqs[1], O::PhiPlus}});
    EXPECT_EQ(flipped.frame.at(next.wing_a), PauliCorrection::pauli_x());
    EXPECT_EQ(flipped.frame.at(next.wing_b), PauliCorrection::identity());
    auto corrected = apply_pauli(flipped.state, PauliCorrection::pauli_x(), c.t.qubit(next.wing_a).global_index);
    EXPECT_NEAR(fidelity_phase_invariant(corrected, sharing_form(O::PhiPlus, kSecret)), 1, 1e-9);
}

TEST(Hop, transparency) {
    // Undoing the frame restores the pre-hop wing state in all 64 worlds.
    auto c = chain(kSecret, 2);
    auto next = step(c, 1, 2);
    for (const auto &w : c.t.worlds()) {
        auto s = apply_pauli(w.state, w.frame.at(next.wing_a), c.t.qubit(next.wing_a).global_index);
        s = apply_pauli(s, w.frame.at(next.wing_b), c.t.qubit(next.wing_b).global_index);
        EXPECT_NEAR(
            fidelity_phase_invariant(s, sharing_form(w.outcomes.at(next.share_seq).label, kSecret)), 1, 1e-9);
        EXPECT_NEAR(w.outcomes.at(next.hop_seqs[0]).probability * w.outcomes.at(next.hop_seqs[1]).probability,
                    1.0 / 16, 1e-9);
    }
}

TEST(Hop, outcomes_go_to_dealer) {
    auto c = chain(kSecret, 2);
    auto next = step(c, 1, 2);
    auto s = c.t.known_measurements("S");
    EXPECT_TRUE(s.count(next.hop_seqs[0]) && s.count(next.hop_seqs[1]));
    EXPECT_EQ(c.t.known_measurements("A2").count(next.hop_seqs[0]), 0u);
    const auto &frames = c.t.log().events().back();
    EXPECT_TRUE(std::holds_alternative<FrameEvent>(frames));
}

TEST(Hop, errors) {
    auto c = chain(kSecret, 2);
    auto la = c.t.add_bell_pair("A1", "A2");
    auto same = c.t.add_bell_pair("B1", "A2");
    EXPECT_THROW(hop(c.t, c.h, la, same), ProtocolError);
    auto wrong = c.t.add_bell_pair("A2", "B2");
    EXPECT_THROW(hop(c.t, c.h, wrong, la), ProtocolError);
}

TEST(Hop, route_after_two_hops_exact) {
    auto c = chain(kSecret, 3);
    c.h = step(c, 1, 2);
    c.h = step(c, 2, 3);
    auto link = c.t.add_bell_pair("B3", "R");
    EXPECT_THROW(route_reconstruct(c.t, c.h, "R", link), OrderingError);
    c.t.release_bits("S", "R");
    auto r = route_reconstruct(c.t, c.h, "R", link);
    auto f = c.t.secret_fidelities(r.reconstructed);
    EXPECT_EQ(f.size(), 4u * 16 * 16 * 8);
    for (double x : f) {
        ASSERT_NEAR(x, 1, 1e-9);
    }
}

TEST(Hop, hop_outcomes_are_required_for_routing) {
    auto c = chain(kSecret, 2);
    c.h = step(c, 1, 2);
    auto link = c.t.add_bell_pair("B2", "R");
    c.t.send("S", "R", {c.h.share_seq}, MessageStatus::Released);
    EXPECT_THROW(route_reconstruct(c.t, c.h, "R", link), OrderingError);
}

TEST(Hop, revoke_after_hops_exact) {
    for (const auto &s : qnetlab::testing::random_secrets(5, 21)) {
        auto c = chain(s, 3);
        c.h = step(c, 1, 2);
        c.h = step(c, 2, 3);
        auto back = c.t.add_bell_pair("S", "A3");
        auto r = revoke(c.t, c.h, back);
        for (double x : c.t.secret_fidelities(r.recovered)) {
            ASSERT_NEAR(x, 1, 1e-9);
        }
    }
}

TEST(Hop, five_hops_then_route_sampled) {
    auto secrets = qnetlab::testing::random_secrets(100, 55);
    for (size_t i = 0; i < secrets.size(); i++) {
        TopologyOptions options;
        options.mode = SimulationMode::Sampled;
        options.seed = i;
        auto c = chain(secrets[i], 6, options);
        for (int k = 1; k <= 5; k++) {
            c.h = step(c, k, k + 1);
        }
        auto link = c.t.add_bell_pair("B6", "R");
        c.t.release_bits("S", "R");
        auto r = route_reconstruct(c.t, c.h, "R", link);
        ASSERT_NEAR(c.t.secret_fidelities(r.reconstructed)[0], 1, 1e-9) << i;
    }
}

TEST(ProtocolProperty, end_to_end_identities) {
    auto secrets = qnetlab::testing::random_secrets(30, 77);
    secrets.push_back({kR, Amplitude(0, kR)});
    secrets.push_back({0, 1});
    for (const auto &s : secrets) {
        auto f = fig1(s);
        auto link = f.t.add_bell_pair("Charlie", "R");
        Topology copy = f.t;
        auto h = share(f.t, "Alice", f.ghz, f.secret);
        auto r = revoke(f.t, h, f.alice_bob);
        for (double x : f.t.secret_fidelities(r.recovered)) {
            ASSERT_NEAR(x, 1, 1e-9);
        }
        auto h2 = share(copy, "Alice", f.ghz, f.secret);
        copy.release_bits("Alice", "R");
        auto r2 = route_reconstruct(copy, h2, "R", link);
        EXPECT_EQ(copy.worlds().size(), 32u);
        for (double x : copy.secret_fidelities(r2.reconstructed)) {
            ASSERT_NEAR(x, 1, 1e-9);
        }
    }
}

TEST(ProtocolProperty, correction_functions_match_base_tables_on_phi_plus) {
    for (auto bell : kBellOutcomes) {
        for (auto had : kHadamardOutcomes) {
            EXPECT_EQ(revocation_correction(O::PhiPlus, bell, {}, had, {}), revocation_base_correction(bell, had));
            EXPECT_EQ(routing_correction(O::PhiPlus, bell, {}, had, {}), routing_base_correction(bell, had));
        }
    }
    EXPECT_THROW(revocation_base_correction(O::Plus, O::Plus), std::invalid_argument);
    EXPECT_THROW(routing_base_correction(O::PhiPlus, O::PhiPlus), std::invalid_argument);
}
