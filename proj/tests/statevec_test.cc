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
#include <random>

#include "qnetlab/errors.h"
#include "qnetlab/statevec.h"
#include "test_util.h"

using namespace qnetlab;
using qnetlab::testing::max_abs_diff;
using qnetlab::testing::outer;
using qnetlab::testing::random_state;

namespace {

constexpr double kR = 1 / std::numbers::sqrt2;
const Amplitude kI{0, 1};

PureState plus() {
    return PureState::qubit(kR, kR);
}

}  // namespace

TEST(PureState, rejects_bad_amplitudes) {
    EXPECT_THROW(PureState::from_amplitudes({1, 0, 0}), std::invalid_argument);
    EXPECT_THROW(PureState::from_amplitudes({1, 1}), std::invalid_argument);
    EXPECT_THROW(PureState::from_amplitudes({std::nan(""), 0}), std::invalid_argument);
    EXPECT_THROW(PureState::normalized({0, 0}), std::invalid_argument);
    EXPECT_NO_THROW(PureState::from_amplitudes({0.6, Amplitude(0, 0.8)}));
}

TEST(PureState, zero_qubit_state) {
    PureState s;
    EXPECT_EQ(s.num_qubits(), 0u);
    EXPECT_EQ(s.dimension(), 1u);
    EXPECT_EQ(s[0], Amplitude(1));
}

TEST(Tensor, computational_basis) {
    auto s = tensor(PureState::basis(1, 0), PureState::basis(1, 1));
    ASSERT_EQ(s.num_qubits(), 2u);
    EXPECT_EQ(s[0], Amplitude(0));
    EXPECT_EQ(s[1], Amplitude(1));
    EXPECT_EQ(s[2], Amplitude(0));
    EXPECT_EQ(s[3], Amplitude(0));
}

TEST(Tensor, secret_with_ghz) {
    Amplitude a{0.6, 0};
    Amplitude b{0, 0.8};
    auto s = tensor(PureState::qubit(a, b), PureState::ghz(3));
    ASSERT_EQ(s.num_qubits(), 4u);
    for (uint64_t i = 0; i < 16; i++) {
        Amplitude expected = 0;
        if (i == 0b0000 || i == 0b0111) {
            expected = a * kR;
        } else if (i == 0b1000 || i == 0b1111) {
            expected = b * kR;
        }
        EXPECT_NEAR(std::abs(s[i] - expected), 0, 1e-12) << i;
    }
}

TEST(Tensor, two_bell_pairs) {
    auto s = tensor(PureState::bell_pair(), PureState::bell_pair());
    for (uint64_t i = 0; i < 16; i++) {
        double expected = (i == 0b0000 || i == 0b0011 || i == 0b1100 || i == 0b1111) ? 0.5 : 0;
        EXPECT_NEAR(std::abs(s[i] - expected), 0, 1e-12) << i;
    }
}

TEST(Tensor, qubit_cap) {
    auto big = PureState::basis(10, 0);
    EXPECT_THROW(tensor(big, PureState::basis(7, 0)), ResourceLimitError);
    EXPECT_NO_THROW(tensor(big, PureState::basis(6, 0)));
    EXPECT_THROW(tensor(big, PureState::basis(2, 0), 11), ResourceLimitError);
}

TEST(ApplyPauli, examples) {
    Amplitude a{0.6, 0};
    Amplitude b{0, 0.8};
    auto z = apply_pauli(PureState::qubit(a, b), PauliCorrection::pauli_z(), 0);
    EXPECT_NEAR(fidelity_phase_invariant(z, PureState::qubit(a, -b)), 1, 1e-12);

    // X on a|1> - b|0> gives a|0> - b|1>.
    auto x = apply_pauli(PureState::qubit(-b, a), PauliCorrection::pauli_x(), 0);
    EXPECT_NEAR(std::abs(x[0] - a), 0, 1e-12);
    EXPECT_NEAR(std::abs(x[1] + b), 0, 1e-12);

    auto zx = apply_pauli(PureState::qubit(-b, a), PauliCorrection::pauli_zx(), 0);
    EXPECT_NEAR(fidelity_phase_invariant(zx, PureState::qubit(a, b)), 1, 1e-12);
}

TEST(ApplyPauli, x_before_z) {
    // ZX|0> = Z|1> = -|1>, while XZ|0> = |1>.
    auto s = apply_pauli(PureState::basis(1, 0), PauliCorrection::pauli_zx(), 0);
    EXPECT_NEAR(std::abs(s[1] - Amplitude(-1)), 0, 1e-12);
}

TEST(ApplyPauli, acts_on_the_named_qubit) {
    auto s = apply_pauli(PureState::basis(3, 0), PauliCorrection::pauli_x(), 1);
    EXPECT_EQ(s[0b010], Amplitude(1));
    EXPECT_THROW(apply_pauli(s, PauliCorrection::pauli_x(), 3), std::out_of_range);
}

TEST(MeasureBell, sharing_branch) {
    Amplitude a{0.6, 0};
    Amplitude b{0, 0.8};
    auto s = tensor(PureState::qubit(a, b), PureState::ghz(3));
    auto branches = measure_bell_branches(s, 0, 1);
    ASSERT_EQ(branches.size(), 4u);
    EXPECT_EQ(branches[0].outcome.label, OutcomeLabel::PhiPlus);
    EXPECT_EQ(branches[1].outcome.label, OutcomeLabel::PhiMinus);
    EXPECT_EQ(branches[2].outcome.label, OutcomeLabel::PsiPlus);
    EXPECT_EQ(branches[3].outcome.label, OutcomeLabel::PsiMinus);
    EXPECT_NEAR(branches[0].outcome.probability, 0.25, 1e-12);
    EXPECT_EQ(branches[0].post_state.num_qubits(), 2u);
    EXPECT_NEAR(fidelity_phase_invariant(branches[0].post_state, PureState::from_amplitudes({a, 0, 0, b})), 1, 1e-12);
}

TEST(MeasureBell, eigenstate) {
    auto branches = measure_bell_branches(PureState::bell_pair(), 0, 1);
    EXPECT_NEAR(branches[0].outcome.probability, 1, 1e-12);
    EXPECT_FALSE(branches[0].zero_probability);
    for (int k = 1; k < 4; k++) {
        EXPECT_TRUE(branches[k].zero_probability);
        EXPECT_EQ(branches[k].post_state.num_qubits(), 0u);
    }
}

TEST(MeasureBell, q1_is_the_left_ket) {
    // |01> on (q1, q2) = (1, 0) reads as |10> on (q1, q2).
    auto s = PureState::basis(2, 0b01);
    auto forward = measure_bell_branches(s, 0, 1);
    auto reversed = measure_bell_branches(s, 1, 0);
    // psi- flips sign with the order, but probabilities agree.
    for (int k = 0; k < 4; k++) {
        EXPECT_NEAR(forward[k].outcome.probability, reversed[k].outcome.probability, 1e-12);
    }
    EXPECT_NEAR(forward[2].outcome.probability, 0.5, 1e-12);
}

TEST(MeasureBell, bad_indices) {
    auto s = PureState::basis(3, 0);
    EXPECT_THROW(measure_bell_branches(s, 1, 1), std::invalid_argument);
    EXPECT_THROW(measure_bell_branches(s, 0, 3), std::out_of_range);
}

TEST(MeasureBell, convention_swaps_phi) {
    auto branches = measure_bell_branches(PureState::bell_pair(), 0, 1, BellConvention::PhiSignFlipped);
    EXPECT_NEAR(branches[1].outcome.probability, 1, 1e-12);
}

TEST(MeasureHadamard, examples) {
    auto on_plus = measure_hadamard_branches(plus(), 0);
    ASSERT_EQ(on_plus.size(), 2u);
    EXPECT_EQ(on_plus[0].outcome.label, OutcomeLabel::Plus);
    EXPECT_NEAR(on_plus[0].outcome.probability, 1, 1e-12);
    EXPECT_TRUE(on_plus[1].zero_probability);

    auto on_zero = measure_hadamard_branches(PureState::basis(1, 0), 0);
    EXPECT_NEAR(on_zero[0].outcome.probability, 0.5, 1e-12);
    EXPECT_NEAR(on_zero[1].outcome.probability, 0.5, 1e-12);
}

TEST(MeasureHadamard, residual_after_wing_measurement) {
    // Measuring the second qubit of a|00>+b|11> leaves a|0> +- b|1>.
    Amplitude a{0.6, 0};
    Amplitude b{0, 0.8};
    auto branches = measure_hadamard_branches(PureState::from_amplitudes({a, 0, 0, b}), 1);
    EXPECT_NEAR(branches[0].outcome.probability, 0.5, 1e-12);
    EXPECT_NEAR(fidelity_phase_invariant(branches[0].post_state, PureState::qubit(a, b)), 1, 1e-12);
    EXPECT_NEAR(fidelity_phase_invariant(branches[1].post_state, PureState::qubit(a, -b)), 1, 1e-12);
}

TEST(SampleMeasurement, single_branch_and_determinism) {
    std::mt19937_64 rng(5);
    auto certain = measure_bell_branches(PureState::bell_pair(), 0, 1);
    EXPECT_EQ(sample_measurement(certain, rng).outcome.label, OutcomeLabel::PhiPlus);

    auto uniform = measure_bell_branches(tensor(PureState::bell_pair(), PureState::bell_pair()), 1, 2);
    std::mt19937_64 r1(42), r2(42);
    for (int i = 0; i < 50; i++) {
        EXPECT_EQ(sample_measurement(uniform, r1).outcome.label, sample_measurement(uniform, r2).outcome.label);
    }
    std::vector<Branch> empty;
    EXPECT_THROW(sample_measurement(empty, rng), std::invalid_argument);
}

TEST(SampleMeasurement, never_picks_impossible_branch) {
    auto branches = measure_hadamard_branches(plus(), 0);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; i++) {
        EXPECT_EQ(sample_measurement(branches, rng).outcome.label, OutcomeLabel::Plus);
    }
}

TEST(PartialTrace, examples) {
    std::array<size_t, 1> first{0};
    auto half = partial_trace(PureState::bell_pair(), first);
    EXPECT_LT(trace_distance(half, DensityMatrix::maximally_mixed(1)), 1e-12);

    auto product = partial_trace(PureState::basis(2, 0b01), first);
    EXPECT_NEAR(std::abs(product(0, 0) - Amplitude(1)), 0, 1e-12);
    EXPECT_NEAR(std::abs(product(1, 1)), 0, 1e-12);

    Amplitude a{0.6, 0};
    Amplitude b{0, 0.8};
    auto wing = partial_trace(PureState::from_amplitudes({a, 0, 0, b}), first);
    EXPECT_NEAR(wing(0, 0).real(), 0.36, 1e-12);
    EXPECT_NEAR(wing(1, 1).real(), 0.64, 1e-12);
    EXPECT_NEAR(std::abs(wing(0, 1)), 0, 1e-12);
}

TEST(PartialTrace, single_qubit_coherences) {
    // (0.6, 0.8i): rho_01 = a conj(b) = -0.48i.
    std::array<size_t, 1> q{0};
    auto rho = partial_trace(PureState::qubit(0.6, Amplitude(0, 0.8)), q);
    EXPECT_NEAR(std::abs(rho(0, 1) - Amplitude(0, -0.48)), 0, 1e-12);
    EXPECT_NEAR(std::abs(rho(1, 0) - Amplitude(0, 0.48)), 0, 1e-12);
}

TEST(PartialTrace, errors) {
    std::vector<size_t> none;
    EXPECT_THROW(partial_trace(PureState::bell_pair(), none), std::invalid_argument);
    std::vector<size_t> twice{0, 0};
    EXPECT_THROW(partial_trace(PureState::bell_pair(), twice), std::invalid_argument);
}

TEST(Mix, examples) {
    DensityMatrix rho = DensityMatrix::from_pure(plus());
    std::vector<WeightedState> single{{1, rho}};
    EXPECT_LT(trace_distance(mix(single), rho), 1e-12);

    std::vector<WeightedState> halves{{0.5, PureState::basis(1, 0)}, {0.5, PureState::basis(1, 1)}};
    EXPECT_LT(trace_distance(mix(halves), DensityMatrix::maximally_mixed(1)), 1e-12);

    std::vector<WeightedState> mismatched{{0.5, PureState::basis(1, 0)}, {0.5, PureState::basis(2, 0)}};
    EXPECT_THROW(mix(mismatched), std::invalid_argument);
}

TEST(Mix, sharing_forms_average_to_classical_pair) {
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    expected(0, 0) = 0.5;
    expected(3, 3) = 0.5;
    for (const auto &s : qnetlab::testing::random_secrets(10, 3)) {
        std::vector<WeightedState> forms;
        for (auto b : kBellOutcomes) {
            forms.push_back({0.25, sharing_form(b, s)});
        }
        EXPECT_LT(max_abs_diff(mix(forms).matrix(), expected), 1e-12);
    }
}

TEST(Fidelity, examples) {
    std::mt19937_64 rng(9);
    auto psi = random_state(3, rng);
    EXPECT_NEAR(fidelity_phase_invariant(psi, psi), 1, 1e-12);
    std::vector<Amplitude> rotated(psi.amplitudes().begin(), psi.amplitudes().end());
    for (auto &a : rotated) {
        a *= std::polar(1.0, 0.7);
    }
    EXPECT_NEAR(fidelity_phase_invariant(psi, PureState::from_amplitudes(rotated)), 1, 1e-12);
    EXPECT_NEAR(fidelity_phase_invariant(PureState::basis(1, 0), plus()), kR, 1e-12);
    EXPECT_THROW(fidelity_phase_invariant(psi, plus()), std::invalid_argument);
}

TEST(TraceDistance, examples) {
    auto zero = DensityMatrix::from_pure(PureState::basis(1, 0));
    auto one = DensityMatrix::from_pure(PureState::basis(1, 1));
    EXPECT_NEAR(trace_distance(zero, zero), 0, 1e-12);
    EXPECT_NEAR(trace_distance(zero, one), 1, 1e-12);
    EXPECT_NEAR(trace_distance(DensityMatrix::maximally_mixed(1), zero), 0.5, 1e-12);
    EXPECT_THROW(trace_distance(zero, DensityMatrix::maximally_mixed(2)), std::invalid_argument);
}

TEST(DensityMatrix, validation) {
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix::from_matrix(bad), std::invalid_argument);
    Eigen::MatrixXcd not_hermitian = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
    not_hermitian(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix::from_matrix(not_hermitian), std::invalid_argument);
    DensityMatrix sentinel;
    EXPECT_EQ(sentinel.dimension(), 1u);
    EXPECT_TRUE(sentinel.is_valid());
}

// Properties over random states.

TEST(StatevecProperty, norm_preservation) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; trial++) {
        size_t n = 2 + trial % 4;
        auto s = random_state(n, rng);
        auto p = kAllPaulis[trial % 4];
        EXPECT_NEAR(apply_pauli(s, p, trial % n).norm(), 1, 1e-9);
        EXPECT_NEAR(tensor(s, random_state(1, rng)).norm(), 1, 1e-9);
        for (const auto &b : measure_bell_branches(s, 0, n - 1)) {
            EXPECT_NEAR(b.post_state.norm(), 1, 1e-9);
        }
        for (const auto &b : measure_hadamard_branches(s, trial % n)) {
            EXPECT_NEAR(b.post_state.norm(), 1, 1e-9);
        }
    }
}

TEST(StatevecProperty, branch_completeness) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 3 + trial % 3;
        auto s = random_state(n, rng);
        size_t q1 = trial % n;
        size_t q2 = (q1 + 1 + trial % (n - 1)) % n;
        auto branches = measure_bell_branches(s, q1, q2);
        double total = 0;
        std::vector<WeightedState> ensemble;
        for (const auto &b : branches) {
            total += b.outcome.probability;
            ensemble.push_back({b.outcome.probability, b.post_state});
        }
        EXPECT_NEAR(total, 1, 1e-9);
        std::vector<size_t> rest;
        for (size_t q = 0; q < n; q++) {
            if (q != q1 && q != q2) {
                rest.push_back(q);
            }
        }
        EXPECT_LT(trace_distance(mix(ensemble), partial_trace(s, rest)), 1e-9);

        size_t h = trial % n;
        auto hb = measure_hadamard_branches(s, h);
        std::vector<WeightedState> hens{{hb[0].outcome.probability, hb[0].post_state},
                                        {hb[1].outcome.probability, hb[1].post_state}};
        std::vector<size_t> hrest;
        for (size_t q = 0; q < n; q++) {
            if (q != h) {
                hrest.push_back(q);
            }
        }
        EXPECT_LT(trace_distance(mix(hens), partial_trace(s, hrest)), 1e-9);
    }
}

namespace {

size_t shifted(size_t q, std::initializer_list<size_t> removed) {
    size_t shift = 0;
    for (auto r : removed) {
        shift += r < q;
    }
    return q - shift;
}

}  // namespace

TEST(StatevecProperty, measurement_order_commutes) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 60; trial++) {
        size_t n = 4 + trial % 3;
        auto s = random_state(n, rng);
        // Bell on (a, b), Hadamard on c, all distinct.
        size_t a = trial % n;
        size_t b = (a + 1) % n;
        size_t c = (a + 2 + trial % (n - 2)) % n;
        ASSERT_TRUE(c != a && c != b);

        for (const auto &bell : measure_bell_branches(s, a, b)) {
            auto after = measure_hadamard_branches(bell.post_state, shifted(c, {a, b}));
            for (int k = 0; k < 2; k++) {
                auto had_first = measure_hadamard_branches(s, c)[k];
                auto then_bell = measure_bell_branches(
                    had_first.post_state, shifted(a, {c}), shifted(b, {c}))[outcome_index(bell.outcome.label)];
                double p1 = bell.outcome.probability * after[k].outcome.probability;
                double p2 = had_first.outcome.probability * then_bell.outcome.probability;
                EXPECT_NEAR(p1, p2, 1e-9);
                if (p1 > 1e-9) {
                    EXPECT_NEAR(fidelity_phase_invariant(after[k].post_state, then_bell.post_state), 1, 1e-9);
                }
            }
        }
    }
}

TEST(StatevecProperty, partial_trace_of_product) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 50; trial++) {
        size_t na = 1 + trial % 3;
        size_t nb = 1 + (trial / 3) % 3;
        auto a = random_state(na, rng);
        auto b = random_state(nb, rng);
        std::vector<size_t> keep(na);
        for (size_t q = 0; q < na; q++) {
            keep[q] = q;
        }
        auto rho = partial_trace(tensor(a, b), keep);
        EXPECT_LT(max_abs_diff(rho.matrix(), outer(a)), 1e-9);
        EXPECT_TRUE(rho.is_valid());
    }
}

TEST(StatevecProperty, fidelity_agrees_with_density_form) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 50; trial++) {
        auto a = random_state(2, rng);
        auto b = random_state(2, rng);
        EXPECT_NEAR(fidelity(DensityMatrix::from_pure(a), b), fidelity_phase_invariant(a, b), 1e-9);
    }
}
