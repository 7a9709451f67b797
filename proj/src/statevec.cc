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

#include "qnetlab/statevec.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qnetlab/errors.h"

using namespace qnetlab;

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

double squared_norm(std::span<const Amplitude> amps) {
    double total = 0;
    for (const auto &a : amps) {
        total += std::norm(a);
    }
    return total;
}

void require_qubit(const PureState &state, size_t qubit) {
    if (qubit >= state.num_qubits()) {
        throw std::out_of_range(
            "qubit " + std::to_string(qubit) + " out of range for " + std::to_string(state.num_qubits()) +
            "-qubit state");
    }
}

uint64_t bit_of(size_t num_qubits, size_t qubit) {
    return uint64_t{1} << (num_qubits - 1 - qubit);
}

// Bell vectors over (q1, q2) with q1 the most significant bit.
std::array<std::array<Amplitude, 4>, 4> bell_vectors(BellConvention convention) {
    std::array<Amplitude, 4> phi_plus{kInvSqrt2, 0, 0, kInvSqrt2};
    std::array<Amplitude, 4> phi_minus{kInvSqrt2, 0, 0, -kInvSqrt2};
    std::array<Amplitude, 4> psi_plus{0, kInvSqrt2, kInvSqrt2, 0};
    std::array<Amplitude, 4> psi_minus{0, kInvSqrt2, -kInvSqrt2, 0};
    if (convention == BellConvention::PhiSignFlipped) {
        std::swap(phi_plus, phi_minus);
    }
    return {phi_plus, phi_minus, psi_plus, psi_minus};
}

std::vector<Branch> branches_from_projections(
    const PureState &state, std::span<const size_t> qubits,
    std::span<const std::array<Amplitude, 4>> vectors, std::span<const OutcomeLabel> labels) {
    std::vector<Branch> result;
    result.reserve(labels.size());
    size_t width = size_t{1} << qubits.size();
    double total = 0;
    for (size_t k = 0; k < labels.size(); k++) {
        auto projected = project_out(state, qubits, std::span<const Amplitude>(vectors[k].data(), width));
        double p = squared_norm(projected);
        total += p;
        size_t remaining = state.num_qubits() - qubits.size();
        if (p < kZeroProbability) {
            result.push_back(Branch{Outcome{labels[k], p}, PureState::basis(remaining, 0), true});
        } else {
            result.push_back(Branch{Outcome{labels[k], p}, PureState::normalized(std::move(projected)), false});
        }
    }
    // Absorb rounding so the probabilities sum to exactly the computed total.
    for (auto &b : result) {
        b.outcome.probability /= total;
    }
    return result;
}

}  // namespace

PureState::PureState() : num_qubits_(0), amps_{Amplitude{1, 0}} {
}

PureState::PureState(size_t num_qubits, std::vector<Amplitude> amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {
}

PureState PureState::from_amplitudes(std::vector<Amplitude> amps) {
    if (amps.empty() || !std::has_single_bit(amps.size())) {
        throw std::invalid_argument("amplitude count must be a power of two, got " + std::to_string(amps.size()));
    }
    for (const auto &a : amps) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("non-finite amplitude");
        }
    }
    double n2 = squared_norm(amps);
    if (std::abs(n2 - 1) > kTolerance) {
        throw std::invalid_argument("state is not normalized (|psi|^2 = " + std::to_string(n2) + ")");
    }
    size_t n = static_cast<size_t>(std::countr_zero(amps.size()));
    return PureState(n, std::move(amps));
}

PureState PureState::normalized(std::vector<Amplitude> amps) {
    double n2 = squared_norm(amps);
    if (!(n2 > 0) || !std::isfinite(n2)) {
        throw std::invalid_argument("cannot normalize a zero or non-finite vector");
    }
    double scale = 1 / std::sqrt(n2);
    for (auto &a : amps) {
        a *= scale;
    }
    return from_amplitudes(std::move(amps));
}

PureState PureState::basis(size_t num_qubits, uint64_t index) {
    if (num_qubits >= 63) {
        throw ResourceLimitError("basis state too large");
    }
    size_t dim = size_t{1} << num_qubits;
    if (index >= dim) {
        throw std::out_of_range("basis index out of range");
    }
    std::vector<Amplitude> amps(dim);
    amps[index] = 1;
    return PureState(num_qubits, std::move(amps));
}

PureState PureState::qubit(Amplitude alpha, Amplitude beta) {
    return from_amplitudes({alpha, beta});
}

PureState PureState::bell_pair() {
    return PureState(2, {kInvSqrt2, 0, 0, kInvSqrt2});
}

PureState PureState::ghz(size_t num_qubits) {
    if (num_qubits == 0) {
        throw std::invalid_argument("GHZ state needs at least one qubit");
    }
    std::vector<Amplitude> amps(size_t{1} << num_qubits);
    amps.front() = kInvSqrt2;
    amps.back() = kInvSqrt2;
    return PureState(num_qubits, std::move(amps));
}

double PureState::norm() const {
    return std::sqrt(squared_norm(amps_));
}

DensityMatrix::DensityMatrix() : num_qubits_(0), matrix_(Eigen::MatrixXcd::Ones(1, 1)) {
}

DensityMatrix::DensityMatrix(size_t num_qubits, Eigen::MatrixXcd matrix)
    : num_qubits_(num_qubits), matrix_(std::move(matrix)) {
}

DensityMatrix DensityMatrix::from_pure(const PureState &state) {
    Eigen::Map<const Eigen::VectorXcd> v(state.amplitudes().data(), static_cast<Eigen::Index>(state.dimension()));
    return DensityMatrix(state.num_qubits(), v * v.adjoint());
}

DensityMatrix DensityMatrix::from_matrix(Eigen::MatrixXcd matrix) {
    auto rows = static_cast<size_t>(matrix.rows());
    if (matrix.rows() != matrix.cols() || rows == 0 || !std::has_single_bit(rows)) {
        throw std::invalid_argument("density matrix must be square with power-of-two dimension");
    }
    DensityMatrix result(static_cast<size_t>(std::countr_zero(rows)), std::move(matrix));
    if (!result.is_valid()) {
        throw std::invalid_argument("matrix is not a valid density matrix");
    }
    return result;
}

DensityMatrix DensityMatrix::maximally_mixed(size_t num_qubits) {
    auto dim = static_cast<Eigen::Index>(size_t{1} << num_qubits);
    return DensityMatrix(num_qubits, Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

bool DensityMatrix::is_valid(double tolerance) const {
    if (!matrix_.allFinite()) {
        return false;
    }
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tolerance) {
        return false;
    }
    if (std::abs(matrix_.trace() - Amplitude{1, 0}) > tolerance) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -tolerance;
}

PureState qnetlab::tensor(const PureState &a, const PureState &b, size_t qubit_cap) {
    size_t n = a.num_qubits() + b.num_qubits();
    if (n > qubit_cap) {
        throw ResourceLimitError(
            "combined state would have " + std::to_string(n) + " qubits, cap is " + std::to_string(qubit_cap));
    }
    std::vector<Amplitude> amps;
    amps.reserve(a.dimension() * b.dimension());
    for (auto x : a.amplitudes()) {
        for (auto y : b.amplitudes()) {
            amps.push_back(x * y);
        }
    }
    return PureState::normalized(std::move(amps));
}

PureState qnetlab::apply_pauli(const PureState &state, PauliCorrection correction, size_t qubit) {
    require_qubit(state, qubit);
    uint64_t mask = bit_of(state.num_qubits(), qubit);
    std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
    if (correction.x) {
        for (uint64_t i = 0; i < amps.size(); i++) {
            if ((i & mask) == 0) {
                std::swap(amps[i], amps[i | mask]);
            }
        }
    }
    if (correction.z) {
        for (uint64_t i = 0; i < amps.size(); i++) {
            if (i & mask) {
                amps[i] = -amps[i];
            }
        }
    }
    return PureState::from_amplitudes(std::move(amps));
}

std::vector<Amplitude> qnetlab::project_out(
    const PureState &state, std::span<const size_t> qubits, std::span<const Amplitude> basis_vector) {
    size_t n = state.num_qubits();
    size_t k = qubits.size();
    if (basis_vector.size() != (size_t{1} << k)) {
        throw std::invalid_argument("basis vector length does not match measured qubit count");
    }
    std::vector<bool> measured(n, false);
    for (size_t q : qubits) {
        require_qubit(state, q);
        if (measured[q]) {
            throw std::invalid_argument("qubit " + std::to_string(q) + " listed twice");
        }
        measured[q] = true;
    }
    std::vector<size_t> rest;
    for (size_t q = 0; q < n; q++) {
        if (!measured[q]) {
            rest.push_back(q);
        }
    }
    std::vector<Amplitude> out(size_t{1} << rest.size());
    for (uint64_t r = 0; r < out.size(); r++) {
        uint64_t base = 0;
        for (size_t j = 0; j < rest.size(); j++) {
            if (r & (uint64_t{1} << (rest.size() - 1 - j))) {
                base |= bit_of(n, rest[j]);
            }
        }
        Amplitude acc = 0;
        for (uint64_t m = 0; m < basis_vector.size(); m++) {
            if (basis_vector[m] == Amplitude{0, 0}) {
                continue;
            }
            uint64_t index = base;
            for (size_t j = 0; j < k; j++) {
                if (m & (uint64_t{1} << (k - 1 - j))) {
                    index |= bit_of(n, qubits[j]);
                }
            }
            acc += std::conj(basis_vector[m]) * state[index];
        }
        out[r] = acc;
    }
    return out;
}

std::vector<Branch> qnetlab::measure_bell_branches(
    const PureState &state, size_t q1, size_t q2, BellConvention convention) {
    require_qubit(state, q1);
    require_qubit(state, q2);
    if (q1 == q2) {
        throw std::invalid_argument("Bell measurement needs two distinct qubits");
    }
    std::array<size_t, 2> qubits{q1, q2};
    auto vectors = bell_vectors(convention);
    return branches_from_projections(state, qubits, vectors, kBellOutcomes);
}

std::vector<Branch> qnetlab::measure_hadamard_branches(const PureState &state, size_t qubit) {
    require_qubit(state, qubit);
    std::array<size_t, 1> qubits{qubit};
    std::array<std::array<Amplitude, 4>, 2> vectors{{
        {kInvSqrt2, kInvSqrt2, 0, 0},
        {kInvSqrt2, -kInvSqrt2, 0, 0},
    }};
    return branches_from_projections(state, qubits, vectors, kHadamardOutcomes);
}

double qnetlab::uniform_unit(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

const Branch &qnetlab::sample_measurement(std::span<const Branch> branches, std::mt19937_64 &rng) {
    if (branches.empty()) {
        throw std::invalid_argument("cannot sample from an empty branch list");
    }
    double total = 0;
    for (const auto &b : branches) {
        total += b.outcome.probability;
    }
    if (std::abs(total - 1) > kTolerance) {
        throw std::invalid_argument("branch probabilities do not sum to 1");
    }
    double u = uniform_unit(rng) * total;
    double cumulative = 0;
    const Branch *last_possible = nullptr;
    for (const auto &b : branches) {
        if (b.zero_probability) {
            continue;
        }
        last_possible = &b;
        cumulative += b.outcome.probability;
        if (u < cumulative) {
            return b;
        }
    }
    return last_possible ? *last_possible : branches.back();
}

DensityMatrix qnetlab::partial_trace(const PureState &state, std::span<const size_t> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace needs at least one kept qubit");
    }
    size_t n = state.num_qubits();
    std::vector<size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
        throw std::invalid_argument("duplicate qubit in keep set");
    }
    for (size_t q : kept) {
        require_qubit(state, q);
    }
    std::vector<bool> is_kept(n, false);
    for (size_t q : kept) {
        is_kept[q] = true;
    }
    std::vector<size_t> traced;
    for (size_t q = 0; q < n; q++) {
        if (!is_kept[q]) {
            traced.push_back(q);
        }
    }

    auto spread = [&](uint64_t compact, const std::vector<size_t> &positions) {
        uint64_t index = 0;
        for (size_t j = 0; j < positions.size(); j++) {
            if (compact & (uint64_t{1} << (positions.size() - 1 - j))) {
                index |= bit_of(n, positions[j]);
            }
        }
        return index;
    };

    auto dim = static_cast<Eigen::Index>(size_t{1} << kept.size());
    uint64_t env_dim = uint64_t{1} << traced.size();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<uint64_t> row_index(static_cast<size_t>(dim));
    for (Eigen::Index i = 0; i < dim; i++) {
        row_index[static_cast<size_t>(i)] = spread(static_cast<uint64_t>(i), kept);
    }
    for (uint64_t e = 0; e < env_dim; e++) {
        uint64_t env = spread(e, traced);
        for (Eigen::Index i = 0; i < dim; i++) {
            Amplitude a = state[row_index[static_cast<size_t>(i)] | env];
            if (a == Amplitude{0, 0}) {
                continue;
            }
            for (Eigen::Index j = 0; j < dim; j++) {
                rho(i, j) += a * std::conj(state[row_index[static_cast<size_t>(j)] | env]);
            }
        }
    }
    return DensityMatrix::from_matrix(std::move(rho));
}

DensityMatrix qnetlab::mix(std::span<const WeightedState> states) {
    if (states.empty()) {
        throw std::invalid_argument("mix of an empty ensemble");
    }
    Eigen::MatrixXcd acc;
    double total = 0;
    for (const auto &w : states) {
        if (!(w.probability >= 0)) {
            throw std::invalid_argument("negative or NaN mixture weight");
        }
        DensityMatrix rho = std::holds_alternative<PureState>(w.state)
                                ? DensityMatrix::from_pure(std::get<PureState>(w.state))
                                : std::get<DensityMatrix>(w.state);
        if (acc.size() == 0) {
            acc = Eigen::MatrixXcd::Zero(rho.matrix().rows(), rho.matrix().cols());
        } else if (acc.rows() != rho.matrix().rows()) {
            throw std::invalid_argument("dimension mismatch in mix");
        }
        acc += w.probability * rho.matrix();
        total += w.probability;
    }
    if (std::abs(total - 1) > kTolerance) {
        throw std::invalid_argument("mixture weights sum to " + std::to_string(total) + ", not 1");
    }
    return DensityMatrix::from_matrix(std::move(acc));
}

double qnetlab::fidelity_phase_invariant(const PureState &a, const PureState &b) {
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("dimension mismatch in fidelity");
    }
    Amplitude overlap = 0;
    for (size_t i = 0; i < a.dimension(); i++) {
        overlap += std::conj(a[i]) * b[i];
    }
    return std::abs(overlap);
}

double qnetlab::fidelity(const DensityMatrix &rho, const PureState &psi) {
    if (rho.dimension() != psi.dimension()) {
        throw std::invalid_argument("dimension mismatch in fidelity");
    }
    Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), static_cast<Eigen::Index>(psi.dimension()));
    Amplitude value = v.dot(rho.matrix() * v);
    return std::sqrt(std::max(0.0, value.real()));
}

double qnetlab::trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("dimension mismatch in trace distance");
    }
    Eigen::MatrixXcd diff = a.matrix() - b.matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}
