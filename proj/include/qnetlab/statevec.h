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

#ifndef QNETLAB_STATEVEC_H
#define QNETLAB_STATEVEC_H

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qnetlab/outcome.h"
#include "qnetlab/pauli.h"

namespace qnetlab {

using Amplitude = std::complex<double>;

/// Absolute tolerance used for every numerical comparison.
inline constexpr double kTolerance = 1e-9;
/// Branches below this probability are flagged as impossible.
inline constexpr double kZeroProbability = 1e-12;
inline constexpr size_t kDefaultQubitCap = 16;

/// Which vectors are attached to the Bell outcome labels.
///
/// PhiSignFlipped swaps the Phi+ and Phi- vectors. It exists so `verify`
/// can demonstrate that a corrupted basis convention is caught.
enum class BellConvention : uint8_t { Standard, PhiSignFlipped };

/// Normalized pure state over n qubits. Qubit 0 is the most significant bit
/// of the basis index (the leftmost tensor factor).
class PureState {
   public:
    /// The zero-qubit state (a single amplitude 1).
    PureState();

    /// Validates length (power of two), finiteness and unit norm.
    static PureState from_amplitudes(std::vector<Amplitude> amps);
    /// Like from_amplitudes but rescales any nonzero finite vector.
    static PureState normalized(std::vector<Amplitude> amps);
    static PureState basis(size_t num_qubits, uint64_t index);
    static PureState qubit(Amplitude alpha, Amplitude beta);
    /// (|00>+|11>)/sqrt2
    static PureState bell_pair();
    /// (|0..0>+|1..1>)/sqrt2
    static PureState ghz(size_t num_qubits);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t dimension() const {
        return amps_.size();
    }
    std::span<const Amplitude> amplitudes() const {
        return amps_;
    }
    Amplitude operator[](uint64_t index) const {
        return amps_[index];
    }
    double norm() const;

    bool operator==(const PureState &) const = default;

   private:
    PureState(size_t num_qubits, std::vector<Amplitude> amps);

    size_t num_qubits_;
    std::vector<Amplitude> amps_;
};

class DensityMatrix {
   public:
    /// Zero-qubit sentinel: dimension 1, entry 1.
    DensityMatrix();

    static DensityMatrix from_pure(const PureState &state);
    /// Throws std::invalid_argument unless Hermitian, unit trace and PSD.
    static DensityMatrix from_matrix(Eigen::MatrixXcd matrix);
    static DensityMatrix maximally_mixed(size_t num_qubits);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t dimension() const {
        return static_cast<size_t>(matrix_.rows());
    }
    const Eigen::MatrixXcd &matrix() const {
        return matrix_;
    }
    Amplitude operator()(size_t row, size_t col) const {
        return matrix_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }
    Amplitude trace() const {
        return matrix_.trace();
    }
    /// Hermitian, unit trace and min eigenvalue >= -tolerance.
    bool is_valid(double tolerance = kTolerance) const;

   private:
    DensityMatrix(size_t num_qubits, Eigen::MatrixXcd matrix);

    size_t num_qubits_;
    Eigen::MatrixXcd matrix_;
};

/// One possible result of a projective measurement.
///
/// Impossible branches (probability < kZeroProbability) are kept, with
/// `zero_probability` set and `post_state` set to |0...0> as a placeholder.
struct Branch {
    Outcome outcome;
    PureState post_state;
    bool zero_probability = false;
};

/// a's qubits come first. Throws ResourceLimitError above `qubit_cap`.
PureState tensor(const PureState &a, const PureState &b, size_t qubit_cap = kDefaultQubitCap);

PureState apply_pauli(const PureState &state, PauliCorrection correction, size_t qubit);

/// Four branches in the order phi+, phi-, psi+, psi-. The Bell vectors are
/// written with q1 as the left ket. Both qubits are removed from the
/// post-states; the survivors keep their relative order.
std::vector<Branch> measure_bell_branches(
    const PureState &state, size_t q1, size_t q2, BellConvention convention = BellConvention::Standard);

/// Two branches in the order +, -. The measured qubit is removed.
std::vector<Branch> measure_hadamard_branches(const PureState &state, size_t qubit);

/// The unnormalized vector <basis_vector|_{qubits} |state>, over the
/// remaining qubits in ascending order. qubits[0] is the most significant
/// bit of the basis_vector index.
std::vector<Amplitude> project_out(
    const PureState &state, std::span<const size_t> qubits, std::span<const Amplitude> basis_vector);

/// Deterministic for a given generator state. Never returns a zero-probability
/// branch unless every branch is one.
const Branch &sample_measurement(std::span<const Branch> branches, std::mt19937_64 &rng);

/// Uniform double in [0,1) from 53 random bits; portable across standard libraries.
double uniform_unit(std::mt19937_64 &rng);

/// Reduced state on `keep`, ordered by ascending qubit index.
DensityMatrix partial_trace(const PureState &state, std::span<const size_t> keep);

struct WeightedState {
    double probability;
    std::variant<PureState, DensityMatrix> state;
};

/// Convex combination. Probabilities must sum to 1 within kTolerance.
DensityMatrix mix(std::span<const WeightedState> states);

/// |<a|b>|; 1 iff the states agree up to global phase.
double fidelity_phase_invariant(const PureState &a, const PureState &b);

/// <psi|rho|psi>^(1/2); equals fidelity_phase_invariant when rho is pure.
double fidelity(const DensityMatrix &rho, const PureState &psi);

/// Half the sum of absolute eigenvalues of a - b.
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);

}  // namespace qnetlab

#endif
