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

#ifndef QNETLAB_OUTCOME_H
#define QNETLAB_OUTCOME_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qnetlab/pauli.h"

namespace qnetlab {

enum class OutcomeLabel : uint8_t {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
    Plus,
    Minus,
};

inline constexpr std::array<OutcomeLabel, 4> kBellOutcomes = {
    OutcomeLabel::PhiPlus, OutcomeLabel::PhiMinus, OutcomeLabel::PsiPlus, OutcomeLabel::PsiMinus};
inline constexpr std::array<OutcomeLabel, 2> kHadamardOutcomes = {OutcomeLabel::Plus, OutcomeLabel::Minus};

enum class Basis : uint8_t { Bell, Hadamard };

constexpr bool is_bell(OutcomeLabel label) {
    return label <= OutcomeLabel::PsiMinus;
}

constexpr Basis basis_of(OutcomeLabel label) {
    return is_bell(label) ? Basis::Bell : Basis::Hadamard;
}

/// Symplectic bits of a Bell outcome: x = "Psi" (odd parity), z = "minus".
///
/// A Pauli acting on either qubit of a Bell-measured pair XORs these bits,
/// and Bell outcome m teleports its input with byproduct Pauli of the same
/// bits. Both facts are what make frame tracking work.
constexpr PauliCorrection bell_bits(OutcomeLabel label) {
    switch (label) {
        case OutcomeLabel::PhiPlus:
            return {false, false};
        case OutcomeLabel::PhiMinus:
            return {false, true};
        case OutcomeLabel::PsiPlus:
            return {true, false};
        case OutcomeLabel::PsiMinus:
            return {true, true};
        default:
            return {false, false};
    }
}

constexpr OutcomeLabel bell_from_bits(PauliCorrection bits) {
    if (bits.x) {
        return bits.z ? OutcomeLabel::PsiMinus : OutcomeLabel::PsiPlus;
    }
    return bits.z ? OutcomeLabel::PhiMinus : OutcomeLabel::PhiPlus;
}

/// Index within its basis (0..3 for Bell, 0..1 for Hadamard).
constexpr size_t outcome_index(OutcomeLabel label) {
    return is_bell(label) ? static_cast<size_t>(label) : static_cast<size_t>(label) - 4;
}

/// "phi+", "phi-", "psi+", "psi-", "+", "-".
std::string_view outcome_name(OutcomeLabel label);
std::optional<OutcomeLabel> parse_outcome(std::string_view name);

/// Classical bits transmitted for the outcome: "00".."11" for Bell, "0"/"1".
std::string outcome_bits(OutcomeLabel label);

struct Outcome {
    OutcomeLabel label;
    double probability;
};

}  // namespace qnetlab

#endif
