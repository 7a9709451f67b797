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

#ifndef QNETLAB_PAULI_H
#define QNETLAB_PAULI_H

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace qnetlab {

/// A single-qubit Pauli up to global phase, stored as symplectic bits.
///
/// (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=ZX. When both bits are set the operator
/// is applied as X first, then Z. Composition is bitwise XOR, which is exact
/// because phases are never tracked.
struct PauliCorrection {
    bool x = false;
    bool z = false;

    static constexpr PauliCorrection identity() {
        return {false, false};
    }
    static constexpr PauliCorrection pauli_x() {
        return {true, false};
    }
    static constexpr PauliCorrection pauli_z() {
        return {false, true};
    }
    static constexpr PauliCorrection pauli_zx() {
        return {true, true};
    }

    constexpr PauliCorrection operator^(PauliCorrection other) const {
        return {x != other.x, z != other.z};
    }
    constexpr PauliCorrection &operator^=(PauliCorrection other) {
        *this = *this ^ other;
        return *this;
    }
    constexpr bool is_identity() const {
        return !x && !z;
    }

    // Lexicographic on (x, z): I < Z < X < ZX.
    constexpr auto operator<=>(const PauliCorrection &) const = default;

    /// "I", "X", "Z" or "ZX".
    std::string_view name() const;
    static std::optional<PauliCorrection> from_name(std::string_view name);
};

/// All four candidates in canonical (lexicographic) order.
inline constexpr std::array<PauliCorrection, 4> kAllPaulis = {
    PauliCorrection{false, false},
    PauliCorrection{false, true},
    PauliCorrection{true, false},
    PauliCorrection{true, true},
};

}  // namespace qnetlab

#endif
