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

#ifndef QNETLAB_ERRORS_H
#define QNETLAB_ERRORS_H

#include <stdexcept>
#include <string>

namespace qnetlab {

/// A state would exceed the configured qubit cap.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A party tried to do something the semi-honest model forbids (touching a
/// qubit it does not own, measuring a dead qubit, reusing a consumed share).
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Classical information was required before its owner released it.
struct OrderingError : ProtocolError {
    using ProtocolError::ProtocolError;
};

/// The brute-force table oracle reached contradictory conclusions.
struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed scenario document. Line and column are 1-based, 0 when unknown.
struct ScenarioError : std::runtime_error {
    ScenarioError(const std::string &message, size_t line = 0, size_t column = 0)
        : std::runtime_error(message), line(line), column(column) {
    }
    size_t line;
    size_t column;
};

}  // namespace qnetlab

#endif
