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


// Random generators for property tests.

#ifndef QNETLAB_TESTS_TEST_UTIL_H
#define QNETLAB_TESTS_TEST_UTIL_H

#include <cmath>
#include <random>
#include <vector>

#include "qnetlab/statevec.h"
#include "qnetlab/tablegen.h"

namespace qnetlab::testing {

inline PureState random_state(size_t num_qubits, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    std::vector<Amplitude> amps(size_t{1} << num_qubits);
    for (auto &a : amps) {
        a = {normal(rng), normal(rng)};
    }
    return PureState::normalized(std::move(amps));
}

inline SecretSample random_secret(std::mt19937_64 &rng) {
    auto s = random_state(1, rng);
    return {s[0], s[1]};
}

inline std::vector<SecretSample> random_secrets(size_t count, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<SecretSample> result;
    for (size_t i = 0; i < count; i++) {
        result.push_back(random_secret(rng));
    }
    return result;
}

inline Eigen::MatrixXcd outer(const PureState &s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dimension()));
    for (size_t i = 0; i < s.dimension(); i++) {
        v(static_cast<Eigen::Index>(i)) = s[i];
    }
    return v * v.adjoint();
}

inline double max_abs_diff(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qnetlab::testing

#endif
