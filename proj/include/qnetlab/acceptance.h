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


// The acceptance criteria as runnable checks. Shared by `qnetlab verify` and
// the acceptance test binary.

#ifndef QNETLAB_ACCEPTANCE_H
#define QNETLAB_ACCEPTANCE_H

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qnetlab/statevec.h"

namespace qnetlab {

struct AcceptanceConfig {
    /// Anything but Standard is a fault injection and should make checks fail.
    BellConvention convention = BellConvention::Standard;
};

struct CheckReport {
    bool passed = true;
    /// First failure, or a one-line summary on success.
    std::string detail;
    /// Extra lines worth printing either way.
    std::vector<std::string> notes;
};

struct Criterion {
    int id;
    std::string_view name;
    std::vector<std::string_view> tags;
    double time_limit_seconds;
    CheckReport (*check)(const AcceptanceConfig &);
};

std::span<const Criterion> acceptance_criteria();

/// Empty filter matches everything; otherwise a tag, a name substring, or the
/// criterion number.
bool matches_filter(const Criterion &c, std::string_view filter);

struct CriterionResult {
    const Criterion *criterion;
    CheckReport report;
    double seconds;

    bool passed() const {
        return report.passed && seconds < criterion->time_limit_seconds;
    }
};

/// Never throws; exceptions become failures.
CriterionResult run_criterion(const Criterion &c, const AcceptanceConfig &config);

/// "PASS c01 sharing-table (0.01 s, limit 1 s): ..." plus indented notes.
std::string format_result(const CriterionResult &r);

}  // namespace qnetlab

#endif
