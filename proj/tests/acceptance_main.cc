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


// Acceptance gate: one PASS/FAIL line per criterion. Exits nonzero if any
// selected criterion fails.

#include <iostream>

#include "CLI11.hpp"

#include "qnetlab/acceptance.h"

int main(int argc, char **argv) {
    CLI::App app{"qnetlab acceptance checks", "qnetlab_acceptance"};
    std::string filter;
    app.add_option("--criterion", filter, "Criterion number, tag or name substring");
    CLI11_PARSE(app, argc, argv);

    int failures = 0;
    int run = 0;
    for (const auto &c : qnetlab::acceptance_criteria()) {
        if (!qnetlab::matches_filter(c, filter)) {
            continue;
        }
        auto r = qnetlab::run_criterion(c, {});
        std::cout << qnetlab::format_result(r) << std::endl;
        run++;
        failures += r.passed() ? 0 : 1;
    }
    if (run == 0) {
        std::cerr << "no criterion matches '" << filter << "'\n";
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
