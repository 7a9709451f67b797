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


#ifndef QNETLAB_COMMANDS_H
#define QNETLAB_COMMANDS_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace qnetlab {

enum ExitCode : int {
    kExitOk = 0,
    kExitInvariantFailure = 1,
    kExitUsage = 2,
    kExitParseError = 3,
    kExitOrdering = 4,
    kExitResourceLimit = 5,
    kExitProtocolError = 6,
};

struct TablesOptions {
    std::string protocol = "all";
    std::string branch = "all";
    std::string format = "text";
};

struct RunOptions {
    std::string scenario_path;
    uint64_t seed = 0;
    std::string mode = "exact";
    /// Trace goes to standard output when unset.
    std::optional<std::string> trace_path;
    std::optional<size_t> qubit_cap;
};

struct VerifyOptions {
    std::string filter;
    /// "phi-sign" swaps the Bell convention's Phi states.
    std::optional<std::string> inject_fault;
};

int cmd_tables(const TablesOptions &options, std::ostream &out, std::ostream &err);
int cmd_run(const RunOptions &options, std::ostream &out, std::ostream &err);
int cmd_verify(const VerifyOptions &options, std::ostream &out, std::ostream &err);

/// Parses arguments and dispatches. Reads QNETLAB_QUBIT_CAP from the
/// environment.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace qnetlab

#endif
