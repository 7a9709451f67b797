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


// Scenario documents: a JSON network description plus a script of protocol
// steps, and a runner that executes them and emits a line-delimited trace.

#ifndef QNETLAB_SCENARIO_H
#define QNETLAB_SCENARIO_H

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "qnetlab/network.h"

namespace qnetlab {

struct ShareStep {
    PartyId dealer;
    std::string resource;
};

struct RevokeStep {
    std::string resource;
};

struct RouteStep {
    PartyId receiver;
    std::string resource;
};

struct HopStep {
    std::string resource_a;
    std::string resource_b;
};

struct ReleaseStep {
    PartyId from;
    PartyId to;
};

/// Creates a resource mid-script, for links that only need to exist once the
/// wings arrive.
struct EntangleStep {
    ResourceSpec resource;
};

using ScenarioStep = std::variant<ShareStep, RevokeStep, RouteStep, HopStep, ReleaseStep, EntangleStep>;

struct Scenario {
    TopologySpec network;
    std::vector<ScenarioStep> script;
};

/// Throws ScenarioError. Syntax errors carry line and column; schema errors
/// name the offending JSON path.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string &path);

struct RunSummary {
    /// Holder and label of the qubit that ends up with the secret, if any.
    std::optional<PartyId> holder;
    std::optional<std::string> qubit;
    double fidelity_min = 0;
    double fidelity_max = 0;
    size_t branches = 0;
    size_t pruned = 0;
};

struct RunResult {
    /// One compact JSON object per line, keys in fixed order.
    std::vector<std::string> trace;
    RunSummary summary;
};

/// Executes the script. Protocol failures propagate as exceptions
/// (OrderingError, ProtocolError, ResourceLimitError, std::invalid_argument).
RunResult run_scenario(const Scenario &scenario, const TopologyOptions &options);

/// Trace lines for every event in the log, in order.
std::vector<std::string> trace_lines(const Topology &t);

}  // namespace qnetlab

#endif
