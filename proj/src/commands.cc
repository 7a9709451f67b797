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


#include "qnetlab/commands.h"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>

#include "qnetlab/acceptance.h"
#include "qnetlab/errors.h"
#include "qnetlab/scenario.h"
#include "qnetlab/tablegen.h"

using namespace qnetlab;

namespace {

std::vector<TableProtocol> selected_protocols(const std::string &name) {
    if (name == "all") {
        return {TableProtocol::Share, TableProtocol::Revoke, TableProtocol::Route, TableProtocol::Hop};
    }
    auto p = parse_protocol(name);
    if (!p) {
        throw CLI::ValidationError("--protocol", "unknown protocol '" + name + "'");
    }
    return {*p};
}

std::vector<OutcomeLabel> selected_branches(const std::string &name) {
    if (name == "all") {
        return {kBellOutcomes.begin(), kBellOutcomes.end()};
    }
    auto b = parse_outcome(name);
    if (!b || !is_bell(*b)) {
        throw CLI::ValidationError("--branch", "unknown branch '" + name + "'");
    }
    return {*b};
}

CorrectionTable derive(TableProtocol protocol, OutcomeLabel branch) {
    switch (protocol) {
        case TableProtocol::Share:
            return derive_share_table();
        case TableProtocol::Revoke:
            return derive_revocation_table(branch);
        case TableProtocol::Route:
            return derive_routing_table(branch);
        default:
            return derive_hop_table(branch);
    }
}

std::optional<size_t> env_qubit_cap() {
    const char *raw = std::getenv("QNETLAB_QUBIT_CAP");
    if (!raw || !*raw) {
        return std::nullopt;
    }
    char *end = nullptr;
    unsigned long value = std::strtoul(raw, &end, 10);
    if (*end != '\0' || value == 0) {
        throw CLI::ValidationError("QNETLAB_QUBIT_CAP", std::string("expected a positive integer, got '") + raw + "'");
    }
    return value;
}

}  // namespace

int qnetlab::cmd_tables(const TablesOptions &options, std::ostream &out, std::ostream &err) {
    std::vector<TableProtocol> protocols;
    std::vector<OutcomeLabel> branches;
    try {
        protocols = selected_protocols(options.protocol);
        branches = selected_branches(options.branch);
        if (options.format != "text" && options.format != "json") {
            throw CLI::ValidationError("--format", "expected text or json");
        }
    } catch (const CLI::ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    bool ok = true;
    auto json = nlohmann::ordered_json::array();
    bool first = true;
    for (auto protocol : protocols) {
        // The share table has no branch parameter.
        std::vector<OutcomeLabel> these =
            protocol == TableProtocol::Share ? std::vector<OutcomeLabel>{OutcomeLabel::PhiPlus} : branches;
        for (auto branch : these) {
            auto table = derive(protocol, branch);
            auto diff = diff_against_published(table);
            ok &= diff.ok();
            if (options.format == "json") {
                json.push_back(table_to_json(table, diff));
            } else {
                out << (first ? "" : "\n") << format_table_text(table, diff);
            }
            first = false;
        }
    }
    if (options.format == "json") {
        out << json.dump(2) << "\n";
    }
    return ok ? kExitOk : kExitInvariantFailure;
}

int qnetlab::cmd_run(const RunOptions &options, std::ostream &out, std::ostream &err) {
    TopologyOptions topology;
    topology.seed = options.seed;
    if (options.mode == "exact") {
        topology.mode = SimulationMode::Exact;
    } else if (options.mode == "sampled") {
        topology.mode = SimulationMode::Sampled;
    } else {
        err << "error: --mode must be exact or sampled\n";
        return kExitUsage;
    }
    if (options.qubit_cap) {
        topology.qubit_cap = *options.qubit_cap;
    }

    RunResult result;
    try {
        result = run_scenario(load_scenario(options.scenario_path), topology);
    } catch (const ScenarioError &e) {
        err << options.scenario_path << ": " << e.what() << "\n";
        return kExitParseError;
    } catch (const OrderingError &e) {
        err << "ordering violation: " << e.what() << "\n";
        return kExitOrdering;
    } catch (const ResourceLimitError &e) {
        err << "resource limit: " << e.what() << "\n";
        return kExitResourceLimit;
    } catch (const ProtocolError &e) {
        err << "protocol error: " << e.what() << "\n";
        return kExitProtocolError;
    } catch (const std::invalid_argument &e) {
        err << "protocol error: " << e.what() << "\n";
        return kExitProtocolError;
    }

    if (options.trace_path) {
        std::ofstream trace(*options.trace_path, std::ios::binary);
        if (!trace) {
            err << "error: cannot write " << *options.trace_path << "\n";
            return kExitUsage;
        }
        for (const auto &line : result.trace) {
            trace << line << "\n";
        }
        out << result.trace.back() << "\n";
    } else {
        for (const auto &line : result.trace) {
            out << line << "\n";
        }
    }

    const auto &s = result.summary;
    if (s.holder && s.fidelity_min < 1 - kTolerance) {
        err << "secret not recovered: minimum fidelity " << s.fidelity_min << " over " << s.branches
            << " branches\n";
        return kExitInvariantFailure;
    }
    return kExitOk;
}

int qnetlab::cmd_verify(const VerifyOptions &options, std::ostream &out, std::ostream &err) {
    AcceptanceConfig config;
    if (options.inject_fault) {
        if (*options.inject_fault != "phi-sign") {
            err << "error: unknown fault '" << *options.inject_fault << "' (known: phi-sign)\n";
            return kExitUsage;
        }
        config.convention = BellConvention::PhiSignFlipped;
        out << "fault injected: Phi+ and Phi- swapped in the Bell basis\n";
    }

    size_t run = 0;
    size_t passed = 0;
    const Criterion *first_failure = nullptr;
    for (const auto &c : acceptance_criteria()) {
        if (!matches_filter(c, options.filter)) {
            continue;
        }
        auto r = run_criterion(c, config);
        out << format_result(r) << std::endl;
        run++;
        if (r.passed()) {
            passed++;
        } else if (!first_failure) {
            first_failure = &c;
        }
    }
    if (run == 0) {
        err << "error: no criterion matches '" << options.filter << "'\n";
        return kExitUsage;
    }
    out << passed << "/" << run << " criteria passed\n";
    if (first_failure) {
        out << "first failure: c" << (first_failure->id < 10 ? "0" : "") << first_failure->id << " "
            << first_failure->name << "\n";
        return kExitInvariantFailure;
    }
    return kExitOk;
}

int qnetlab::run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum secret sharing network simulator", "qnetlab"};
    app.require_subcommand(1);

    TablesOptions tables;
    auto *tables_cmd = app.add_subcommand("tables", "Print derived correction tables and the published-row diff");
    tables_cmd->add_option("--protocol", tables.protocol, "share, revoke, route, hop or all")->capture_default_str();
    tables_cmd->add_option("--branch", tables.branch, "phi+, phi-, psi+, psi- or all")->capture_default_str();
    tables_cmd->add_option("--format", tables.format, "text or json")->capture_default_str();

    RunOptions run;
    auto *run_cmd = app.add_subcommand("run", "Execute a scenario file and emit its trace");
    run_cmd->add_option("scenario", run.scenario_path, "Scenario JSON file")->required();
    run_cmd->add_option("--seed", run.seed, "Seed for the measurement sampler")->capture_default_str();
    run_cmd->add_option("--mode", run.mode, "exact or sampled")->capture_default_str();
    run_cmd->add_option("--trace", run.trace_path, "Write the trace here instead of standard output");

    VerifyOptions verify;
    auto *verify_cmd = app.add_subcommand("verify", "Run the acceptance checks");
    verify_cmd->add_option("--filter", verify.filter, "Tag, name substring or criterion number");
    verify_cmd->add_option("--inject-fault", verify.inject_fault, "Deliberately break the simulator (phi-sign)");

    try {
        app.parse(argc, argv);
        run.qubit_cap = env_qubit_cap();
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (tables_cmd->parsed()) {
        return cmd_tables(tables, out, err);
    }
    if (run_cmd->parsed()) {
        return cmd_run(run, out, err);
    }
    return cmd_verify(verify, out, err);
}
