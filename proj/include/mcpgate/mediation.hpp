/*
   Copyright 2026 The mcpgate Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mcpgate/gateway.hpp"

namespace mcpgate {

// One governed host function described by its argument-type combinations and
// the terminal branches that reach a side-effect site. The path list is the
// cross product, so adding a function or combo regenerates it.
struct HostFunction {
    std::string name;
    std::vector<std::string> arg_combos;  // signature label per combo
    std::vector<std::string> branches;    // terminal branch labels
};

struct PathId {
    std::string host_fn;
    int combo = 0;
    int branch = 0;
    std::string label;  // "<fn>/<combo-signature>/<branch>"
};

struct PathReport {
    PathId path;
    std::uint64_t counter = 0;  // governance increments observed for the path
};

struct MediationReport {
    std::vector<PathReport> paths;
    std::uint64_t total_increments = 0;
    bool pass = false;  // every counter == 1 and total == path count

    nlohmann::json to_json() const;
};

// The declared 15-function surface (12 base operations plus the three MCP
// functions). Deterministic; the enumeration below walks it in order.
std::vector<HostFunction> default_host_functions();

std::vector<PathId> enumerate_mediation_paths(const std::vector<HostFunction>& functions);

/// The synthetic input that drives one path: which host function to enter and
// the tool call it carries. Branch labels choose between a well-formed call,
// a schema-violating call, and an unknown-agent call.
struct SyntheticInput {
    std::string host_fn;
    ToolCallRequest call;
};

SyntheticInput synthetic_input_for(const PathId& path);

// Drives one path; the default driver enters the gateway exactly once via
// governance_entry. Tests substitute sabotaged drivers for the negative
/// controls (bypass: zero entries; double-check: two).
using PathDriver =
    std::function<void(Gateway& gateway, const PathId& path, const SyntheticInput& input,
                       std::uint64_t now_ms)>;

PathDriver default_path_driver();

// Runs every enumerated path against an instrumented gateway, attributing
// governance-counter deltas per path. now advances 1 s per drive so bucket
// refill never confounds the count.
MediationReport run_mediation_traversal(Gateway& gateway,
                                        const std::vector<HostFunction>& functions,
                                        const PathDriver& driver = default_path_driver(),
                                        std::uint64_t start_ms = 1000);

}  // namespace mcpgate
