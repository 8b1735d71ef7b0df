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

#include <array>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "mcpgate/audit.hpp"
#include "mcpgate/constitution.hpp"
#include "mcpgate/prefilter.hpp"
#include "mcpgate/probe.hpp"
#include "mcpgate/rate_limit.hpp"
#include "mcpgate/registry.hpp"
#include "mcpgate/trust.hpp"
#include "mcpgate/verdict.hpp"

namespace mcpgate {

struct ToolCallRequest {
    std::string tool_name;
    nlohmann::json args = nlohmann::json::object();
    std::string agent_id;  // resolved against the manifest at layer 2
    std::size_t raw_bytes_len = 0;
};

struct GatewayConfig {
    double alpha = 0.9;
    double deny_threshold = 0.90;
    double warn_threshold = 0.70;
    bool enable_prefilter = true;     // layer 4
    bool enable_probe = true;         // layer 5
    bool enable_constitution = true;  // layer 6
    // Startup file paths; the gateway itself receives constructed objects,
    // these travel with the config for the CLI loader and report snapshots.
    std::string tools_path;
    std::string agents_path;
    std::string rules_path;
    std::string principles_path;
    std::string logit_fixture_path;
    std::string audit_sink_path;

    // Throws std::invalid_argument unless alpha > 0 and
    // 0 < warn_threshold < deny_threshold < 1.
    void validate() const;
    static GatewayConfig from_json(const nlohmann::json& doc);
    nlohmann::json to_json() const;
};

// Per-layer observability. Index 1..6; slot 0 is unused padding so indices
// read as layer numbers. entered[k] counts only actual evaluations, which is
// what makes short-circuiting observable.
struct LayerStats {
    std::array<std::uint64_t, 7> entered{};
    std::array<std::uint64_t, 7> denied{};
    std::uint64_t checks = 0;
    std::uint64_t allows = 0;
    std::uint64_t warns = 0;
};

struct CheckOutcome {
    Verdict verdict;
    std::optional<ProbeResult> probe;  // present when layer 5 scored the call
    bool session_teardown = false;     // probe session restore failed
};

// The six-layer pipeline behind the single mediated entry. Layer order is
// fixed; a deny at layer k is final and layers > k never run. Every check
// appends exactly one audit record and bumps the governance counter exactly
// once, success or deny.
class Gateway {
  public:
    Gateway(ToolRegistry registry, AgentManifest agents, Prefilter prefilter,
            Constitution constitution, GatewayConfig config,
            std::shared_ptr<ProbeBackend> backend, const std::string& audit_sink_path = "");

    // Token fertility check plus calibration. Returns false when the
    // substrate is unusable; the gateway then stays in the fail-closed
    // startup state where every check denies at layer 5. With layer 5
    // disabled no substrate is needed and start always succeeds.
    bool start();
    bool started() const { return started_; }
    bool probe_live() const { return calibrated_ && backend_ && backend_->ready(); }

    CheckOutcome check(const ToolCallRequest& call, std::uint64_t now_ms);

    // The only public path to check for host-function traffic. Unregistered
    // ids are refused outright: nullopt, no counter, no audit record.
    std::optional<CheckOutcome> governance_entry(const std::string& host_fn,
                                                 const ToolCallRequest& call,
                                                 std::uint64_t now_ms);

    std::uint64_t governance_count() const { return governance_count_.load(); }
    LayerStats stats_snapshot() const;

    AuditChain& audit() { return audit_; }
    const ToolRegistry& registry() const { return registry_; }
    const AgentManifest& agents() const { return agents_; }
    const GatewayConfig& config() const { return config_; }
    const CalibrationState& calibration() const { return cal_; }
    ProbeBackend* backend() { return backend_.get(); }

    // The fifteen governed host functions: twelve base operations plus the
    // three MCP surface functions.
    static const std::array<std::string, 15>& host_function_names();

  private:
    Verdict run_layers(const ToolCallRequest& call, std::uint64_t now_ms,
                       std::optional<ProbeResult>& probe_out, bool& teardown);
    void bump_entered(int layer);

    ToolRegistry registry_;
    AgentManifest agents_;
    Prefilter prefilter_;
    Constitution constitution_;
    GatewayConfig config_;
    std::shared_ptr<ProbeBackend> backend_;
    RateLimiter limiter_;
    AuditChain audit_;

    VerbalizerPair pair_;
    CalibrationState cal_;
    bool started_ = false;
    bool calibrated_ = false;

    std::atomic<std::uint64_t> governance_count_{0};

    mutable std::mutex stats_mutex_;
    LayerStats stats_;

    // Ticket lock: probes are served strictly in arrival order.
    std::mutex probe_mutex_;
    std::condition_variable probe_cv_;
    std::uint64_t ticket_next_ = 0;
    std::uint64_t ticket_serving_ = 0;
};

}  // namespace mcpgate
