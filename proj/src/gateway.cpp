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

#include "mcpgate/gateway.hpp"

#include <algorithm>
#include <stdexcept>

#include "mcpgate/canonical.hpp"
#include "mcpgate/schema.hpp"

namespace mcpgate {

void GatewayConfig::validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
    if (!(0.0 < warn_threshold && warn_threshold < deny_threshold && deny_threshold < 1.0)) {
        throw std::invalid_argument("thresholds must satisfy 0 < warn < deny < 1");
    }
}

GatewayConfig GatewayConfig::from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
    GatewayConfig cfg;
    const auto number = [&doc](const char* key, double fallback) {
        if (!doc.contains(key)) return fallback;
        if (!doc[key].is_number()) throw std::invalid_argument(std::string(key) + " must be a number");
        return doc[key].get<double>();
    };
    cfg.alpha = number("alpha", cfg.alpha);
    cfg.deny_threshold = number("deny_threshold", cfg.deny_threshold);
    cfg.warn_threshold = number("warn_threshold", cfg.warn_threshold);
    if (doc.contains("layers")) {
        const auto& layers = doc["layers"];
        if (!layers.is_object()) throw std::invalid_argument("layers must be an object");
        const auto flag = [&layers](const char* key, bool fallback) {
            if (!layers.contains(key)) return fallback;
            if (!layers[key].is_boolean()) {
                throw std::invalid_argument(std::string("layers.") + key + " must be a boolean");
            }
            return layers[key].get<bool>();
        };
        cfg.enable_prefilter = flag("prefilter", cfg.enable_prefilter);
        cfg.enable_probe = flag("probe", cfg.enable_probe);
        cfg.enable_constitution = flag("constitution", cfg.enable_constitution);
    }
    const auto path = [&doc](const char* key) -> std::string {
        if (!doc.contains(key)) return "";
        if (!doc[key].is_string()) throw std::invalid_argument(std::string(key) + " must be a string");
        return doc[key].get<std::string>();
    };
    cfg.tools_path = path("tools");
    cfg.agents_path = path("agents");
    cfg.rules_path = path("rules");
    cfg.principles_path = path("principles");
    cfg.logit_fixture_path = path("logit_fixture");
    cfg.audit_sink_path = path("audit_sink");
    cfg.validate();
    return cfg;
}

nlohmann::json GatewayConfig::to_json() const {
    return nlohmann::json{
        {"alpha", alpha},
        {"deny_threshold", deny_threshold},
        {"warn_threshold", warn_threshold},
        {"layers",
         {{"prefilter", enable_prefilter},
          {"probe", enable_probe},
          {"constitution", enable_constitution}}},
        {"tools", tools_path},
        {"agents", agents_path},
        {"rules", rules_path},
        {"principles", principles_path},
        {"logit_fixture", logit_fixture_path},
        {"audit_sink", audit_sink_path},
    };
}

const std::array<std::string, 15>& Gateway::host_function_names() {
    static const std::array<std::string, 15> kNames = {
        "file_read",  "file_write",    "file_delete",   "file_list",
        "net_fetch",  "net_post",      "mem_alloc",     "mem_peek",
        "agent_spawn", "agent_message", "shell_exec",    "log_write",
        "mcp_list_tools", "mcp_call_tool", "mcp_tool_info",
    };
    return kNames;
}

Gateway::Gateway(ToolRegistry registry, AgentManifest agents, Prefilter prefilter,
                 Constitution constitution, GatewayConfig config,
                 std::shared_ptr<ProbeBackend> backend, const std::string& audit_sink_path)
    : registry_(std::move(registry)),
      agents_(std::move(agents)),
      prefilter_(std::move(prefilter)),
      constitution_(std::move(constitution)),
      config_(config),
      backend_(std::move(backend)),
      audit_(audit_sink_path) {
    config_.validate();
}

bool Gateway::start() {
    started_ = true;
    if (!config_.enable_probe) return true;
    if (!backend_) return false;
    const auto pair = token_fertility_check(default_verbalizer_candidates(), *backend_);
    if (!pair) return false;
    const auto cal = calibrate(*backend_, *pair, config_.alpha);
    if (!cal) return false;
    pair_ = *pair;
    cal_ = *cal;
    calibrated_ = true;
    return true;
}

void Gateway::bump_entered(int layer) {
    std::lock_guard<std::mutex> lock(stats_mutex_);
    ++stats_.entered[static_cast<std::size_t>(layer)];
}

Verdict Gateway::run_layers(const ToolCallRequest& call, std::uint64_t now_ms,
                            std::optional<ProbeResult>& probe_out, bool& teardown) {
    // Layer 1: schema.
    bump_entered(1);
    const ToolSpec* spec = registry_.find(call.tool_name);
    if (spec == nullptr) return Verdict::deny(1, "unknown-tool");
    if (const auto violation = validate_against_schema(call.args, spec->input_schema)) {
        return Verdict::deny(1, "schema-violation at " + violation->path + " (expected " +
                                    violation->expected + ", got " + violation->got + ")");
    }

    // Layer 2: trust tier.
    bump_entered(2);
    const auto agent = agents_.find(call.agent_id);
    if (!agent) return Verdict::deny(2, "unknown-agent");
    if (agent->tier < spec->min_tier) {
        return Verdict::deny(2, "tier-insufficient (" + std::string(to_string(agent->tier)) +
                                    " below " + std::string(to_string(spec->min_tier)) + ")");
    }

    // Layer 3: rate. Denies consume nothing.
    bump_entered(3);
    if (!limiter_.try_acquire(call.agent_id, call.tool_name, spec->rate_mtok_per_s, now_ms)) {
        return Verdict::deny(3, "rate-limit-exceeded");
    }

    // Layer 4: injection prefilter over the canonical argument text.
    if (config_.enable_prefilter) {
        bump_entered(4);
        if (const auto hit = prefilter_.scan(canonical_json(call.args))) {
            return Verdict::deny(4, "prefilter:" + hit->rule_id);
        }
    }

    // Layer 5: semantic probe, serialized FIFO, fail closed.
    bool warn = false;
    if (config_.enable_probe) {
        bump_entered(5);
        std::uint64_t ticket;
        {
            std::unique_lock<std::mutex> lock(probe_mutex_);
            ticket = ticket_next_++;
            probe_cv_.wait(lock, [&] { return ticket_serving_ == ticket; });
        }
        Verdict layer5_verdict = Verdict::allow();
        bool deny5 = false;
        if (!calibrated_ || !backend_ || !backend_->ready()) {
            layer5_verdict = Verdict::deny(5, "engine-unavailable");
            deny5 = true;
        } else {
            const auto out = probe(call.tool_name, call.args, cal_, pair_, *backend_);
            if (std::holds_alternative<ProbeError>(out)) {
                if (std::get<ProbeError>(out) == ProbeError::SessionCompromised) {
                    teardown = true;
                    layer5_verdict = Verdict::deny(5, "session-compromised");
                } else {
                    layer5_verdict = Verdict::deny(5, "engine-unavailable");
                }
                deny5 = true;
            } else {
                const auto& r = std::get<ProbeResult>(out);
                probe_out = r;
                if (r.ans && r.p > config_.deny_threshold) {
                    layer5_verdict = Verdict::deny(5, "semantic-deny");
                    deny5 = true;
                } else if (r.ans && r.p > config_.warn_threshold) {
                    warn = true;
                }
            }
        }
        {
            std::lock_guard<std::mutex> lock(probe_mutex_);
            ++ticket_serving_;
        }
        probe_cv_.notify_all();
        if (deny5) return layer5_verdict;
    }

    // Layer 6: constitutional principles.
    if (config_.enable_constitution) {
        bump_entered(6);
        if (const auto violated = constitution_.evaluate(call.tool_name, call.args, *agent)) {
            return Verdict::deny(6, "principle:" + *violated);
        }
    }

    return warn ? Verdict::allow_warn("semantic-warn") : Verdict::allow();
}

CheckOutcome Gateway::check(const ToolCallRequest& call, std::uint64_t now_ms) {
    governance_count_.fetch_add(1);

    CheckOutcome outcome;
    outcome.verdict = run_layers(call, now_ms, outcome.probe, outcome.session_teardown);

    const auto verdict = outcome.verdict.decision == Decision::Deny
                             ? AuditVerdict::Deny
                             : (outcome.verdict.warn ? AuditVerdict::Warn : AuditVerdict::Allow);
    audit_.append(now_ms * 1'000'000ULL, call.agent_id, call.tool_name,
                  canonical_args_hash(call.args),
                  static_cast<std::uint8_t>(outcome.verdict.deciding_layer), verdict);

    {
        std::lock_guard<std::mutex> lock(stats_mutex_);
        ++stats_.checks;
        if (outcome.verdict.decision == Decision::Deny) {
            ++stats_.denied[static_cast<std::size_t>(outcome.verdict.deciding_layer)];
        } else {
            ++stats_.allows;
            if (outcome.verdict.warn) ++stats_.warns;
        }
    }
    return outcome;
}

std::optional<CheckOutcome> Gateway::governance_entry(const std::string& host_fn,
                                                      const ToolCallRequest& call,
                                                      std::uint64_t now_ms) {
    const auto& names = host_function_names();
    if (std::find(names.begin(), names.end(), host_fn) == names.end()) return std::nullopt;
    // mcp_call_tool carries an inner tool call; for every other host
    // function the call names the function itself.
    return check(call, now_ms);
}

LayerStats Gateway::stats_snapshot() const {
    std::lock_guard<std::mutex> lock(stats_mutex_);
    return stats_;
}

}  // namespace mcpgate
