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
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace mcpgate {

struct VerbalizerPair {
    std::string safe_word;
    std::string dangerous_word;
    int safe_token_id = -1;
    int dangerous_token_id = -1;
};

struct CalibrationState {
    double bias = 0.0;   // mean raw score over the null prompts
    double alpha = 0.9;  // deployment-time policy knob, > 0
    int null_prompt_count = 7;
    std::uint64_t measured_at_ns = 0;
};

struct ProbeResult {
    double logit_safe = 0.0;
    double logit_dangerous = 0.0;
    double s_raw = 0.0;  // logit_dangerous - logit_safe
    double s = 0.0;      // alpha * (s_raw - bias)
    double p = 0.0;      // 1 / (1 + exp(-s))
    bool ans = false;    // s > 0, strict
};

enum class ProbeError : std::uint8_t {
    EngineUnavailable,   // backend not ready: caller maps to FAIL-CLOSED Deny
    SessionCompromised,  // restore failed: caller tears the session down
};

// Substrate contract. One probe in flight per backend at a time; the
// gateway's FIFO lock enforces that.
class ProbeBackend {
  public:
    virtual ~ProbeBackend() = default;

    virtual bool ready() = 0;
    virtual std::vector<int> tokenize(const std::string& word) = 0;
    // (logit_safe, logit_dangerous) at the verbalizer position.
    virtual std::pair<double, double> verbalizer_logits(const std::string& prompt_text) = 0;
    virtual std::string snapshot_session() = 0;
    virtual bool restore_session(const std::string& token) = 0;
    // Some backends need the active pair on the wire; default is stateless.
    virtual void set_verbalizer(const VerbalizerPair&) {}
};

// Candidate answer words in preference order.
std::vector<std::pair<std::string, std::string>> default_verbalizer_candidates();

// First candidate whose both words are single-token under the backend's
// tokenizer; nullopt means the gateway must not start. Installs the selected
// pair on the backend.
std::optional<VerbalizerPair> token_fertility_check(
    const std::vector<std::pair<std::string, std::string>>& candidates, ProbeBackend& backend);

std::string render_probe_prompt(const std::string& tool_name, const nlohmann::json& args,
                                const VerbalizerPair& pair);

// The empty tool call plus six fixed innocuous fillers: (name, args) pairs
// rendered through the same template as real probes.
const std::array<std::pair<std::string, nlohmann::json>, 7>& null_prompt_calls();

// bias = mean s_raw over the null prompts; nullopt when the backend is not
// ready (startup abort).
std::optional<CalibrationState> calibrate(ProbeBackend& backend, const VerbalizerPair& pair,
                                          double alpha);

// snapshot -> read logits -> restore, then the score pipeline.
std::variant<ProbeResult, ProbeError> probe(const std::string& tool_name,
                                            const nlohmann::json& args,
                                            const CalibrationState& cal,
                                            const VerbalizerPair& pair, ProbeBackend& backend);

// Score pipeline alone, for synthetic-result property tests.
ProbeResult score_from_logits(double logit_safe, double logit_dangerous,
                              const CalibrationState& cal);

}  // namespace mcpgate
