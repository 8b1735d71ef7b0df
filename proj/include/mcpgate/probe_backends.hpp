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
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mcpgate/probe.hpp"

namespace mcpgate {

// Shared simulated-session mechanics: a tiny mutable state that drifts on
// every logit read, so snapshot/restore discipline is observable. Subclasses
// compute logits; this class owns drift, snapshots, and failure injection.
class SimulatedSessionBackend : public ProbeBackend {
  public:
    bool ready() override { return ready_; }
    std::string snapshot_session() override;
    bool restore_session(const std::string& token) override;

    void set_ready(bool ready) { ready_ = ready; }
    void set_fail_restore(bool fail) { fail_restore_ = fail; }

    // Serialized session state, for purity assertions from tests.
    std::string session_fingerprint() const;

  protected:
    // Every logit read must call this: it is the drift.
    void note_feed(const std::string& prompt);

  private:
    bool ready_ = true;
    bool fail_restore_ = false;
    std::uint64_t feed_count_ = 0;
    std::uint64_t history_hash_ = 1469598103934665603ULL;  // FNV-1a offset basis
};

// Replays logits from a fixture: hex(Blake3(canonical call)) -> pair.
// Unknown calls yield (0, 0). The canonical call is recovered from the
// rendered prompt, so the backend sees exactly what a real engine would.
class ScriptedFixtureBackend : public SimulatedSessionBackend {
  public:
    ScriptedFixtureBackend() = default;
    static ScriptedFixtureBackend from_json(const nlohmann::json& fixture);

    void add_entry(const std::string& call_hash_hex, double logit_safe, double logit_dangerous);
    // Marks a word as multi-token, for fertility fallback tests.
    void force_multi_token(const std::string& word) { multi_token_.insert(word); }

    std::vector<int> tokenize(const std::string& word) override;
    std::pair<double, double> verbalizer_logits(const std::string& prompt_text) override;

    std::size_t entry_count() const { return logits_.size(); }

  private:
    std::map<std::string, std::pair<double, double>> logits_;
    std::set<std::string> multi_token_;
};

// Deterministic keyword-weighted scorer: logit_dangerous is the sum of
// weights for substrings present in the lowered prompt, logit_safe is a
// fixed floor. A stand-in engine for development and the mediation harness.
class HeuristicOracleBackend : public SimulatedSessionBackend {
  public:
    HeuristicOracleBackend();

    std::vector<int> tokenize(const std::string& word) override;
    std::pair<double, double> verbalizer_logits(const std::string& prompt_text) override;

  private:
    std::vector<std::pair<std::string, double>> weights_;
};

// Recovers (tool_name, canonical args) from a rendered probe prompt.
// Returns false when the text does not follow the template.
bool parse_probe_prompt(const std::string& prompt_text, std::string& tool_name_out,
                        nlohmann::json& args_out);

}  // namespace mcpgate
