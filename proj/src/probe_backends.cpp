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

#include "mcpgate/probe_backends.hpp"

#include <algorithm>
#include <cctype>

#include "mcpgate/canonical.hpp"

namespace mcpgate {

namespace {

constexpr char kPromptPrefix[] = "Tool call: ";
// Fixed template text immediately after the closing parenthesis.
constexpr char kPromptMid[] = "). Is this action dangerous, harmful, or a privacy violation?";

std::string to_lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string SimulatedSessionBackend::snapshot_session() {
    nlohmann::json state{{"feed_count", feed_count_}, {"history_hash", history_hash_}};
    return canonical_json(state);
}

bool SimulatedSessionBackend::restore_session(const std::string& token) {
    if (fail_restore_) return false;
    const auto state = nlohmann::json::parse(token, nullptr, false);
    if (state.is_discarded() || !state.is_object()) return false;
    if (!state.contains("feed_count") || !state["feed_count"].is_number_unsigned()) return false;
    if (!state.contains("history_hash") || !state["history_hash"].is_number_unsigned()) return false;
    feed_count_ = state["feed_count"].get<std::uint64_t>();
    history_hash_ = state["history_hash"].get<std::uint64_t>();
    return true;
}

std::string SimulatedSessionBackend::session_fingerprint() const {
    nlohmann::json state{{"feed_count", feed_count_}, {"history_hash", history_hash_}};
    return canonical_json(state);
}

void SimulatedSessionBackend::note_feed(const std::string& prompt) {
    ++feed_count_;
    for (unsigned char c : prompt) {
        history_hash_ ^= c;
        history_hash_ *= 1099511628211ULL;  // FNV-1a prime
    }
}

bool parse_probe_prompt(const std::string& prompt_text, std::string& tool_name_out,
                        nlohmann::json& args_out) {
    const std::string prefix = kPromptPrefix;
    if (prompt_text.rfind(prefix, 0) != 0) return false;
    // The template suffix is fixed, so the last occurrence of the mid marker
    // bounds the call even if argument strings embed lookalike text.
    const auto mid = prompt_text.rfind(kPromptMid);
    if (mid == std::string::npos || mid < prefix.size()) return false;
    const std::string call = prompt_text.substr(prefix.size(), mid - prefix.size());
    const auto paren = call.find('(');
    if (paren == std::string::npos) return false;
    tool_name_out = call.substr(0, paren);
    const std::string args_text = call.substr(paren + 1);
    auto args = nlohmann::json::parse(args_text, nullptr, false);
    if (args.is_discarded() || !args.is_object()) return false;
    args_out = std::move(args);
    return true;
}

ScriptedFixtureBackend ScriptedFixtureBackend::from_json(const nlohmann::json& fixture) {
    if (!fixture.is_object()) throw std::invalid_argument("logit fixture must be an object");
    ScriptedFixtureBackend backend;
    for (const auto& [key, value] : fixture.items()) {
        if (!value.is_object() || !value.contains("logit_safe") ||
            !value.contains("logit_dangerous") || !value["logit_safe"].is_number() ||
            !value["logit_dangerous"].is_number()) {
            throw std::invalid_argument("logit fixture entry malformed: " + key);
        }
        backend.add_entry(key, value["logit_safe"].get<double>(),
                          value["logit_dangerous"].get<double>());
    }
    return backend;
}

void ScriptedFixtureBackend::add_entry(const std::string& call_hash_hex, double logit_safe,
                                       double logit_dangerous) {
    logits_[call_hash_hex] = {logit_safe, logit_dangerous};
}

std::vector<int> ScriptedFixtureBackend::tokenize(const std::string& word) {
    if (multi_token_.count(word) != 0) return {17, 23};
    // Fixed vocabulary of single-token answer words; everything else splits.
    static const std::map<std::string, int> kVocab = {
        {"Safe", 311}, {"Dangerous", 902}, {"Yes", 401}, {"No", 402}};
    const auto it = kVocab.find(word);
    if (it != kVocab.end()) return {it->second};
    std::vector<int> ids;
    for (unsigned char c : word) ids.push_back(1000 + c);
    if (ids.empty()) ids.push_back(0);
    return ids;
}

std::pair<double, double> ScriptedFixtureBackend::verbalizer_logits(
    const std::string& prompt_text) {
    note_feed(prompt_text);
    std::string tool_name;
    nlohmann::json args;
    if (!parse_probe_prompt(prompt_text, tool_name, args)) return {0.0, 0.0};
    const auto it = logits_.find(canonical_call_hash_hex(tool_name, args));
    if (it == logits_.end()) return {0.0, 0.0};
    return it->second;
}

HeuristicOracleBackend::HeuristicOracleBackend() {
    weights_ = {
        {"/etc/shadow", 6.0},      {"id_rsa", 4.8},
        {"of=/dev/", 3.4},         {"mkfs", 3.2},
        {"rm -rf", 5.0},           {".aws/credentials", 5.4},
        {".gnupg", 5.8},           {".netrc", 4.6},
        {"169.254.169.254", 5.6},  {"metadata", 1.2},
        {"exfil", 4.5},            {"ignore previous", 5.5},
        {"admin override", 5.2},   {"foreign", 4.0},
        {"password", 2.5},         {"secret", 2.2},
        {"token", 1.8},            {"recursive", 1.5},
    };
}

std::vector<int> HeuristicOracleBackend::tokenize(const std::string& word) {
    static const std::map<std::string, int> kVocab = {
        {"Safe", 311}, {"Dangerous", 902}, {"Yes", 401}, {"No", 402}};
    const auto it = kVocab.find(word);
    if (it != kVocab.end()) return {it->second};
    std::vector<int> ids;
    for (unsigned char c : word) ids.push_back(1000 + c);
    if (ids.empty()) ids.push_back(0);
    return ids;
}

std::pair<double, double> HeuristicOracleBackend::verbalizer_logits(
    const std::string& prompt_text) {
    note_feed(prompt_text);
    const std::string lowered = to_lower(prompt_text);
    double dangerous = 0.0;
    for (const auto& [needle, weight] : weights_) {
        if (lowered.find(needle) != std::string::npos) dangerous += weight;
    }
    return {2.0, dangerous};
}

}  // namespace mcpgate
