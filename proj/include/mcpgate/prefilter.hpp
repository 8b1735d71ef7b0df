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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcpgate/linear_regex.hpp"

namespace mcpgate {

enum class RuleKind : std::uint8_t {
    LiteralCi,        // case-insensitive substring
    Regex,            // linear-time pattern
    Base64Heuristic,  // long base64 run whose decode contains a keyword
    Rot13Keyword,     // keyword visible after ROT13
};

struct PatternRule {
    std::string id;
    RuleKind kind;
    std::string pattern;  // unused for Base64Heuristic/Rot13Keyword (keyword lists are shared)
    std::string description;
};

struct PrefilterHit {
    std::string rule_id;
    std::size_t byte_offset;
    std::string matched_excerpt;  // <= 64 bytes
};

// Layer 4: one pass over the canonical args text per rule family, worst-case
// linear in input length. Verdict construction is the gateway's job; this
// module only reports the first hit.
class Prefilter {
  public:
    explicit Prefilter(std::vector<PatternRule> rules);

    // Shipped default rule set.
    static Prefilter defaults();

    // JSON array of {id, kind, pattern, description}.
    static Prefilter from_json(const std::string& json_text);
    std::string to_json_text() const;

    // First hit by lowest byte offset; ties broken by rule id order.
    std::optional<PrefilterHit> scan(std::string_view args_bytes) const;

    // Exposed for direct testing; part of scan().
    std::optional<PrefilterHit> rot13_scan(std::string_view args_bytes) const;

    std::size_t rule_count() const { return rules_.size(); }

    // Base64 runs at least this long are decode-checked.
    static constexpr std::size_t kBase64MinRun = 48;

  private:
    struct CompiledRule {
        PatternRule rule;
        std::optional<LinearRegex> regex;      // Regex kind
        std::string lowered;                   // LiteralCi kind
    };

    std::optional<PrefilterHit> base64_scan(std::string_view text,
                                            const std::string& rule_id) const;

    std::vector<CompiledRule> rules_;
    std::vector<std::string> keyword_list_;          // lowered LiteralCi patterns
    std::vector<std::string> decoded_keyword_list_;  // keywords checked inside base64 decodes
};

// Helpers shared with tests.
std::string rot13(std::string_view text);
std::optional<std::vector<std::uint8_t>> base64_decode(std::string_view text);

}  // namespace mcpgate
