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

#include "mcpgate/prefilter.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mcpgate {

namespace {

std::string to_lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_base64_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '+' || c == '/' || c == '=';
}

int base64_value(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
}

std::string_view excerpt(std::string_view text, std::size_t offset, std::size_t span) {
    span = std::min<std::size_t>(span, 64);
    span = std::min(span, text.size() - offset);
    return text.substr(offset, span);
}

RuleKind kind_from_string(const std::string& name) {
    if (name == "literal-ci") return RuleKind::LiteralCi;
    if (name == "regex") return RuleKind::Regex;
    if (name == "base64-heuristic") return RuleKind::Base64Heuristic;
    if (name == "rot13-keyword") return RuleKind::Rot13Keyword;
    throw std::runtime_error("prefilter rules: unknown kind '" + name + "'");
}

std::string_view kind_to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::LiteralCi: return "literal-ci";
        case RuleKind::Regex: return "regex";
        case RuleKind::Base64Heuristic: return "base64-heuristic";
        case RuleKind::Rot13Keyword: return "rot13-keyword";
    }
    return "literal-ci";
}

}  // namespace

std::string rot13(std::string_view text) {
    std::string out(text);
    for (auto& c : out) {
        if (c >= 'a' && c <= 'z') {
            c = static_cast<char>('a' + (c - 'a' + 13) % 26);
        } else if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>('A' + (c - 'A' + 13) % 26);
        }
    }
    return out;
}

std::optional<std::vector<std::uint8_t>> base64_decode(std::string_view text) {
    if (text.empty() || text.size() % 4 != 0) return std::nullopt;
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        int pad = 0;
        std::array<int, 4> v{};
        for (std::size_t j = 0; j < 4; ++j) {
            char c = text[i + j];
            if (c == '=') {
                // Padding is legal only in the last two slots of the final quad.
                if (i + 4 != text.size() || j < 2) return std::nullopt;
                ++pad;
                v[j] = 0;
            } else {
                if (pad > 0) return std::nullopt;  // data after padding
                v[j] = base64_value(c);
                if (v[j] < 0) return std::nullopt;
            }
        }
        std::uint32_t triple = (static_cast<std::uint32_t>(v[0]) << 18) |
                               (static_cast<std::uint32_t>(v[1]) << 12) |
                               (static_cast<std::uint32_t>(v[2]) << 6) |
                               static_cast<std::uint32_t>(v[3]);
        out.push_back(static_cast<std::uint8_t>(triple >> 16));
        if (pad < 2) out.push_back(static_cast<std::uint8_t>(triple >> 8));
        if (pad < 1) out.push_back(static_cast<std::uint8_t>(triple));
    }
    return out;
}

Prefilter::Prefilter(std::vector<PatternRule> rules) {
    for (auto& rule : rules) {
        CompiledRule compiled;
        compiled.rule = rule;
        switch (rule.kind) {
            case RuleKind::LiteralCi:
                compiled.lowered = to_lower(rule.pattern);
                keyword_list_.push_back(compiled.lowered);
                break;
            case RuleKind::Regex:
                compiled.regex = LinearRegex::compile(rule.pattern);
                break;
            case RuleKind::Base64Heuristic:
            case RuleKind::Rot13Keyword: break;  // operate on the shared keyword list
        }
        rules_.push_back(std::move(compiled));
    }
    // Decoded payloads are checked against the injection keywords plus
    // shell-destruction strings that only appear in encoded smuggling.
    decoded_keyword_list_ = keyword_list_;
    decoded_keyword_list_.push_back("rm -rf");
}

Prefilter Prefilter::defaults() {
    // The embedded instruction-hierarchy rule matches the JSON string escape
    // of a newline (backslash + 'n'), because scans run over the canonical
    // args text where control bytes are escaped.
    return Prefilter(std::vector<PatternRule>{
        {"injection-001", RuleKind::LiteralCi, "ignore previous instructions",
         "classic instruction-override phrase"},
        {"injection-002", RuleKind::LiteralCi, "disregard all prior",
         "instruction-override variant"},
        {"injection-003", RuleKind::LiteralCi, "you are now DAN", "persona-jailbreak phrase"},
        {"authority-001", RuleKind::LiteralCi, "ADMIN OVERRIDE", "authority-impersonation phrase"},
        {"hierarchy-001", RuleKind::Regex, "(?i)^system\\s*:",
         "instruction-hierarchy marker at text start"},
        {"hierarchy-002", RuleKind::Regex, "(?i)\\\\nsystem\\s*:",
         "instruction-hierarchy marker after an escaped newline"},
        {"encoding-001", RuleKind::Base64Heuristic, "",
         "long base64 run decoding to a keyword payload"},
        {"encoding-002", RuleKind::Rot13Keyword, "", "keyword visible after ROT13"},
    });
}

std::string Prefilter::to_json_text() const {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& compiled : rules_) {
        doc.push_back({{"id", compiled.rule.id},
                       {"kind", std::string(kind_to_string(compiled.rule.kind))},
                       {"pattern", compiled.rule.pattern},
                       {"description", compiled.rule.description}});
    }
    return doc.dump(2);
}

Prefilter Prefilter::from_json(const std::string& json_text) {
    auto doc = nlohmann::json::parse(json_text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_array()) {
        throw std::runtime_error("prefilter rules: expected a JSON array");
    }
    std::vector<PatternRule> rules;
    for (const auto& entry : doc) {
        if (!entry.is_object() || !entry.contains("id") || !entry.contains("kind")) {
            throw std::runtime_error("prefilter rules: entry missing id/kind");
        }
        PatternRule rule;
        rule.id = entry["id"].get<std::string>();
        rule.kind = kind_from_string(entry["kind"].get<std::string>());
        rule.pattern = entry.value("pattern", std::string());
        rule.description = entry.value("description", std::string());
        rules.push_back(std::move(rule));
    }
    return Prefilter(std::move(rules));
}

std::optional<PrefilterHit> Prefilter::base64_scan(std::string_view text,
                                                   const std::string& rule_id) const {
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_base64_char(text[i])) {
            ++i;
            continue;
        }
        std::size_t run_start = i;
        while (i < text.size() && is_base64_char(text[i])) ++i;
        std::size_t run_len = i - run_start;
        if (run_len < kBase64MinRun) continue;
        // A run may continue past the encoder's output into neighboring
        // alphabet bytes; decoding the longest quad-aligned prefix keeps the
        // check sound for canonical encoder output.
        std::size_t usable = run_len - run_len % 4;
        auto decoded = base64_decode(text.substr(run_start, usable));
        if (!decoded) continue;
        std::string lowered(decoded->begin(), decoded->end());
        lowered = to_lower(lowered);
        for (const auto& keyword : decoded_keyword_list_) {
            if (lowered.find(keyword) != std::string::npos) {
                return PrefilterHit{rule_id, run_start,
                                    std::string(excerpt(text, run_start, run_len))};
            }
        }
    }
    return std::nullopt;
}

std::optional<PrefilterHit> Prefilter::rot13_scan(std::string_view args_bytes) const {
    const std::string* rule_id = nullptr;
    for (const auto& compiled : rules_) {
        if (compiled.rule.kind == RuleKind::Rot13Keyword) {
            rule_id = &compiled.rule.id;
            break;
        }
    }
    if (rule_id == nullptr) return std::nullopt;

    std::string transformed = to_lower(rot13(args_bytes));
    std::optional<PrefilterHit> best;
    for (const auto& keyword : keyword_list_) {
        auto pos = transformed.find(keyword);
        if (pos == std::string::npos) continue;
        if (!best || pos < best->byte_offset) {
            best = PrefilterHit{*rule_id, pos,
                                std::string(excerpt(args_bytes, pos, keyword.size()))};
        }
    }
    return best;
}

std::optional<PrefilterHit> Prefilter::scan(std::string_view args_bytes) const {
    std::optional<PrefilterHit> best;
    auto consider = [&best](std::optional<PrefilterHit> hit) {
        // Rules are iterated in declared order, so a strict offset
        // improvement is the only reason to displace an earlier hit.
        if (hit && (!best || hit->byte_offset < best->byte_offset)) best = std::move(hit);
    };

    std::string lowered = to_lower(args_bytes);
    for (const auto& compiled : rules_) {
        switch (compiled.rule.kind) {
            case RuleKind::LiteralCi: {
                auto pos = lowered.find(compiled.lowered);
                if (pos != std::string::npos) {
                    consider(PrefilterHit{
                        compiled.rule.id, pos,
                        std::string(excerpt(args_bytes, pos, compiled.lowered.size()))});
                }
                break;
            }
            case RuleKind::Regex: {
                if (auto m = compiled.regex->search(args_bytes)) {
                    consider(PrefilterHit{
                        compiled.rule.id, m->begin,
                        std::string(excerpt(args_bytes, m->begin, m->end - m->begin))});
                }
                break;
            }
            case RuleKind::Base64Heuristic:
                consider(base64_scan(args_bytes, compiled.rule.id));
                break;
            case RuleKind::Rot13Keyword: consider(rot13_scan(args_bytes)); break;
        }
    }
    return best;
}

}  // namespace mcpgate
