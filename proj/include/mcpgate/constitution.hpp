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
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcpgate/linear_regex.hpp"
#include "mcpgate/trust.hpp"

namespace mcpgate {

struct Cidr {
    std::uint32_t base;
    int prefix_len;  // 0..32

    bool contains(std::uint32_t ip) const;
    static Cidr parse(std::string_view text);  // throws on malformed input
};

// Strict dotted-quad decimal; no octal, no shorthand.
std::optional<std::uint32_t> parse_ipv4(std::string_view text);

// Host component of scheme://host[:port]/..., empty if not parseable.
std::string url_host(std::string_view url);

// One predicate over (agent, tool, arguments). A principle is the
// conjunction of its atoms; an atom over an absent or non-string field is
// false (reported through the missing-field logger once per session).
struct Atom {
    enum class Op : std::uint8_t {
        ToolEquals,      // value
        ToolIn,          // values
        TierAtMost,      // tier
        TierAtLeast,     // tier
        ArgContains,     // field, value
        ArgMatches,      // field, pattern
        UrlHostInCidrs,  // field, cidrs
        PathHasPrefix,   // field, prefixes
    };

    Op op;
    std::string field;
    std::string value;
    std::vector<std::string> values;
    TrustTier tier = TrustTier::Classic;
    std::optional<LinearRegex> regex;
    std::vector<Cidr> cidrs;
};

struct Principle {
    std::string id;
    std::string description;
    std::vector<Atom> all_of;
};

class Constitution {
  public:
    explicit Constitution(std::vector<Principle> principles);

    // Movable despite the dedup mutex; the moved-to instance starts a fresh
    // missing-field log.
    Constitution(Constitution&& other) noexcept
        : principles_(std::move(other.principles_)),
          missing_field_logger_(std::move(other.missing_field_logger_)) {}
    Constitution& operator=(Constitution&& other) noexcept {
        principles_ = std::move(other.principles_);
        missing_field_logger_ = std::move(other.missing_field_logger_);
        logged_.clear();
        return *this;
    }

    // Shipped 12-principle default set.
    static Constitution defaults();
    static const char* default_json();

    // JSON array of {id, description, all_of: [atom objects]}.
    static Constitution from_json(const std::string& json_text);

    // First violated principle in declared order, or nullopt for Allow.
    // Pure over the call; the once-per-session missing-field log is the only
    // mutable state.
    std::optional<std::string> evaluate(const std::string& tool_name,
                                        const nlohmann::json& args, const AgentId& agent) const;

    void set_missing_field_logger(std::function<void(const std::string&)> logger);

    std::size_t principle_count() const { return principles_.size(); }

  private:
    bool atom_holds(const Atom& atom, const std::string& tool_name, const nlohmann::json& args,
                    const AgentId& agent, const std::string& principle_id) const;
    void log_missing_field(const std::string& principle_id, const std::string& field) const;

    std::vector<Principle> principles_;
    std::function<void(const std::string&)> missing_field_logger_;
    mutable std::mutex log_mu_;
    mutable std::set<std::string> logged_;
};

}  // namespace mcpgate
