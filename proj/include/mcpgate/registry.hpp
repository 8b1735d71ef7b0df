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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcpgate/trust.hpp"

namespace mcpgate {

struct ToolSpec {
    std::string name;  // unique within a registry
    nlohmann::json input_schema;
    TrustTier min_tier = TrustTier::Classic;
    // Bucket rate in millitokens per second; exact integer arithmetic
    // downstream depends on this quantization. 1 token = 1000 mtok.
    std::uint64_t rate_mtok_per_s = 1000;
    std::string description;
};

class ToolRegistry {
  public:
    // False if the name is already taken or the schema document is invalid;
    // the catalog is unchanged on rejection.
    bool register_tool(ToolSpec spec);

    const ToolSpec* find(const std::string& name) const;

    // Lexicographic by name.
    std::vector<ToolSpec> list_tools() const;

    std::size_t size() const { return tools_.size(); }

    // JSON array of {name, input_schema, min_tier, rate_per_second,
    // description}; throws on malformed entries or duplicates.
    static ToolRegistry from_json(const std::string& json_text);

    nlohmann::json to_json() const;

  private:
    std::map<std::string, ToolSpec> tools_;
};

// The twelve base host tools with their schemas, minimum tiers, and bucket
// rates. Fixture files are generated from this builder, so it is the single
// source of truth for the shipped surface.
ToolRegistry default_tool_registry();

}  // namespace mcpgate
