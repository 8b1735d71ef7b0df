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
#include <optional>
#include <string>
#include <string_view>

namespace mcpgate {

// Ordered privilege classes; comparisons are the only operation.
enum class TrustTier : std::uint8_t {
    Classic = 0,
    AiEnhanced = 1,
    AiNative = 2,
    System = 3,
};

std::string_view to_string(TrustTier tier);
std::optional<TrustTier> tier_from_string(std::string_view name);

struct AgentId {
    std::string id;  // nonempty
    TrustTier tier = TrustTier::Classic;  // fixed for the session
};

// Static agent manifest: JSON map agent_id -> tier name.
class AgentManifest {
  public:
    static AgentManifest from_json(const std::string& json_text);

    std::optional<AgentId> find(const std::string& id) const;
    std::size_t size() const { return agents_.size(); }
    void add(const AgentId& agent) { agents_[agent.id] = agent.tier; }

    std::string to_json_text() const;

  private:
    std::map<std::string, TrustTier> agents_;
};

// The shipped agent population, one per tier plus working aliases; fixture
// files are generated from this builder.
AgentManifest default_agent_manifest();

}  // namespace mcpgate
