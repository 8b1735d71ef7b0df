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

#include "mcpgate/trust.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mcpgate {

std::string_view to_string(TrustTier tier) {
    switch (tier) {
        case TrustTier::Classic: return "Classic";
        case TrustTier::AiEnhanced: return "AiEnhanced";
        case TrustTier::AiNative: return "AiNative";
        case TrustTier::System: return "System";
    }
    return "Classic";
}

std::optional<TrustTier> tier_from_string(std::string_view name) {
    if (name == "Classic") return TrustTier::Classic;
    if (name == "AiEnhanced") return TrustTier::AiEnhanced;
    if (name == "AiNative") return TrustTier::AiNative;
    if (name == "System") return TrustTier::System;
    return std::nullopt;
}

AgentManifest AgentManifest::from_json(const std::string& json_text) {
    auto doc = nlohmann::json::parse(json_text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw std::runtime_error("agent manifest: expected a JSON object of id -> tier");
    }
    AgentManifest manifest;
    for (const auto& [id, tier_name] : doc.items()) {
        if (id.empty()) throw std::runtime_error("agent manifest: empty agent id");
        if (!tier_name.is_string()) {
            throw std::runtime_error("agent manifest: tier for '" + id + "' must be a string");
        }
        auto tier = tier_from_string(tier_name.get_ref<const std::string&>());
        if (!tier) {
            throw std::runtime_error("agent manifest: unknown tier '" +
                                     tier_name.get<std::string>() + "' for '" + id + "'");
        }
        manifest.agents_[id] = *tier;
    }
    return manifest;
}

std::optional<AgentId> AgentManifest::find(const std::string& id) const {
    auto it = agents_.find(id);
    if (it == agents_.end()) return std::nullopt;
    return AgentId{it->first, it->second};
}

std::string AgentManifest::to_json_text() const {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [id, tier] : agents_) doc[id] = std::string(to_string(tier));
    return doc.dump();
}

AgentManifest default_agent_manifest() {
    AgentManifest manifest;
    manifest.add({"orchestrator", TrustTier::System});
    manifest.add({"research-asst", TrustTier::AiNative});
    manifest.add({"admin-helper", TrustTier::AiNative});
    manifest.add({"file-helper", TrustTier::AiEnhanced});
    manifest.add({"web-agent", TrustTier::AiEnhanced});
    manifest.add({"billing-bot", TrustTier::AiEnhanced});
    manifest.add({"legacy-script", TrustTier::Classic});
    return manifest;
}

}  // namespace mcpgate
