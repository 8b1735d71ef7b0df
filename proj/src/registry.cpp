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

#include "mcpgate/registry.hpp"

#include <cmath>
#include <stdexcept>

#include "mcpgate/schema.hpp"

namespace mcpgate {

bool ToolRegistry::register_tool(ToolSpec spec) {
    if (spec.name.empty()) return false;
    if (tools_.contains(spec.name)) return false;
    if (validate_schema_document(spec.input_schema)) return false;
    if (spec.rate_mtok_per_s == 0) return false;
    tools_.emplace(spec.name, std::move(spec));
    return true;
}

const ToolSpec* ToolRegistry::find(const std::string& name) const {
    auto it = tools_.find(name);
    return it == tools_.end() ? nullptr : &it->second;
}

std::vector<ToolSpec> ToolRegistry::list_tools() const {
    std::vector<ToolSpec> out;
    out.reserve(tools_.size());
    for (const auto& [name, spec] : tools_) out.push_back(spec);  // map order is lexicographic
    return out;
}

ToolRegistry ToolRegistry::from_json(const std::string& json_text) {
    auto doc = nlohmann::json::parse(json_text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_array()) {
        throw std::runtime_error("tool registry: expected a JSON array of tool specs");
    }
    ToolRegistry registry;
    for (const auto& entry : doc) {
        if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string()) {
            throw std::runtime_error("tool registry: entry missing string 'name'");
        }
        ToolSpec spec;
        spec.name = entry["name"].get<std::string>();
        spec.input_schema = entry.value("input_schema", nlohmann::json::object());
        if (auto v = validate_schema_document(spec.input_schema)) {
            throw std::runtime_error("tool registry: '" + spec.name + "' schema invalid at " +
                                     v->path + " (expected " + v->expected + ", got " + v->got +
                                     ")");
        }
        auto tier_name = entry.value("min_tier", std::string("Classic"));
        auto tier = tier_from_string(tier_name);
        if (!tier) {
            throw std::runtime_error("tool registry: '" + spec.name + "' has unknown tier '" +
                                     tier_name + "'");
        }
        spec.min_tier = *tier;
        double rate = entry.value("rate_per_second", 1.0);
        if (!(rate > 0.0)) {
            throw std::runtime_error("tool registry: '" + spec.name + "' rate must be positive");
        }
        spec.rate_mtok_per_s = static_cast<std::uint64_t>(std::llround(rate * 1000.0));
        if (spec.rate_mtok_per_s == 0) {
            throw std::runtime_error("tool registry: '" + spec.name +
                                     "' rate below 1 millitoken/s resolution");
        }
        spec.description = entry.value("description", std::string());
        if (!registry.register_tool(std::move(spec))) {
            throw std::runtime_error("tool registry: duplicate tool '" +
                                     entry["name"].get<std::string>() + "'");
        }
    }
    return registry;
}

nlohmann::json ToolRegistry::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& spec : list_tools()) {
        out.push_back({{"name", spec.name},
                       {"input_schema", spec.input_schema},
                       {"min_tier", to_string(spec.min_tier)},
                       {"rate_per_second", static_cast<double>(spec.rate_mtok_per_s) / 1000.0},
                       {"description", spec.description}});
    }
    return out;
}

namespace {

nlohmann::json string_prop() { return {{"type", "string"}}; }

ToolSpec make_spec(std::string name, nlohmann::json schema, TrustTier tier, double rate,
                   std::string description) {
    ToolSpec spec;
    spec.name = std::move(name);
    spec.input_schema = std::move(schema);
    spec.min_tier = tier;
    spec.rate_mtok_per_s = static_cast<std::uint64_t>(std::llround(rate * 1000.0));
    spec.description = std::move(description);
    return spec;
}

}  // namespace

ToolRegistry default_tool_registry() {
    ToolRegistry reg;
    bool ok = true;

    ok &= reg.register_tool(make_spec(
        "file_read",
        {{"type", "object"},
         {"properties",
          {{"path", string_prop()},
           {"mode", {{"type", "string"}, {"enum", {"read", "stat"}}}},
           {"offset", {{"type", "integer"}, {"minimum", 0}}}}},
         {"required", {"path"}}},
        TrustTier::Classic, 20.0, "Read a file or its metadata"));

    ok &= reg.register_tool(make_spec(
        "file_write",
        {{"type", "object"},
         {"properties",
          {{"path", string_prop()},
           {"content", string_prop()},
           {"mode", {{"type", "string"}, {"enum", {"create", "append", "overwrite"}}}},
           {"create_dirs", {{"type", "boolean"}}}}},
         {"required", {"path", "content"}}},
        TrustTier::AiEnhanced, 20.0, "Write file content"));

    ok &= reg.register_tool(make_spec(
        "file_delete",
        {{"type", "object"},
         {"properties",
          {{"path", string_prop()},
           {"mode", {{"type", "string"}, {"enum", {"single", "recursive"}}}}}},
         {"required", {"path"}}},
        TrustTier::AiEnhanced, 20.0, "Delete a file or tree"));

    ok &= reg.register_tool(make_spec(
        "file_list",
        {{"type", "object"},
         {"properties", {{"path", string_prop()}, {"glob", string_prop()}}},
         {"required", {"path"}}},
        TrustTier::Classic, 20.0, "List directory entries"));

    ok &= reg.register_tool(make_spec(
        "net_fetch",
        {{"type", "object"},
         {"properties",
          {{"url", string_prop()},
           {"method", {{"type", "string"}, {"enum", {"GET", "HEAD"}}}},
           {"headers", string_prop()}}},
         {"required", {"url"}}},
        TrustTier::Classic, 10.0, "HTTP read"));

    ok &= reg.register_tool(make_spec(
        "net_post",
        {{"type", "object"},
         {"properties",
          {{"url", string_prop()},
           {"body", string_prop()},
           {"content_type", string_prop()},
           {"headers", string_prop()},
           {"timeout_ms", {{"type", "integer"}, {"minimum", 1}, {"maximum", 120000}}}}},
         {"required", {"url", "body"}}},
        TrustTier::Classic, 5.0, "HTTP write"));

    ok &= reg.register_tool(make_spec(
        "mem_alloc",
        {{"type", "object"},
         {"properties",
          {{"bytes", {{"type", "integer"}, {"minimum", 1}}}, {"zeroed", {{"type", "boolean"}}}}},
         {"required", {"bytes"}}},
        TrustTier::Classic, 20.0, "Allocate scratch memory"));

    ok &= reg.register_tool(make_spec(
        "mem_peek",
        {{"type", "object"},
         {"properties", {{"addr", string_prop()}, {"scope", string_prop()}}},
         {"required", {"addr"}}},
        TrustTier::AiEnhanced, 20.0, "Inspect a memory region"));

    ok &= reg.register_tool(make_spec(
        "agent_spawn",
        {{"type", "object"},
         {"properties",
          {{"profile", string_prop()},
           {"tier", {{"type", "string"}, {"enum", {"classic", "ai_enhanced", "ai_native"}}}},
           {"args", string_prop()},
           {"limits", string_prop()}}},
         {"required", {"profile"}}},
        TrustTier::AiEnhanced, 2.0, "Start a child agent"));

    ok &= reg.register_tool(make_spec(
        "agent_message",
        {{"type", "object"},
         {"properties",
          {{"to", string_prop()},
           {"text", string_prop()},
           {"priority", {{"type", "string"}, {"enum", {"low", "normal", "high"}}}},
           {"reply_to", string_prop()}}},
         {"required", {"to", "text"}}},
        TrustTier::Classic, 10.0, "Send an inter-agent message"));

    ok &= reg.register_tool(make_spec(
        "shell_exec",
        {{"type", "object"},
         {"properties",
          {{"cmd", string_prop()},
           {"cwd", string_prop()},
           {"env", string_prop()},
           {"timeout_ms", {{"type", "integer"}, {"minimum", 1}, {"maximum", 600000}}}}},
         {"required", {"cmd"}}},
        TrustTier::AiNative, 1.0, "Run a shell command"));

    ok &= reg.register_tool(make_spec(
        "log_write",
        {{"type", "object"},
         {"properties",
          {{"message", string_prop()},
           {"level", {{"type", "string"}, {"enum", {"debug", "info", "warn", "error"}}}}}},
         {"required", {"message"}}},
        TrustTier::Classic, 50.0, "Append to the shared log"));

    if (!ok) throw std::logic_error("default tool registry failed to build");
    return reg;
}

}  // namespace mcpgate
