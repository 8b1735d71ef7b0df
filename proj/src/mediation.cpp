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

#include "mcpgate/mediation.hpp"

#include <stdexcept>

namespace mcpgate {

std::vector<HostFunction> default_host_functions() {
    const std::vector<std::string> full = {"ok", "schema-reject", "agent-reject"};
    return {
        {"file_read", {"path", "path+mode", "path+offset"}, full},
        {"file_write", {"path+content", "path+content+mode", "path+content+create_dirs"}, full},
        {"file_delete", {"path", "path+mode"}, full},
        {"file_list", {"path", "path+glob"}, full},
        {"net_fetch", {"url", "url+method", "url+headers"}, full},
        {"net_post",
         {"url+body", "url+body+content_type", "url+body+headers", "url+body+timeout_ms"},
         full},
        {"mem_alloc", {"bytes", "bytes+zeroed"}, full},
        {"mem_peek", {"addr", "addr+scope"}, full},
        {"agent_spawn", {"profile", "profile+tier", "profile+args", "profile+tier+limits"}, full},
        {"agent_message", {"to+text", "to+text+priority", "to+text+reply_to"}, full},
        {"shell_exec", {"cmd", "cmd+cwd", "cmd+env", "cmd+timeout_ms"}, full},
        {"log_write", {"message", "message+level"}, {"ok"}},
        {"mcp_list_tools", {"empty", "cursor"}, {"ok", "malformed"}},
        {"mcp_call_tool",
         {"inner-minimal", "inner-mode", "inner-offset", "inner-unknown-tool"},
         full},
        {"mcp_tool_info", {"name", "name+verbose", "name+schema_only"}, full},
    };
}

std::vector<PathId> enumerate_mediation_paths(const std::vector<HostFunction>& functions) {
    std::vector<PathId> paths;
    for (const auto& fn : functions) {
        for (std::size_t c = 0; c < fn.arg_combos.size(); ++c) {
            for (std::size_t b = 0; b < fn.branches.size(); ++b) {
                PathId path;
                path.host_fn = fn.name;
                path.combo = static_cast<int>(c);
                path.branch = static_cast<int>(b);
                path.label = fn.name + "/" + fn.arg_combos[c] + "/" + fn.branches[b];
                paths.push_back(std::move(path));
            }
        }
    }
    return paths;
}

namespace {

// Well-formed arguments for each (function, combo). The driven tool is the
// function itself, except for mcp_call_tool whose drive is the inner call.
ToolCallRequest base_call_for(const std::string& fn, int combo) {
    ToolCallRequest call;
    call.agent_id = "orchestrator";  // System tier passes every gate
    call.tool_name = fn;
    nlohmann::json& a = call.args;
    if (fn == "file_read") {
        a["path"] = "/var/tmp/sample.txt";
        if (combo == 1) a["mode"] = "read";
        if (combo == 2) a["offset"] = 0;
    } else if (fn == "file_write") {
        a["path"] = "/var/tmp/out.txt";
        a["content"] = "data";
        if (combo == 1) a["mode"] = "create";
        if (combo == 2) a["create_dirs"] = true;
    } else if (fn == "file_delete") {
        a["path"] = "/var/tmp/out.txt";
        if (combo == 1) a["mode"] = "single";
    } else if (fn == "file_list") {
        a["path"] = "/var/tmp";
        if (combo == 1) a["glob"] = "*.txt";
    } else if (fn == "net_fetch") {
        a["url"] = "https://example.org/";
        if (combo == 1) a["method"] = "GET";
        if (combo == 2) a["headers"] = "accept: text/plain";
    } else if (fn == "net_post") {
        a["url"] = "https://example.org/submit";
        a["body"] = "ping";
        if (combo == 1) a["content_type"] = "text/plain";
        if (combo == 2) a["headers"] = "accept: text/plain";
        if (combo == 3) a["timeout_ms"] = 5000;
    } else if (fn == "mem_alloc") {
        a["bytes"] = 4096;
        if (combo == 1) a["zeroed"] = true;
    } else if (fn == "mem_peek") {
        a["addr"] = "0x1000";
        if (combo == 1) a["scope"] = "self";
    } else if (fn == "agent_spawn") {
        a["profile"] = "worker";
        if (combo == 1) a["tier"] = "classic";
        if (combo == 2) a["args"] = "--quiet";
        if (combo == 3) {
            a["tier"] = "classic";
            a["limits"] = "cpu:1";
        }
    } else if (fn == "agent_message") {
        a["to"] = "orchestrator";
        a["text"] = "status?";
        if (combo == 1) a["priority"] = "normal";
        if (combo == 2) a["reply_to"] = "msg-1";
    } else if (fn == "shell_exec") {
        a["cmd"] = "uptime";
        if (combo == 1) a["cwd"] = "/tmp";
        if (combo == 2) a["env"] = "LC_ALL=C";
        if (combo == 3) a["timeout_ms"] = 1000;
    } else if (fn == "log_write") {
        a["message"] = "path probe";
        if (combo == 1) a["level"] = "info";
    } else if (fn == "mcp_list_tools") {
        call.tool_name = "mcp_list_tools";
        if (combo == 1) a["cursor"] = "page-2";
    } else if (fn == "mcp_call_tool") {
        // The governed call is the inner one.
        call.tool_name = "file_read";
        a["path"] = "/var/tmp/sample.txt";
        if (combo == 1) a["mode"] = "read";
        if (combo == 2) a["offset"] = 0;
        if (combo == 3) {
            call.tool_name = "no_such_tool";
            a = nlohmann::json{{"path", "/var/tmp/sample.txt"}};
        }
    } else if (fn == "mcp_tool_info") {
        call.tool_name = "mcp_tool_info";
        a["name"] = "file_read";
        if (combo == 1) a["verbose"] = true;
        if (combo == 2) a["schema_only"] = true;
    } else {
        throw std::logic_error("unknown host function: " + fn);
    }
    return call;
}

// Corrupt the call so layer 1 rejects it: flip the leading required field to
// the wrong type.
void apply_schema_reject(ToolCallRequest& call) {
    static const std::map<std::string, std::string> kFirstRequired = {
        {"file_read", "path"},     {"file_write", "path"},   {"file_delete", "path"},
        {"file_list", "path"},     {"net_fetch", "url"},     {"net_post", "url"},
        {"mem_alloc", "bytes"},    {"mem_peek", "addr"},     {"agent_spawn", "profile"},
        {"agent_message", "to"},   {"shell_exec", "cmd"},    {"log_write", "message"},
    };
    const auto it = kFirstRequired.find(call.tool_name);
    if (it != kFirstRequired.end()) {
        call.args[it->second] = call.tool_name == "mem_alloc" ? nlohmann::json("many")
                                                              : nlohmann::json(42);
    } else {
        call.args["bogus"] = 42;  // unregistered tools reject at layer 1 anyway
    }
}

}  // namespace

SyntheticInput synthetic_input_for(const PathId& path) {
    SyntheticInput input;
    input.host_fn = path.host_fn;
    input.call = base_call_for(path.host_fn, path.combo);

    const auto& functions = default_host_functions();
    std::string branch_label;
    for (const auto& fn : functions) {
        if (fn.name == path.host_fn) {
            branch_label = fn.branches.at(static_cast<std::size_t>(path.branch));
            break;
        }
    }
    if (branch_label == "schema-reject" || branch_label == "malformed") {
        apply_schema_reject(input.call);
    } else if (branch_label == "agent-reject") {
        input.call.agent_id = "ghost-agent";
    }
    input.call.raw_bytes_len = input.call.args.dump().size();
    return input;
}

PathDriver default_path_driver() {
    return [](Gateway& gateway, const PathId&, const SyntheticInput& input,
              std::uint64_t now_ms) {
        (void)gateway.governance_entry(input.host_fn, input.call, now_ms);
    };
}

MediationReport run_mediation_traversal(Gateway& gateway,
                                        const std::vector<HostFunction>& functions,
                                        const PathDriver& driver, std::uint64_t start_ms) {
    MediationReport report;
    std::uint64_t now_ms = start_ms;
    bool all_once = true;
    for (const auto& path : enumerate_mediation_paths(functions)) {
        const SyntheticInput input = synthetic_input_for(path);
        const std::uint64_t before = gateway.governance_count();
        driver(gateway, path, input, now_ms);
        const std::uint64_t counter = gateway.governance_count() - before;
        report.total_increments += counter;
        if (counter != 1) all_once = false;
        report.paths.push_back({path, counter});
        now_ms += 1000;
    }
    report.pass = all_once && report.total_increments == report.paths.size();
    return report;
}

nlohmann::json MediationReport::to_json() const {
    nlohmann::json doc;
    doc["pass"] = pass;
    doc["path_count"] = paths.size();
    doc["total_increments"] = total_increments;
    nlohmann::json items = nlohmann::json::array();
    for (const auto& p : paths) {
        items.push_back({{"path", p.path.label}, {"counter", p.counter}});
    }
    doc["paths"] = std::move(items);
    return doc;
}

}  // namespace mcpgate
