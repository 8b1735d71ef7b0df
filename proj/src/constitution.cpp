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

#include "mcpgate/constitution.hpp"

#include <charconv>
#include <stdexcept>

namespace mcpgate {

bool Cidr::contains(std::uint32_t ip) const {
    if (prefix_len == 0) return true;
    std::uint32_t mask = prefix_len == 32 ? ~0u : ~((1u << (32 - prefix_len)) - 1u);
    return (ip & mask) == (base & mask);
}

Cidr Cidr::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) throw std::runtime_error("cidr: missing '/'");
    auto ip = parse_ipv4(text.substr(0, slash));
    if (!ip) throw std::runtime_error("cidr: bad address in '" + std::string(text) + "'");
    int len = -1;
    auto tail = text.substr(slash + 1);
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), len);
    if (ec != std::errc() || ptr != tail.data() + tail.size() || len < 0 || len > 32) {
        throw std::runtime_error("cidr: bad prefix length in '" + std::string(text) + "'");
    }
    return Cidr{*ip, len};
}

std::optional<std::uint32_t> parse_ipv4(std::string_view text) {
    std::uint32_t out = 0;
    std::size_t pos = 0;
    for (int octet = 0; octet < 4; ++octet) {
        if (octet > 0) {
            if (pos >= text.size() || text[pos] != '.') return std::nullopt;
            ++pos;
        }
        std::size_t start = pos;
        std::uint32_t value = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            value = value * 10 + static_cast<std::uint32_t>(text[pos] - '0');
            if (value > 255) return std::nullopt;
            ++pos;
        }
        if (pos == start || pos - start > 3) return std::nullopt;
        out = (out << 8) | value;
    }
    if (pos != text.size()) return std::nullopt;
    return out;
}

std::string url_host(std::string_view url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) return "";
    auto rest = url.substr(scheme_end + 3);
    auto host_end = rest.find_first_of(":/?#");
    auto host = rest.substr(0, host_end);
    return std::string(host);
}

namespace {

Atom::Op op_from_string(const std::string& name) {
    if (name == "tool_equals") return Atom::Op::ToolEquals;
    if (name == "tool_in") return Atom::Op::ToolIn;
    if (name == "tier_at_most") return Atom::Op::TierAtMost;
    if (name == "tier_at_least") return Atom::Op::TierAtLeast;
    if (name == "arg_contains") return Atom::Op::ArgContains;
    if (name == "arg_matches") return Atom::Op::ArgMatches;
    if (name == "url_host_in_cidrs") return Atom::Op::UrlHostInCidrs;
    if (name == "path_has_prefix") return Atom::Op::PathHasPrefix;
    throw std::runtime_error("principles: unknown atom op '" + name + "'");
}

Atom parse_atom(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("op")) {
        throw std::runtime_error("principles: atom must be an object with 'op'");
    }
    Atom atom;
    atom.op = op_from_string(doc["op"].get<std::string>());
    atom.field = doc.value("field", std::string());
    atom.value = doc.value("value", std::string());
    if (doc.contains("values")) {
        for (const auto& v : doc["values"]) atom.values.push_back(v.get<std::string>());
    }
    switch (atom.op) {
        case Atom::Op::TierAtMost:
        case Atom::Op::TierAtLeast: {
            auto tier = tier_from_string(doc.value("tier", std::string()));
            if (!tier) throw std::runtime_error("principles: atom needs a valid 'tier'");
            atom.tier = *tier;
            break;
        }
        case Atom::Op::ArgMatches:
            atom.regex = LinearRegex::compile(doc.value("pattern", std::string()));
            break;
        case Atom::Op::UrlHostInCidrs:
            for (const auto& c : doc.value("cidrs", nlohmann::json::array())) {
                atom.cidrs.push_back(Cidr::parse(c.get<std::string>()));
            }
            if (atom.cidrs.empty()) throw std::runtime_error("principles: empty 'cidrs'");
            break;
        default: break;
    }
    return atom;
}

}  // namespace

Constitution::Constitution(std::vector<Principle> principles)
    : principles_(std::move(principles)) {}

Constitution Constitution::from_json(const std::string& json_text) {
    auto doc = nlohmann::json::parse(json_text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_array()) {
        throw std::runtime_error("principles: expected a JSON array");
    }
    std::vector<Principle> principles;
    for (const auto& entry : doc) {
        if (!entry.is_object() || !entry.contains("id") || !entry.contains("all_of")) {
            throw std::runtime_error("principles: entry missing id/all_of");
        }
        Principle p;
        p.id = entry["id"].get<std::string>();
        p.description = entry.value("description", std::string());
        for (const auto& atom : entry["all_of"]) p.all_of.push_back(parse_atom(atom));
        if (p.all_of.empty()) {
            throw std::runtime_error("principles: '" + p.id + "' has no atoms");
        }
        principles.push_back(std::move(p));
    }
    return Constitution(std::move(principles));
}

void Constitution::set_missing_field_logger(std::function<void(const std::string&)> logger) {
    missing_field_logger_ = std::move(logger);
}

void Constitution::log_missing_field(const std::string& principle_id,
                                     const std::string& field) const {
    std::lock_guard<std::mutex> lock(log_mu_);
    if (!logged_.insert(principle_id + ":" + field).second) return;
    if (missing_field_logger_) {
        missing_field_logger_("principle " + principle_id + ": field '" + field +
                              "' absent from call args");
    }
}

bool Constitution::atom_holds(const Atom& atom, const std::string& tool_name,
                              const nlohmann::json& args, const AgentId& agent,
                              const std::string& principle_id) const {
    switch (atom.op) {
        case Atom::Op::ToolEquals: return tool_name == atom.value;
        case Atom::Op::ToolIn:
            for (const auto& v : atom.values) {
                if (tool_name == v) return true;
            }
            return false;
        case Atom::Op::TierAtMost: return agent.tier <= atom.tier;
        case Atom::Op::TierAtLeast: return agent.tier >= atom.tier;
        default: break;
    }
    // Remaining ops read a string field from the args object.
    if (!args.is_object()) return false;
    auto it = args.find(atom.field);
    if (it == args.end() || !it->is_string()) {
        log_missing_field(principle_id, atom.field);
        return false;
    }
    const std::string& text = it->get_ref<const std::string&>();
    switch (atom.op) {
        case Atom::Op::ArgContains: return text.find(atom.value) != std::string::npos;
        case Atom::Op::ArgMatches: return atom.regex->matches(text);
        case Atom::Op::UrlHostInCidrs: {
            auto ip = parse_ipv4(url_host(text));
            if (!ip) return false;  // hostnames never match without resolution
            for (const auto& cidr : atom.cidrs) {
                if (cidr.contains(*ip)) return true;
            }
            return false;
        }
        case Atom::Op::PathHasPrefix:
            for (const auto& prefix : atom.values) {
                if (text.rfind(prefix, 0) == 0) return true;
            }
            return false;
        default: return false;
    }
}

std::optional<std::string> Constitution::evaluate(const std::string& tool_name,
                                                  const nlohmann::json& args,
                                                  const AgentId& agent) const {
    for (const auto& principle : principles_) {
        bool violated = true;
        for (const auto& atom : principle.all_of) {
            if (!atom_holds(atom, tool_name, args, agent, principle.id)) {
                violated = false;
                break;
            }
        }
        if (violated) return principle.id;
    }
    return std::nullopt;
}

const char* Constitution::default_json() {
    // Atom grammar: op one of tool_equals {value} | tool_in {values} |
    // tier_at_most {tier} | tier_at_least {tier} | arg_contains {field,
    // value} | arg_matches {field, pattern} | url_host_in_cidrs {field,
    // cidrs} | path_has_prefix {field, values}. A principle denies when all
    // of its atoms hold.
    return R"JSON([
  {"id": "const-01", "description": "no shell command touching the system password store",
   "all_of": [{"op": "tool_equals", "value": "shell_exec"},
              {"op": "arg_contains", "field": "cmd", "value": "/etc/shadow"}]},
  {"id": "const-02", "description": "no posts to private RFC1918 addresses from Classic agents",
   "all_of": [{"op": "tool_equals", "value": "net_post"},
              {"op": "tier_at_most", "tier": "Classic"},
              {"op": "url_host_in_cidrs", "field": "url",
               "cidrs": ["10.0.0.0/8", "172.16.0.0/12", "192.168.0.0/16"]}]},
  {"id": "const-03", "description": "no destructive raw-disk shell commands",
   "all_of": [{"op": "tool_equals", "value": "shell_exec"},
              {"op": "arg_matches", "field": "cmd",
               "pattern": "(?i)(dd\\s.*of=/dev/|mkfs)"}]},
  {"id": "const-04", "description": "no reads of ssh private keys",
   "all_of": [{"op": "tool_equals", "value": "file_read"},
              {"op": "arg_matches", "field": "path",
               "pattern": "\\.ssh/id_[a-z0-9]+"}]},
  {"id": "const-05", "description": "no reads of the system password store",
   "all_of": [{"op": "tool_equals", "value": "file_read"},
              {"op": "arg_contains", "field": "path", "value": "/etc/shadow"}]},
  {"id": "const-06", "description": "no reads of browser credential stores",
   "all_of": [{"op": "tool_equals", "value": "file_read"},
              {"op": "arg_matches", "field": "path",
               "pattern": "(Login Data|key4\\.db|logins\\.json)"}]},
  {"id": "const-07", "description": "no writes under /etc or /boot below System tier",
   "all_of": [{"op": "tool_equals", "value": "file_write"},
              {"op": "tier_at_most", "tier": "AiNative"},
              {"op": "path_has_prefix", "field": "path", "values": ["/etc/", "/boot/"]}]},
  {"id": "const-08", "description": "no network egress carrying a sensitive-read marker",
   "all_of": [{"op": "tool_in", "values": ["net_post", "net_fetch"]},
              {"op": "arg_contains", "field": "body", "value": "[[sensitive-read]]"}]},
  {"id": "const-09", "description": "no agent spawning from Classic agents",
   "all_of": [{"op": "tool_equals", "value": "agent_spawn"},
              {"op": "tier_at_most", "tier": "Classic"}]},
  {"id": "const-10", "description": "no peeking foreign agent memory regions",
   "all_of": [{"op": "tool_equals", "value": "mem_peek"},
              {"op": "arg_contains", "field": "scope", "value": "foreign"}]},
  {"id": "const-11", "description": "no recursive deletes of root-level paths",
   "all_of": [{"op": "tool_equals", "value": "file_delete"},
              {"op": "arg_contains", "field": "mode", "value": "recursive"},
              {"op": "arg_matches", "field": "path", "pattern": "^/([a-z]+/?)?$"}]},
  {"id": "const-12", "description": "no shell execution below AiNative tier",
   "all_of": [{"op": "tool_equals", "value": "shell_exec"},
              {"op": "tier_at_most", "tier": "AiEnhanced"}]}
])JSON";
}

Constitution Constitution::defaults() {
    return from_json(default_json());
}

}  // namespace mcpgate
