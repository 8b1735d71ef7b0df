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

#include "mcpgate/transport.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>

namespace mcpgate {

LoopbackUpstream::LoopbackUpstream(const ToolRegistry& registry)
    : catalog_(registry.to_json()) {}

nlohmann::json LoopbackUpstream::handle(const JsonRpcMessage& message) {
    if (message.method == "list_tools") {
        return make_result(message.id, {{"tools", catalog_}});
    }
    if (message.method == "list_prompts") {
        return make_result(message.id, {{"prompts", nlohmann::json::array()}});
    }
    if (message.method == "list_resources") {
        return make_result(message.id, {{"resources", nlohmann::json::array()}});
    }
    if (message.method == "call_tool") {
        forwarded_calls_.fetch_add(1);
        const std::string name = message.params.is_object() && message.params.contains("name")
                                     ? message.params["name"].get<std::string>()
                                     : "";
        return make_result(message.id,
                           {{"content", nlohmann::json::array({nlohmann::json{
                                            {"type", "text"}, {"text", "ok:" + name}}})},
                            {"isError", false}});
    }
    return make_error(message.id, kRpcMethodNotFound, "method not found: " + message.method);
}

ClockFn steady_clock_ms() {
    return [] {
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now().time_since_epoch())
                .count());
    };
}

Dispatcher::Dispatcher(Gateway& gateway, Upstream& upstream, ClockFn clock)
    : gateway_(gateway), upstream_(upstream), clock_(std::move(clock)) {}

std::optional<nlohmann::json> Dispatcher::route_call_tool(const JsonRpcMessage& message,
                                                          std::size_t raw_bytes_len) {
    // Missing or mistyped params fields degrade to values the pipeline
    // rejects itself (unknown tool, unknown agent), so every call_tool frame
    // is governed and audited, malformed ones included.
    ToolCallRequest call;
    call.raw_bytes_len = raw_bytes_len;
    if (message.params.is_object()) {
        if (message.params.contains("name") && message.params["name"].is_string()) {
            call.tool_name = message.params["name"].get<std::string>();
        }
        if (message.params.contains("arguments") && message.params["arguments"].is_object()) {
            call.args = message.params["arguments"];
        }
        if (message.params.contains("agent") && message.params["agent"].is_string()) {
            call.agent_id = message.params["agent"].get<std::string>();
        }
    }

    const auto outcome = gateway_.governance_entry("mcp_call_tool", call, clock_());
    if (!outcome) {
        // Unreachable while mcp_call_tool stays registered; answer closed.
        if (message.is_notification()) return std::nullopt;
        return make_error(message.id, kRpcGovernanceDeny, "governance entry refused");
    }

    if (outcome->verdict.denied()) {
        if (message.is_notification()) return std::nullopt;
        return make_error(message.id, kRpcGovernanceDeny,
                          "denied: " + outcome->verdict.reason,
                          {{"deciding_layer", outcome->verdict.deciding_layer},
                           {"reason", outcome->verdict.reason}});
    }

    if (!upstream_.available()) {
        if (message.is_notification()) return std::nullopt;
        return make_error(message.id, kRpcUpstreamUnavailable, "upstream unavailable");
    }

    const auto response = upstream_.handle(message);
    if (message.is_notification()) return std::nullopt;
    return response;
}

std::optional<nlohmann::json> Dispatcher::dispatch(std::string_view frame_bytes) {
    const auto parsed = parse_request(frame_bytes);
    if (const auto* error = std::get_if<ParseError>(&parsed)) {
        switch (*error) {
            case ParseError::MalformedJson:
                return make_error(nullptr, kRpcParseError, "malformed-json");
            case ParseError::WrongVersion:
                return make_error(nullptr, kRpcInvalidRequest, "wrong-version");
            case ParseError::MissingMethod:
                return make_error(nullptr, kRpcInvalidRequest, "missing-method");
        }
        return make_error(nullptr, kRpcInvalidRequest, "invalid request");
    }

    const auto& message = std::get<JsonRpcMessage>(parsed);
    if (message.method == "call_tool") {
        return route_call_tool(message, frame_bytes.size());
    }
    if (message.method == "list_tools" || message.method == "list_prompts" ||
        message.method == "list_resources") {
        if (!upstream_.available()) {
            if (message.is_notification()) return std::nullopt;
            return make_error(message.id, kRpcUpstreamUnavailable, "upstream unavailable");
        }
        const auto response = upstream_.handle(message);
        if (message.is_notification()) return std::nullopt;
        return response;
    }
    if (message.is_notification()) return std::nullopt;
    return make_error(message.id, kRpcMethodNotFound, "method not found: " + message.method);
}

std::size_t serve_stdio(std::istream& in, std::ostream& out, Dispatcher& dispatcher) {
    std::size_t frames = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++frames;
        if (const auto response = dispatcher.dispatch(line)) {
            out << response->dump() << '\n';
            out.flush();
        }
    }
    dispatcher.gateway().audit().flush_all();
    return frames;
}

struct HttpGatewayServer::Impl {
    Dispatcher& dispatcher;
    httplib::Server server;
    std::thread worker;

    explicit Impl(Dispatcher& d) : dispatcher(d) {
        server.Post("/mcp", [this](const httplib::Request& req, httplib::Response& res) {
            const auto response = dispatcher.dispatch(req.body);
            if (!response) {
                res.status = 204;
                return;
            }
            res.status = 200;
            res.set_content(response->dump(), "application/json");
        });
        // Liveness only. Governance state is deliberately not exposed here;
        // an unready engine already fails closed inside the pipeline.
        server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
            res.status = 200;
            res.set_content("{\"ok\":true}", "application/json");
        });
    }
};

HttpGatewayServer::HttpGatewayServer(Dispatcher& dispatcher)
    : impl_(std::make_unique<Impl>(dispatcher)) {}

HttpGatewayServer::~HttpGatewayServer() { stop(); }

int HttpGatewayServer::start_async(const std::string& host) {
    const int port = impl_->server.bind_to_any_port(host);
    if (port <= 0) return -1;
    impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return port;
}

bool HttpGatewayServer::serve(const std::string& host, int port) {
    return impl_->server.listen(host, port);
}

void HttpGatewayServer::stop() {
    if (!impl_) return;
    impl_->server.stop();
    if (impl_->worker.joinable()) impl_->worker.join();
}

}  // namespace mcpgate
