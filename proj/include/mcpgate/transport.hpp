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

#include <atomic>
#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "mcpgate/gateway.hpp"
#include "mcpgate/json_rpc.hpp"

namespace mcpgate {

// The MCP server behind the gateway. Transports never write to it directly;
// every call_tool frame passes governance first.
class Upstream {
  public:
    virtual ~Upstream() = default;
    virtual bool available() = 0;
    // Answers one forwarded request with a complete JSON-RPC response.
    virtual nlohmann::json handle(const JsonRpcMessage& message) = 0;
};

// In-process upstream that answers discovery from the registry catalog and
// acknowledges tool calls without executing them. Serves as the default
// stand-in and as the observation point for forwarding tests.
class LoopbackUpstream : public Upstream {
  public:
    explicit LoopbackUpstream(const ToolRegistry& registry);

    bool available() override { return available_; }
    void set_available(bool available) { available_ = available; }

    nlohmann::json handle(const JsonRpcMessage& message) override;

    std::uint64_t forwarded_calls() const { return forwarded_calls_.load(); }

  private:
    nlohmann::json catalog_;  // list_tools answer, fixed at construction
    std::atomic<bool> available_{true};
    std::atomic<std::uint64_t> forwarded_calls_{0};
};

using ClockFn = std::function<std::uint64_t()>;  // milliseconds, monotonic

ClockFn steady_clock_ms();

// Transport-agnostic frame router.
//   - Unparseable frames answer with a protocol-level error and never reach
//     the pipeline: with no method recoverable there is no call to govern.
//   - call_tool routes through governance_entry exactly once per frame,
//     before any upstream write. Denied calls answer -32000 and forward
//     nothing. An unavailable upstream still leaves governance running:
//     denials stay audited, and calls that would have been forwarded answer
//     -32001.
//   - list_tools/list_prompts/list_resources forward after parse only.
// Returns nullopt for notifications, which produce no wire response.
class Dispatcher {
  public:
    Dispatcher(Gateway& gateway, Upstream& upstream, ClockFn clock = steady_clock_ms());

    std::optional<nlohmann::json> dispatch(std::string_view frame_bytes);

    Gateway& gateway() { return gateway_; }

  private:
    std::optional<nlohmann::json> route_call_tool(const JsonRpcMessage& message,
                                                  std::size_t raw_bytes_len);

    Gateway& gateway_;
    Upstream& upstream_;
    ClockFn clock_;
};

// Newline-delimited JSON loop: one message per line, one response line per
// request. Runs until EOF, then flushes the audit ring to its sink. Returns
// the number of frames handled.
std::size_t serve_stdio(std::istream& in, std::ostream& out, Dispatcher& dispatcher);

// Single-endpoint HTTP transport: POST /mcp carries one JSON-RPC message per
// request body; responses return synchronously. Notifications answer 204.
class HttpGatewayServer {
  public:
    explicit HttpGatewayServer(Dispatcher& dispatcher);
    ~HttpGatewayServer();

    // Binds an ephemeral port and serves from a background thread; returns
    // the port, or -1 on bind failure.
    int start_async(const std::string& host);
    // Blocking serve on a fixed port; false on bind failure.
    bool serve(const std::string& host, int port);
    void stop();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace mcpgate
