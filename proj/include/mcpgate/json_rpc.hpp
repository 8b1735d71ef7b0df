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

#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

namespace mcpgate {

// A parsed JSON-RPC 2.0 message. id is null for notifications.
struct JsonRpcMessage {
    nlohmann::json id;  // integer, string, or null
    std::string method;
    nlohmann::json params;  // object or null

    bool is_notification() const { return id.is_null(); }
};

enum class ParseError : std::uint8_t {
    MalformedJson,
    WrongVersion,
    MissingMethod,
};

std::string_view to_string(ParseError e);

// Total over arbitrary bytes: returns a message or an error, never throws.
std::variant<JsonRpcMessage, ParseError> parse_request(std::string_view bytes);

// Standard JSON-RPC 2.0 error codes used on the wire.
inline constexpr int kRpcParseError = -32700;
inline constexpr int kRpcInvalidRequest = -32600;
inline constexpr int kRpcMethodNotFound = -32601;
inline constexpr int kRpcInvalidParams = -32602;
inline constexpr int kRpcInternalError = -32603;
// Implementation-defined range: tool call denied by the governance pipeline.
inline constexpr int kRpcGovernanceDeny = -32000;
inline constexpr int kRpcUpstreamUnavailable = -32001;

nlohmann::json make_result(const nlohmann::json& id, nlohmann::json result);
nlohmann::json make_error(const nlohmann::json& id, int code, const std::string& message,
                          nlohmann::json data = nullptr);

}  // namespace mcpgate
