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

#include "mcpgate/json_rpc.hpp"

namespace mcpgate {

std::string_view to_string(ParseError e) {
    switch (e) {
        case ParseError::MalformedJson: return "malformed-json";
        case ParseError::WrongVersion: return "wrong-version";
        case ParseError::MissingMethod: return "missing-method";
    }
    return "unknown";
}

std::variant<JsonRpcMessage, ParseError> parse_request(std::string_view bytes) {
    nlohmann::json doc = nlohmann::json::parse(bytes, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) return ParseError::MalformedJson;

    auto version = doc.find("jsonrpc");
    if (version == doc.end() || !version->is_string() ||
        version->get_ref<const std::string&>() != "2.0") {
        return ParseError::WrongVersion;
    }

    auto method = doc.find("method");
    if (method == doc.end() || !method->is_string() ||
        method->get_ref<const std::string&>().empty()) {
        return ParseError::MissingMethod;
    }

    JsonRpcMessage msg;
    msg.method = method->get<std::string>();
    if (auto id = doc.find("id"); id != doc.end()) {
        if (!id->is_number_integer() && !id->is_string() && !id->is_null()) {
            return ParseError::MalformedJson;
        }
        msg.id = *id;
    }
    if (auto params = doc.find("params"); params != doc.end()) msg.params = *params;
    return msg;
}

nlohmann::json make_result(const nlohmann::json& id, nlohmann::json result) {
    return nlohmann::json{{"jsonrpc", "2.0"}, {"id", id}, {"result", std::move(result)}};
}

nlohmann::json make_error(const nlohmann::json& id, int code, const std::string& message,
                          nlohmann::json data) {
    nlohmann::json err{{"code", code}, {"message", message}};
    if (!data.is_null()) err["data"] = std::move(data);
    return nlohmann::json{{"jsonrpc", "2.0"}, {"id", id}, {"error", std::move(err)}};
}

}  // namespace mcpgate
