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

#include "mcpgate/http_backend.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

namespace mcpgate {

struct HttpAdapterBackend::Impl {
    httplib::Client client;
    Impl(const std::string& host, int port, int timeout_ms) : client(host, port) {
        client.set_connection_timeout(0, timeout_ms * 1000);
        client.set_read_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);
        client.set_write_timeout(timeout_ms / 1000, (timeout_ms % 1000) * 1000);
    }
};

namespace {

// POST with a JSON body; nullopt on transport error, non-200, or bad JSON.
std::optional<nlohmann::json> post_json(httplib::Client& client, const std::string& path,
                                        const nlohmann::json& body) {
    const auto res = client.Post(path, body.dump(), "application/json");
    if (!res || res->status != 200) return std::nullopt;
    auto parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (parsed.is_discarded()) return std::nullopt;
    return parsed;
}

}  // namespace

HttpAdapterBackend::HttpAdapterBackend(const std::string& host, int port, int timeout_ms)
    : impl_(std::make_unique<Impl>(host, port, timeout_ms)) {}

HttpAdapterBackend::~HttpAdapterBackend() = default;

bool HttpAdapterBackend::ready() {
    const auto res = impl_->client.Get("/health");
    return res && res->status == 200;
}

std::vector<int> HttpAdapterBackend::tokenize(const std::string& word) {
    const auto reply = post_json(impl_->client, "/tokenize", {{"word", word}});
    if (!reply || !reply->contains("ids") || !(*reply)["ids"].is_array()) return {};
    std::vector<int> ids;
    for (const auto& id : (*reply)["ids"]) {
        if (!id.is_number_integer()) return {};
        ids.push_back(id.get<int>());
    }
    return ids;
}

std::pair<double, double> HttpAdapterBackend::verbalizer_logits(const std::string& prompt_text) {
    const auto reply = post_json(impl_->client, "/logits",
                                 {{"prompt", prompt_text},
                                  {"safe_token", pair_.safe_token_id},
                                  {"dangerous_token", pair_.dangerous_token_id}});
    if (!reply || !reply->contains("logit_safe") || !reply->contains("logit_dangerous") ||
        !(*reply)["logit_safe"].is_number() || !(*reply)["logit_dangerous"].is_number()) {
        return {0.0, 0.0};
    }
    return {(*reply)["logit_safe"].get<double>(), (*reply)["logit_dangerous"].get<double>()};
}

std::string HttpAdapterBackend::snapshot_session() {
    const auto reply =
        post_json(impl_->client, "/session/snapshot", nlohmann::json::object());
    if (!reply || !reply->contains("token") || !(*reply)["token"].is_string()) return "";
    return (*reply)["token"].get<std::string>();
}

bool HttpAdapterBackend::restore_session(const std::string& token) {
    if (token.empty()) return false;
    const auto reply = post_json(impl_->client, "/session/restore", {{"token", token}});
    return reply && reply->contains("ok") && (*reply)["ok"].is_boolean() &&
           (*reply)["ok"].get<bool>();
}

}  // namespace mcpgate
