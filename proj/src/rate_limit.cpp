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

#include "mcpgate/rate_limit.hpp"

#include <algorithm>

namespace mcpgate {

RateLimiter::Bucket& RateLimiter::bucket_for(const std::string& agent_id,
                                             const std::string& tool_name,
                                             std::uint64_t rate_mtok_per_s, std::uint64_t now_ms) {
    auto key = std::make_pair(agent_id, tool_name);
    auto it = buckets_.find(key);
    if (it == buckets_.end()) {
        // Capacity = rate x 1 s; a fresh bucket starts full.
        Bucket b;
        b.capacity_micro = rate_mtok_per_s * 1000;
        b.micro_tokens = b.capacity_micro;
        b.rate_mtok_per_s = rate_mtok_per_s;
        b.last_refill_ms = now_ms;
        it = buckets_.emplace(std::move(key), b).first;
    }
    return it->second;
}

void RateLimiter::refill(Bucket& b, std::uint64_t now_ms) {
    if (now_ms <= b.last_refill_ms) return;  // clock regression: dt = 0
    std::uint64_t dt_ms = now_ms - b.last_refill_ms;
    // capacity = rate x 1 s, so any gap of >= 1000 ms fills the bucket; the
    // clamp also keeps rate * dt inside 64 bits for arbitrary gaps.
    if (dt_ms >= 1000) {
        b.micro_tokens = b.capacity_micro;
    } else {
        b.micro_tokens = std::min(b.capacity_micro, b.micro_tokens + b.rate_mtok_per_s * dt_ms);
    }
    b.last_refill_ms = now_ms;
}

bool RateLimiter::try_acquire(const std::string& agent_id, const std::string& tool_name,
                              std::uint64_t rate_mtok_per_s, std::uint64_t now_ms) {
    std::lock_guard<std::mutex> lock(mu_);
    Bucket& b = bucket_for(agent_id, tool_name, rate_mtok_per_s, now_ms);
    refill(b, now_ms);
    if (b.micro_tokens < kMicroPerToken) return false;
    b.micro_tokens -= kMicroPerToken;
    return true;
}

std::uint64_t RateLimiter::peek_microtokens(const std::string& agent_id,
                                            const std::string& tool_name,
                                            std::uint64_t rate_mtok_per_s, std::uint64_t now_ms) {
    std::lock_guard<std::mutex> lock(mu_);
    Bucket& b = bucket_for(agent_id, tool_name, rate_mtok_per_s, now_ms);
    refill(b, now_ms);
    return b.micro_tokens;
}

}  // namespace mcpgate
