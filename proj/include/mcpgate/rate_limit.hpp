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

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace mcpgate {

// Per-(agent, tool) token buckets on a millisecond clock, with exact integer
// arithmetic so an independent event simulator can reproduce every verdict:
//   1 token = 1'000'000 microtokens; rate is millitokens/second, so a
//   refill over dt ms adds exactly rate_mtok_per_s * dt microtokens.
class RateLimiter {
  public:
    // One token = this many microtokens.
    static constexpr std::uint64_t kMicroPerToken = 1'000'000;

    // Refills per the bucket invariant, then consumes one token if available.
    // Returns true on Allow. Deny does not consume. Clock regression is
    // treated as dt = 0. Capacity is rate x 1 s. Buckets are created lazily
    // full. check-refill-consume is one critical section per bucket.
    bool try_acquire(const std::string& agent_id, const std::string& tool_name,
                     std::uint64_t rate_mtok_per_s, std::uint64_t now_ms);

    // Observable bucket level for diagnostics/tests, in microtokens, after a
    // refill to now_ms. Creates the bucket like try_acquire would.
    std::uint64_t peek_microtokens(const std::string& agent_id, const std::string& tool_name,
                                   std::uint64_t rate_mtok_per_s, std::uint64_t now_ms);

  private:
    struct Bucket {
        std::uint64_t micro_tokens;
        std::uint64_t capacity_micro;
        std::uint64_t rate_mtok_per_s;
        std::uint64_t last_refill_ms;
    };

    Bucket& bucket_for(const std::string& agent_id, const std::string& tool_name,
                       std::uint64_t rate_mtok_per_s, std::uint64_t now_ms);
    static void refill(Bucket& b, std::uint64_t now_ms);

    std::mutex mu_;
    std::map<std::pair<std::string, std::string>, Bucket> buckets_;
};

}  // namespace mcpgate
