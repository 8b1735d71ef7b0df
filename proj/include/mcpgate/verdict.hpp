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
#include <string>

namespace mcpgate {

enum class Decision : std::uint8_t {
    Allow = 0,
    Deny = 1,
};

// deciding_layer value for a call that cleared every layer.
inline constexpr int kLayerAllow = 0;

struct Verdict {
    Decision decision = Decision::Allow;
    bool warn = false;  // warn implies decision == Allow
    int deciding_layer = kLayerAllow;
    std::string reason;

    bool allowed() const { return decision == Decision::Allow; }
    bool denied() const { return decision == Decision::Deny; }

    static Verdict allow() { return Verdict{}; }

    static Verdict allow_warn(std::string reason) {
        Verdict v;
        v.warn = true;
        v.reason = std::move(reason);
        return v;
    }

    static Verdict deny(int layer, std::string reason) {
        Verdict v;
        v.decision = Decision::Deny;
        v.deciding_layer = layer;
        v.reason = std::move(reason);
        return v;
    }
};

}  // namespace mcpgate
