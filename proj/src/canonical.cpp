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

#include "mcpgate/canonical.hpp"

namespace mcpgate {

// nlohmann::json's default object container is std::map, so keys are already
// bytewise-sorted; dump() emits shortest round-trip numbers and compact
// separators. Canonicality therefore reduces to plain dump().
std::string canonical_json(const nlohmann::json& value) {
    return value.dump();
}

std::string canonical_call_text(const std::string& tool_name, const nlohmann::json& arguments) {
    nlohmann::json call;
    call["arguments"] = arguments;
    call["name"] = tool_name;
    return canonical_json(call);
}

Blake3::Digest canonical_args_hash(const nlohmann::json& arguments) {
    return Blake3::hash(canonical_json(arguments));
}

std::string canonical_call_hash_hex(const std::string& tool_name, const nlohmann::json& arguments) {
    return Blake3::hex(Blake3::hash(canonical_call_text(tool_name, arguments)));
}

}  // namespace mcpgate
