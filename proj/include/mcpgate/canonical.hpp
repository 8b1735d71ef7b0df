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

#include <nlohmann/json.hpp>

#include "mcpgate/blake3.hpp"

namespace mcpgate {

// Canonical serialization: UTF-8, object keys sorted bytewise, numbers in
// shortest round-trip form, no insignificant whitespace. Arg hashes and
// fixture keys are stable only because this form is.
std::string canonical_json(const nlohmann::json& value);

// Canonical text of a tool call: the canonical JSON of
// {"arguments": <args>, "name": <tool_name>}.
std::string canonical_call_text(const std::string& tool_name, const nlohmann::json& arguments);

// Blake3 of the canonical args document alone (audit arg_hash).
Blake3::Digest canonical_args_hash(const nlohmann::json& arguments);

// Blake3 hex of the canonical call text (scripted-fixture lookup key).
std::string canonical_call_hash_hex(const std::string& tool_name, const nlohmann::json& arguments);

}  // namespace mcpgate
