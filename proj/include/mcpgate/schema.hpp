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

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace mcpgate {

// First violation found, in document order. path is a JSON pointer ("/path").
struct SchemaViolation {
    std::string path;
    std::string expected;
    std::string got;
};

// JSON-Schema subset: type, properties, required, enum, items,
// minimum/maximum. Unknown keywords are ignored; absent keywords constrain
// nothing.
std::optional<SchemaViolation> validate_against_schema(const nlohmann::json& doc,
                                                       const nlohmann::json& schema);

// Checks that a schema document itself stays within the supported subset
// (keyword operand shapes are right; nested schemas recurse).
std::optional<SchemaViolation> validate_schema_document(const nlohmann::json& schema);

}  // namespace mcpgate
