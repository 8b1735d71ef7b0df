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

#include "mcpgate/schema.hpp"

namespace mcpgate {

namespace {

std::string type_name(const nlohmann::json& v) {
    switch (v.type()) {
        case nlohmann::json::value_t::null: return "null";
        case nlohmann::json::value_t::boolean: return "boolean";
        case nlohmann::json::value_t::number_integer:
        case nlohmann::json::value_t::number_unsigned: return "integer";
        case nlohmann::json::value_t::number_float: return "number";
        case nlohmann::json::value_t::string: return "string";
        case nlohmann::json::value_t::array: return "array";
        case nlohmann::json::value_t::object: return "object";
        default: return "unknown";
    }
}

bool matches_type(const nlohmann::json& v, const std::string& t) {
    if (t == "string") return v.is_string();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "null") return v.is_null();
    return false;
}

std::optional<SchemaViolation> validate_at(const nlohmann::json& doc, const nlohmann::json& schema,
                                           const std::string& path) {
    if (!schema.is_object()) return std::nullopt;  // vacuous schema

    if (auto type = schema.find("type"); type != schema.end() && type->is_string()) {
        const auto& t = type->get_ref<const std::string&>();
        if (!matches_type(doc, t)) {
            return SchemaViolation{path, t, type_name(doc)};
        }
    }

    if (auto en = schema.find("enum"); en != schema.end() && en->is_array()) {
        bool found = false;
        for (const auto& candidate : *en) {
            if (candidate == doc) {
                found = true;
                break;
            }
        }
        if (!found) return SchemaViolation{path, "one of enum", doc.dump()};
    }

    if (doc.is_number()) {
        if (auto mn = schema.find("minimum"); mn != schema.end() && mn->is_number()) {
            if (doc.get<double>() < mn->get<double>()) {
                return SchemaViolation{path, ">= " + mn->dump(), doc.dump()};
            }
        }
        if (auto mx = schema.find("maximum"); mx != schema.end() && mx->is_number()) {
            if (doc.get<double>() > mx->get<double>()) {
                return SchemaViolation{path, "<= " + mx->dump(), doc.dump()};
            }
        }
    }

    if (doc.is_object()) {
        if (auto req = schema.find("required"); req != schema.end() && req->is_array()) {
            for (const auto& key : *req) {
                if (!key.is_string()) continue;
                if (!doc.contains(key.get_ref<const std::string&>())) {
                    return SchemaViolation{path + "/" + key.get<std::string>(), "present",
                                           "missing"};
                }
            }
        }
        if (auto props = schema.find("properties"); props != schema.end() && props->is_object()) {
            for (const auto& [key, sub] : props->items()) {
                auto it = doc.find(key);
                if (it == doc.end()) continue;
                if (auto v = validate_at(*it, sub, path + "/" + key)) return v;
            }
        }
    }

    if (doc.is_array()) {
        if (auto items = schema.find("items"); items != schema.end() && items->is_object()) {
            for (std::size_t i = 0; i < doc.size(); ++i) {
                if (auto v = validate_at(doc[i], *items, path + "/" + std::to_string(i))) return v;
            }
        }
    }

    return std::nullopt;
}

std::optional<SchemaViolation> check_schema_doc(const nlohmann::json& schema,
                                                const std::string& path) {
    if (!schema.is_object()) {
        return SchemaViolation{path, "object", type_name(schema)};
    }
    static const char* kTypes[] = {"string", "integer", "number", "boolean",
                                   "object", "array",   "null"};
    if (auto type = schema.find("type"); type != schema.end()) {
        if (!type->is_string()) return SchemaViolation{path + "/type", "string", type_name(*type)};
        bool known = false;
        for (const char* t : kTypes) known = known || type->get_ref<const std::string&>() == t;
        if (!known) return SchemaViolation{path + "/type", "known type name", type->dump()};
    }
    if (auto en = schema.find("enum"); en != schema.end() && !en->is_array()) {
        return SchemaViolation{path + "/enum", "array", type_name(*en)};
    }
    if (auto req = schema.find("required"); req != schema.end()) {
        if (!req->is_array()) return SchemaViolation{path + "/required", "array", type_name(*req)};
        for (const auto& key : *req) {
            if (!key.is_string()) {
                return SchemaViolation{path + "/required", "string entries", key.dump()};
            }
        }
    }
    for (const char* bound : {"minimum", "maximum"}) {
        if (auto b = schema.find(bound); b != schema.end() && !b->is_number()) {
            return SchemaViolation{path + "/" + bound, "number", type_name(*b)};
        }
    }
    if (auto props = schema.find("properties"); props != schema.end()) {
        if (!props->is_object()) {
            return SchemaViolation{path + "/properties", "object", type_name(*props)};
        }
        for (const auto& [key, sub] : props->items()) {
            if (auto v = check_schema_doc(sub, path + "/properties/" + key)) return v;
        }
    }
    if (auto items = schema.find("items"); items != schema.end()) {
        if (auto v = check_schema_doc(*items, path + "/items")) return v;
    }
    return std::nullopt;
}

}  // namespace

std::optional<SchemaViolation> validate_against_schema(const nlohmann::json& doc,
                                                       const nlohmann::json& schema) {
    return validate_at(doc, schema, "");
}

std::optional<SchemaViolation> validate_schema_document(const nlohmann::json& schema) {
    return check_schema_doc(schema, "");
}

}  // namespace mcpgate
