/* Copyright 2026 The FreqCa Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <freqca/schemas.hpp>

#include "freqca/reports.hpp"

namespace freqca {
namespace {

using nlohmann::json;

bool matches_type(const json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  if (type == "integer") return v.is_number_integer();
  if (type == "number") return v.is_number();
  return false;
}

void check_node(const json& v, const json& schema, const std::string& path,
                std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const json& t = schema.at("type");
    bool ok = false;
    if (t.is_string()) {
      ok = matches_type(v, t.get<std::string>());
    } else {
      for (const json& alt : t) ok = ok || matches_type(v, alt.get<std::string>());
    }
    if (!ok) {
      errors.push_back(path + ": expected type " + t.dump());
      return;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const json& option : schema.at("enum")) found = found || option == v;
    if (!found) errors.push_back(path + ": value " + v.dump() + " not in " + schema.at("enum").dump());
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if (schema.contains("minimum") && x < schema.at("minimum").get<double>()) {
      errors.push_back(path + ": " + v.dump() + " below minimum");
    }
    if (schema.contains("maximum") && x > schema.at("maximum").get<double>()) {
      errors.push_back(path + ": " + v.dump() + " above maximum");
    }
  }
  if (v.is_object()) {
    if (schema.contains("required")) {
      for (const json& key : schema.at("required")) {
        if (!v.contains(key.get<std::string>())) {
          errors.push_back(path + ": missing required key '" + key.get<std::string>() + "'");
        }
      }
    }
    const json* props = schema.contains("properties") ? &schema.at("properties") : nullptr;
    const bool closed = schema.contains("additionalProperties") &&
                        schema.at("additionalProperties").is_boolean() &&
                        !schema.at("additionalProperties").get<bool>();
    for (const auto& [key, child] : v.items()) {
      if (props && props->contains(key)) {
        check_node(child, props->at(key), path + "." + key, errors);
      } else if (closed) {
        errors.push_back(path + ": unexpected key '" + key + "'");
      }
    }
  }
  if (v.is_array()) {
    if (schema.contains("minItems") && v.size() < schema.at("minItems").get<std::size_t>()) {
      errors.push_back(path + ": fewer than " + schema.at("minItems").dump() + " items");
    }
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        check_node(v[i], schema.at("items"), path + "[" + std::to_string(i) + "]", errors);
      }
    }
  }
}

}  // namespace

const json& report_schema(std::string_view name) {
  static const json run = json::parse(schemas::kRunReport);
  static const json sweep = json::parse(schemas::kSweepReport);
  static const json analyze = json::parse(schemas::kAnalyzeReport);
  if (name == "run") return run;
  if (name == "sweep") return sweep;
  if (name == "analyze") return analyze;
  fail(ErrorCode::kInvalidArgument, "unknown report schema '" + std::string(name) + "'");
}

std::vector<std::string> validate_against_schema(const json& doc, const json& schema) {
  std::vector<std::string> errors;
  check_node(doc, schema, "$", errors);
  return errors;
}

}  // namespace freqca
