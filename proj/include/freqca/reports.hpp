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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "freqca/cache_engine.hpp"
#include "freqca/config.hpp"

namespace freqca {

inline constexpr int kReportVersion = 1;

nlohmann::ordered_json run_report_json(const RunReport& report, const RunConfig& cfg);

// Columns: step,kind,mse_vs_truth,cosine_vs_truth,state_mse_vs_truth,
// effective_low_order,effective_high_order,flops,cache_units,cache_capacity
std::string run_report_csv(const RunReport& report);

std::string format_double(double v);

// Schemas: "run", "sweep", "analyze".
const nlohmann::json& report_schema(std::string_view name);

/// Checks a document against a JSON schema subset (type, enum, required,
/// properties, additionalProperties, items, minItems, minimum, maximum).
/// Returns one message per violation; empty means valid.
std::vector<std::string> validate_against_schema(const nlohmann::json& doc, const nlohmann::json& schema);

}  // namespace freqca
