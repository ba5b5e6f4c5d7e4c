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
#include <vector>

#include <json.hpp>

#include "freqca/config.hpp"

namespace freqca {

// Ablation grid. JSON: {"base": <run config>, "grid": {"transforms": [...],
// "low_orders": [...], "high_orders": [...], "intervals": [...]}}; any
// missing axis falls back to the base policy value.
struct SweepGrid {
  RunConfig base;
  std::vector<TransformKind> transforms;
  std::vector<int> low_orders;
  std::vector<int> high_orders;
  std::vector<int> intervals;
};

struct SweepCell {
  TransformKind transform = TransformKind::kDct;
  int low_order = 0;
  int high_order = 0;
  int interval = 1;
  RunSummary summary;
  bool best = false;
};

SweepGrid parse_sweep_grid(const nlohmann::json& doc);
SweepGrid parse_sweep_grid_text(const std::string& text);

RunConfig cell_config(const SweepGrid& grid, const SweepCell& cell);

// Thread count from FREQCA_THREADS, else hardware concurrency (>= 1).
int default_sweep_threads();

/// Runs every cell (up to `threads` at a time) and flags the best cell per
/// interval: lowest mean_mse, where cells within a relative 1e-9 of each
/// other tie and the tie goes to fewer cache units, then lower total order,
/// then lower low order.
std::vector<SweepCell> run_sweep(const SweepGrid& grid, int threads);

nlohmann::ordered_json sweep_report_json(const SweepGrid& grid, const std::vector<SweepCell>& cells);
// transform,low_order,high_order,interval,mean_mse,final_state_mse,speedup,
// total_flops,peak_cache_units,best
std::string sweep_report_csv(const std::vector<SweepCell>& cells);

}  // namespace freqca
