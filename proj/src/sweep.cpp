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

#include "freqca/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "freqca/reports.hpp"

namespace freqca {
namespace {

using nlohmann::json;

template <typename T, typename Parse>
std::vector<T> axis(const json& grid, const char* key, T fallback, Parse parse) {
  if (!grid.contains(key)) return {fallback};
  const json& v = grid.at(key);
  if (!v.is_array() || v.empty()) {
    fail(ErrorCode::kConfigError, std::string("config field 'grid.") + key + "': expected a non-empty array");
  }
  std::vector<T> out;
  for (const json& item : v) out.push_back(parse(item, std::string("grid.") + key));
  return out;
}

int parse_int_item(const json& item, const std::string& path) {
  if (!item.is_number_integer()) fail(ErrorCode::kConfigError, "config field '" + path + "': expected integers");
  return item.get<int>();
}

std::size_t cell_units(const SweepCell& c) {
  return static_cast<std::size_t>(c.low_order + 1 + c.high_order + 1);
}

// True when a should be preferred over b.
bool better(const SweepCell& a, const SweepCell& b) {
  const double ma = a.summary.mean_mse;
  const double mb = b.summary.mean_mse;
  const double scale = std::max(std::abs(ma), std::abs(mb));
  if (std::abs(ma - mb) > 1e-9 * scale) return ma < mb;
  if (cell_units(a) != cell_units(b)) return cell_units(a) < cell_units(b);
  if (a.low_order + a.high_order != b.low_order + b.high_order) {
    return a.low_order + a.high_order < b.low_order + b.high_order;
  }
  return a.low_order < b.low_order;
}

}  // namespace

SweepGrid parse_sweep_grid(const json& doc) {
  if (!doc.is_object()) fail(ErrorCode::kConfigError, "config field '<root>': expected an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "base" && key != "grid") fail(ErrorCode::kConfigError, "config field '" + key + "': unknown key");
  }
  if (!doc.contains("base")) fail(ErrorCode::kConfigError, "config field 'base': missing");
  SweepGrid grid;
  grid.base = parse_run_config(doc.at("base"));
  const json empty = json::object();
  const json& g = doc.contains("grid") ? doc.at("grid") : empty;
  if (!g.is_object()) fail(ErrorCode::kConfigError, "config field 'grid': expected an object");
  for (const auto& [key, _] : g.items()) {
    if (key != "transforms" && key != "low_orders" && key != "high_orders" && key != "intervals") {
      fail(ErrorCode::kConfigError, "config field 'grid." + key + "': unknown key");
    }
  }
  grid.transforms = axis<TransformKind>(g, "transforms", grid.base.policy.transform,
                                        [](const json& item, const std::string& path) {
                                          if (!item.is_string()) {
                                            fail(ErrorCode::kConfigError, "config field '" + path + "': expected strings");
                                          }
                                          try {
                                            return parse_transform(item.get<std::string>());
                                          } catch (const Error& e) {
                                            fail(ErrorCode::kConfigError, "config field '" + path + "': " + e.what());
                                          }
                                        });
  grid.low_orders = axis<int>(g, "low_orders", grid.base.policy.low_order, parse_int_item);
  grid.high_orders = axis<int>(g, "high_orders", grid.base.policy.high_order, parse_int_item);
  grid.intervals = axis<int>(g, "intervals", grid.base.policy.interval, parse_int_item);

  // Validate every cell's policy up front.
  for (TransformKind t : grid.transforms) {
    for (int lo : grid.low_orders) {
      for (int hi : grid.high_orders) {
        for (int n : grid.intervals) {
          json cell = config_to_json(grid.base);
          cell["policy"]["transform"] = transform_name(t);
          cell["policy"]["low_order"] = lo;
          cell["policy"]["high_order"] = hi;
          cell["policy"]["interval"] = n;
          parse_run_config(cell);
        }
      }
    }
  }
  return grid;
}

SweepGrid parse_sweep_grid_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfigError, std::string("grid is not valid JSON: ") + e.what());
  }
  return parse_sweep_grid(doc);
}

RunConfig cell_config(const SweepGrid& grid, const SweepCell& cell) {
  RunConfig cfg = grid.base;
  cfg.policy.transform = cell.transform;
  cfg.policy.low_order = cell.low_order;
  cfg.policy.high_order = cell.high_order;
  cfg.policy.interval = cell.interval;
  return cfg;
}

int default_sweep_threads() {
  if (const char* env = std::getenv("FREQCA_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<SweepCell> run_sweep(const SweepGrid& grid, int threads) {
  std::vector<SweepCell> cells;
  for (TransformKind t : grid.transforms) {
    for (int lo : grid.low_orders) {
      for (int hi : grid.high_orders) {
        for (int n : grid.intervals) cells.push_back(SweepCell{t, lo, hi, n, {}, false});
      }
    }
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        cells[i].summary = run_method(cell_config(grid, cells[i]), Method::kFreqca).summary;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int count = std::clamp(threads, 1, static_cast<int>(cells.size()));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::map<int, std::size_t> best;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto it = best.find(cells[i].interval);
    if (it == best.end() || better(cells[i], cells[it->second])) best[cells[i].interval] = i;
  }
  for (const auto& [_, idx] : best) cells[idx].best = true;
  return cells;
}

nlohmann::ordered_json sweep_report_json(const SweepGrid& grid, const std::vector<SweepCell>& cells) {
  nlohmann::ordered_json out;
  out["report"] = "sweep";
  out["version"] = kReportVersion;
  out["base"] = config_to_json(grid.base);
  auto arr = nlohmann::ordered_json::array();
  for (const SweepCell& c : cells) {
    nlohmann::ordered_json j;
    j["transform"] = transform_name(c.transform);
    j["low_order"] = c.low_order;
    j["high_order"] = c.high_order;
    j["interval"] = c.interval;
    j["best"] = c.best;
    j["summary"] = {{"mean_mse", c.summary.mean_mse},
                    {"final_state_mse", c.summary.final_state_mse},
                    {"speedup", c.summary.speedup},
                    {"total_flops", c.summary.total_flops},
                    {"peak_cache_units", c.summary.peak_cache_units},
                    {"full_steps", c.summary.full_steps},
                    {"predicted_steps", c.summary.predicted_steps},
                    {"full_cost", c.summary.full_cost},
                    {"pred_cost", c.summary.pred_cost}};
    arr.push_back(std::move(j));
  }
  out["cells"] = std::move(arr);
  return out;
}

std::string sweep_report_csv(const std::vector<SweepCell>& cells) {
  std::ostringstream os;
  os << "transform,low_order,high_order,interval,mean_mse,final_state_mse,speedup,total_flops,"
        "peak_cache_units,best\n";
  for (const SweepCell& c : cells) {
    os << transform_name(c.transform) << ',' << c.low_order << ',' << c.high_order << ',' << c.interval
       << ',' << format_double(c.summary.mean_mse) << ',' << format_double(c.summary.final_state_mse)
       << ',' << format_double(c.summary.speedup) << ',' << c.summary.total_flops << ','
       << c.summary.peak_cache_units << ',' << (c.best ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace freqca
