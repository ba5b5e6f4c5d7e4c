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

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "freqca/analysis.hpp"
#include "freqca/config.hpp"
#include "freqca/reports.hpp"
#include "freqca/sweep.hpp"
#include "oracles.hpp"

using freqca::ErrorCode;
using freqca::Method;
using freqca::Tensor;
using freqca::TransformKind;
using nlohmann::json;

namespace {

json default_config() {
  std::ifstream in(std::string(FREQCA_CONFIG_DIR) + "/default.json");
  REQUIRE(in.good());
  return json::parse(in);
}

json small_config() {
  json cfg = default_config();
  cfg["model"] = {{"layers", 3}, {"channels", 32}, {"tokens", 8}, {"heads", 4}, {"seed", 42}};
  cfg["sampler"] = {{"steps", 20}, {"noise_seed", 42}};
  return cfg;
}

std::string config_error(const json& doc) {
  try {
    freqca::parse_run_config(doc);
  } catch (const freqca::Error& e) {
    CHECK(e.code() == ErrorCode::kConfigError);
    return e.what();
  }
  FAIL("expected ConfigError");
  return {};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("config errors name the offending field") {
  json cfg = default_config();
  cfg["policy"]["transform"] = "wavelet";
  CHECK(contains(config_error(cfg), "policy.transform"));

  cfg = default_config();
  cfg["model"].erase("seed");
  CHECK(contains(config_error(cfg), "model.seed"));

  cfg = default_config();
  cfg["policy"]["colour"] = 1;
  CHECK(contains(config_error(cfg), "policy.colour"));

  cfg = default_config();
  cfg["policy"]["high_order"] = 4;
  CHECK(contains(config_error(cfg), "policy.high_order"));

  cfg = default_config();
  cfg["model"]["heads"] = 5;
  CHECK(contains(config_error(cfg), "model"));

  cfg = default_config();
  cfg["sampler"]["steps"] = "fifty";
  CHECK(contains(config_error(cfg), "sampler.steps"));

  CHECK_THROWS_AS(freqca::parse_run_config_text("{not json"), freqca::Error);
}

TEST_CASE("config round trips through its canonical form") {
  const auto cfg = freqca::parse_run_config(default_config());
  CHECK(cfg.model.layers == 8);
  CHECK(cfg.policy.interval == 5);
  CHECK(cfg.policy.transform == TransformKind::kDct);
  const auto again = freqca::parse_run_config(json::parse(freqca::config_to_json(cfg).dump()));
  CHECK(freqca::config_hash(again) == freqca::config_hash(cfg));
  auto other = cfg;
  other.sampler.noise_seed = 7;
  CHECK(freqca::config_hash(other) != freqca::config_hash(cfg));
}

TEST_CASE("baseline methods map onto cache policies") {
  freqca::CacheConfig p;
  p.high_order = 2;
  const auto fora = freqca::method_policy(p, Method::kFora);
  CHECK(fora.transform == TransformKind::kNone);
  CHECK(fora.low_order == 0);
  CHECK(fora.high_order == 0);
  const auto taylor = freqca::method_policy(p, Method::kTaylor);
  CHECK(taylor.low_order == 2);
  CHECK(taylor.transform == TransformKind::kNone);
  CHECK(freqca::parse_method("layerwise") == Method::kLayerwise);
  CHECK_THROWS_AS(freqca::parse_method("tea"), freqca::Error);
}

TEST_CASE("default run holds four cache units and beats reuse") {
  const auto cfg = freqca::parse_run_config(default_config());
  const auto fq = freqca::run_method(cfg, Method::kFreqca);
  const auto fora = freqca::run_method(cfg, Method::kFora);
  CHECK(fq.summary.peak_cache_units == 4);
  CHECK(fq.summary.mean_mse <= fora.summary.mean_mse);

  const auto doc = freqca::run_report_json(fq, cfg);
  CHECK(freqca::validate_against_schema(json::parse(doc.dump()), freqca::report_schema("run")).empty());
  CHECK(doc.at("per_step").size() == 50);
  CHECK(doc.at("summary").at("peak_cache_units") == 4);
  CHECK(doc.dump() == freqca::run_report_json(freqca::run_method(cfg, Method::kFreqca), cfg).dump());

  const std::string csv = freqca::run_report_csv(fq);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 51);
}

TEST_CASE("schema validation catches malformed reports") {
  const auto cfg = freqca::parse_run_config(small_config());
  auto doc = json::parse(freqca::run_report_json(freqca::run_method(cfg, Method::kFreqca), cfg).dump());
  const json& schema = freqca::report_schema("run");
  CHECK(freqca::validate_against_schema(doc, schema).empty());
  auto missing = doc;
  missing["summary"].erase("mean_mse");
  CHECK_FALSE(freqca::validate_against_schema(missing, schema).empty());
  auto wrong_kind = doc;
  wrong_kind["per_step"][0]["kind"] = "sometimes";
  CHECK_FALSE(freqca::validate_against_schema(wrong_kind, schema).empty());
  auto extra = doc;
  extra["surprise"] = true;
  CHECK_FALSE(freqca::validate_against_schema(extra, schema).empty());
  CHECK_THROWS_AS(freqca::report_schema("nope"), freqca::Error);
}

TEST_CASE("interval lists") {
  CHECK(freqca::parse_intervals("1..4") == std::vector<int>{1, 2, 3, 4});
  CHECK(freqca::parse_intervals("1,3,5") == std::vector<int>{1, 3, 5});
  CHECK(freqca::parse_intervals("2,4..5") == std::vector<int>{2, 4, 5});
  for (const char* bad : {"", "0", "a", "3..1", "1,,2", "-2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(freqca::parse_intervals(bad), freqca::Error);
  }
}

TEST_CASE("constant trajectory is perfectly self-similar") {
  oracle::Random rng(173);
  const std::vector<Tensor> traj(12, rng.tensor(4, 32));
  const auto report = freqca::analyze_frequency_dynamics(traj, {1, 2, 5}, 0.25, TransformKind::kDct);
  for (std::size_t t = 0; t < 12; ++t) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (!report.low_similarity[t][i]) continue;
      CHECK(*report.low_similarity[t][i] == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(*report.high_similarity[t][i] == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK_FALSE(report.low_similarity[11][0].has_value());
  CHECK(report.low_similarity[6][2].has_value());
  CHECK(report.pca_low_degenerate);
  CHECK(report.pca_low.size() == 12);
}

TEST_CASE("constant low band with noisy high band") {
  oracle::Random rng(179);
  const std::size_t c = 64;
  const Tensor base = freqca::split_bands(rng.tensor(16, c), 0.25, TransformKind::kDct).low;
  std::vector<Tensor> traj;
  for (int t = 0; t < 30; ++t) {
    const Tensor noise = freqca::split_bands(rng.tensor(16, c), 0.25, TransformKind::kDct).high;
    traj.push_back(base + noise);
  }
  const auto report = freqca::analyze_frequency_dynamics(traj, {1, 3}, 0.25, TransformKind::kDct);
  for (std::size_t t = 0; t < 30; ++t) {
    for (std::size_t i = 0; i < 2; ++i) {
      if (!report.low_similarity[t][i]) continue;
      CHECK(*report.low_similarity[t][i] == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(*report.high_similarity[t][i]) <= 0.2);
    }
  }
}

TEST_CASE("toy trajectory analysis is well formed") {
  const auto cfg = freqca::parse_run_config(small_config());
  const auto features = freqca::ground_truth_features(cfg);
  const auto report = freqca::analyze_frequency_dynamics(features, freqca::parse_intervals("1..5"), 0.25,
                                                         TransformKind::kFft);
  CHECK(report.pca_low.size() == 20);
  CHECK(report.pca_high.size() == 20);
  for (const auto& row : report.low_similarity) {
    for (const auto& v : row) {
      if (v) CHECK(std::abs(*v) <= 1.0);
    }
  }
  const auto doc = json::parse(freqca::dynamics_report_json(report).dump());
  CHECK(freqca::validate_against_schema(doc, freqca::report_schema("analyze")).empty());
  const std::string sim = freqca::dynamics_similarity_csv(report);
  CHECK(sim.rfind("step,interval,low_similarity,high_similarity\n", 0) == 0);
  const std::string pca = freqca::dynamics_pca_csv(report);
  CHECK(std::count(pca.begin(), pca.end(), '\n') == 21);
}

TEST_CASE("a single-cell sweep reproduces the run") {
  json grid;
  grid["base"] = small_config();
  grid["grid"] = {{"transforms", {"fft"}}, {"low_orders", {1}}, {"high_orders", {2}}, {"intervals", {4}}};
  const auto parsed = freqca::parse_sweep_grid(grid);
  const auto cells = freqca::run_sweep(parsed, 2);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].best);

  json run = small_config();
  run["policy"]["transform"] = "fft";
  run["policy"]["low_order"] = 1;
  run["policy"]["interval"] = 4;
  const auto report = freqca::run_method(freqca::parse_run_config(run), Method::kFreqca);
  CHECK(cells[0].summary.mean_mse == report.summary.mean_mse);
  CHECK(cells[0].summary.final_state_mse == report.summary.final_state_mse);
  CHECK(cells[0].summary.speedup == report.summary.speedup);
  CHECK(cells[0].summary.total_flops == report.summary.total_flops);
  CHECK(cells[0].summary.peak_cache_units == report.summary.peak_cache_units);

  const auto doc = json::parse(freqca::sweep_report_json(parsed, cells).dump());
  CHECK(freqca::validate_against_schema(doc, freqca::report_schema("sweep")).empty());
  const std::string csv = freqca::sweep_report_csv(cells);
  CHECK(csv.rfind("transform,low_order,high_order,interval,mean_mse,final_state_mse,speedup,total_flops,"
                  "peak_cache_units,best\n", 0) == 0);
}

TEST_CASE("sweep on the synthetic host picks reuse low and quadratic high") {
  json grid;
  grid["base"] = small_config();
  grid["base"]["host"] = "synthetic";
  grid["grid"] = {{"transforms", {"dct"}},
                  {"low_orders", {0, 1, 2}},
                  {"high_orders", {0, 1, 2}},
                  {"intervals", {3, 5}}};
  const auto cells = freqca::run_sweep(freqca::parse_sweep_grid(grid), 4);
  REQUIRE(cells.size() == 18);
  int best = 0;
  for (const auto& c : cells) {
    if (!c.best) continue;
    ++best;
    CHECK(c.low_order == 0);
    CHECK(c.high_order == 2);
  }
  CHECK(best == 2);
}

TEST_CASE("none transform ignores the high order") {
  json grid;
  grid["base"] = small_config();
  grid["grid"] = {{"transforms", {"none"}}, {"low_orders", {0}}, {"high_orders", {0, 1, 2}}, {"intervals", {4}}};
  const auto cells = freqca::run_sweep(freqca::parse_sweep_grid(grid), 3);
  REQUIRE(cells.size() == 3);
  for (const auto& c : cells) {
    CHECK(std::abs(c.summary.mean_mse - cells[0].summary.mean_mse) <= 1e-9);
    CHECK(std::abs(c.summary.final_state_mse - cells[0].summary.final_state_mse) <= 1e-9);
  }
  // Ties go to the smallest cache.
  CHECK(cells[0].best);
}

TEST_CASE("sweep results do not depend on the thread count") {
  json grid;
  grid["base"] = small_config();
  grid["grid"] = {{"transforms", {"dct", "fft"}}, {"low_orders", {0}}, {"high_orders", {1, 2}}, {"intervals", {3, 5}}};
  const auto parsed = freqca::parse_sweep_grid(grid);
  const auto serial = freqca::run_sweep(parsed, 1);
  const auto parallel = freqca::run_sweep(parsed, 4);
  CHECK(freqca::sweep_report_csv(serial) == freqca::sweep_report_csv(parallel));
}

TEST_CASE("sweep grids are validated up front") {
  json grid;
  grid["base"] = small_config();
  grid["grid"] = {{"transforms", {"dct"}}, {"low_orders", {0}}, {"high_orders", {5}}, {"intervals", {3}}};
  CHECK_THROWS_AS(freqca::parse_sweep_grid(grid), freqca::Error);
  grid["grid"]["high_orders"] = {2};
  grid["grid"]["intervals"] = {0};
  CHECK_THROWS_AS(freqca::parse_sweep_grid(grid), freqca::Error);
  grid["grid"]["intervals"] = {3};
  grid["grid"]["transforms"] = {"wavelet"};
  CHECK_THROWS_AS(freqca::parse_sweep_grid(grid), freqca::Error);
}
