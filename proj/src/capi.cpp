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

#include "freqca/freqca.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "freqca/analysis.hpp"
#include "freqca/cache_engine.hpp"
#include "freqca/config.hpp"
#include "freqca/reports.hpp"
#include "freqca/sweep.hpp"
#include "freqca/trajectory.hpp"

struct freqca_model {
  freqca::ToyDit impl;
};

struct freqca_cache {
  freqca::CrfCache impl;
  std::size_t rows;
  std::size_t cols;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
freqca_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return FREQCA_OK;
  } catch (const freqca::Error& e) {
    g_last_error = e.what();
    return static_cast<freqca_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FREQCA_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FREQCA_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return FREQCA_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) freqca::fail(freqca::ErrorCode::kInvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_out(char** dst, const std::string& s) {
  if (dst) *dst = dup_string(s);
}

freqca::TransformKind to_kind(freqca_transform t) {
  switch (t) {
    case FREQCA_TRANSFORM_DCT: return freqca::TransformKind::kDct;
    case FREQCA_TRANSFORM_FFT: return freqca::TransformKind::kFft;
    case FREQCA_TRANSFORM_NONE: return freqca::TransformKind::kNone;
  }
  freqca::fail(freqca::ErrorCode::kInvalidArgument, "unknown transform enum value");
}

freqca::Tensor tensor_from(const double* data, std::size_t rows, std::size_t cols, std::size_t len) {
  require(data != nullptr, "null tensor pointer");
  if (len != rows * cols) {
    freqca::fail(freqca::ErrorCode::kShapeMismatch, "buffer length " + std::to_string(len) +
                                                        " != " + std::to_string(rows) + "x" +
                                                        std::to_string(cols));
  }
  return freqca::Tensor(rows, cols, std::vector<double>(data, data + len));
}

void copy_out(const freqca::Tensor& t, double* out, std::size_t len) {
  require(out != nullptr, "null output pointer");
  if (len != t.size()) {
    freqca::fail(freqca::ErrorCode::kShapeMismatch, "output buffer length " + std::to_string(len) +
                                                        " != " + std::to_string(t.size()));
  }
  std::memcpy(out, t.values().data(), t.size() * sizeof(double));
}

}  // namespace

extern "C" {

const char* freqca_last_error(void) { return g_last_error.c_str(); }

const char* freqca_status_name(freqca_status status) {
  if (status == FREQCA_OK) return "Ok";
  if (status == FREQCA_ERR_INTERNAL) return "Internal";
  return freqca::error_code_name(static_cast<freqca::ErrorCode>(status));
}

const char* freqca_version(void) { return "0.1.0"; }

void freqca_string_free(char* s) { std::free(s); }

void freqca_model_config_default(freqca_model_config* cfg) {
  if (!cfg) return;
  const freqca::ToyDitConfig d;
  cfg->layers = d.layers;
  cfg->channels = d.channels;
  cfg->tokens = d.tokens;
  cfg->heads = d.heads;
  cfg->timestep_embedding_dim = d.timestep_embedding_dim;
  cfg->mlp_ratio = d.mlp_ratio;
  cfg->zero_init_gates = d.zero_init_gates ? 1 : 0;
  cfg->seed = d.seed;
}

freqca_status freqca_model_create(const freqca_model_config* cfg, freqca_model** out) {
  return guarded([&] {
    require(cfg && out, "null argument");
    freqca::ToyDitConfig c;
    c.layers = cfg->layers;
    c.channels = cfg->channels;
    c.tokens = cfg->tokens;
    c.heads = cfg->heads;
    c.timestep_embedding_dim = cfg->timestep_embedding_dim;
    c.mlp_ratio = cfg->mlp_ratio;
    c.zero_init_gates = cfg->zero_init_gates != 0;
    c.seed = cfg->seed;
    *out = new freqca_model{freqca::ToyDit(c)};
  });
}

void freqca_model_destroy(freqca_model* model) { delete model; }

freqca_status freqca_model_forward(const freqca_model* model, const double* x, size_t len, double t,
                                   double* out, size_t out_len) {
  return guarded([&] {
    require(model != nullptr, "null model");
    const auto input = tensor_from(x, model->impl.tokens(), model->impl.channels(), len);
    copy_out(model->impl.forward(input, t), out, out_len);
  });
}

freqca_status freqca_model_forward_trace(const freqca_model* model, const double* x, size_t len,
                                         double t, double* residuals, size_t residuals_len,
                                         double* crf, size_t crf_len) {
  return guarded([&] {
    require(model != nullptr && residuals != nullptr, "null argument");
    const auto input = tensor_from(x, model->impl.tokens(), model->impl.channels(), len);
    const auto trace = model->impl.forward_trace(input, t);
    const std::size_t per = input.size();
    if (residuals_len != trace.residuals.size() * per) {
      freqca::fail(freqca::ErrorCode::kShapeMismatch, "residual buffer must hold 2 * layers tensors");
    }
    for (std::size_t i = 0; i < trace.residuals.size(); ++i) {
      std::memcpy(residuals + i * per, trace.residuals[i].values().data(), per * sizeof(double));
    }
    copy_out(trace.crf, crf, crf_len);
  });
}

freqca_status freqca_split_bands(const double* z, size_t rows, size_t cols, double cutoff,
                                 freqca_transform transform, double* low, double* high) {
  return guarded([&] {
    const auto split = freqca::split_bands(tensor_from(z, rows, cols, rows * cols), cutoff, to_kind(transform));
    copy_out(split.low, low, rows * cols);
    copy_out(split.high, high, rows * cols);
  });
}

freqca_status freqca_cache_create(const freqca_cache_config* cfg, size_t rows, size_t cols,
                                  freqca_cache** out) {
  return guarded([&] {
    require(cfg && out, "null argument");
    require(rows > 0 && cols > 0, "cache tensor shape must be nonempty");
    freqca::CacheConfig check{1, cfg->low_order, cfg->high_order, cfg->cutoff, to_kind(cfg->transform)};
    freqca::validate(check);
    *out = new freqca_cache{
        freqca::CrfCache(cfg->low_order, cfg->high_order, cfg->cutoff, to_kind(cfg->transform)), rows, cols};
  });
}

void freqca_cache_destroy(freqca_cache* cache) { delete cache; }

freqca_status freqca_cache_record_full(freqca_cache* cache, int64_t step, const double* crf, size_t len) {
  return guarded([&] {
    require(cache != nullptr, "null cache");
    cache->impl.record_full(step, tensor_from(crf, cache->rows, cache->cols, len));
  });
}

freqca_status freqca_cache_reconstruct(const freqca_cache* cache, int64_t step, int32_t low_order,
                                       int32_t high_order, double* out, size_t len) {
  return guarded([&] {
    require(cache != nullptr, "null cache");
    copy_out(cache->impl.reconstruct(step, low_order, high_order).value, out, len);
  });
}

freqca_status freqca_cache_units(const freqca_cache* cache, size_t* units) {
  return guarded([&] {
    require(cache && units, "null argument");
    *units = cache->impl.unit_count();
  });
}

freqca_status freqca_compute_cost_ledger(int32_t layers, int32_t order, int32_t interval, double full_cost,
                                         double pred_cost, freqca_cost_ledger* out) {
  return guarded([&] {
    require(out != nullptr, "null ledger");
    const auto l = freqca::cost_ledger(layers, order, interval, full_cost, pred_cost);
    *out = freqca_cost_ledger{l.full_cost, l.pred_cost, l.average_cost, l.speedup,
                              l.cache_units_freqca, l.cache_units_layerwise, l.ratio};
  });
}

freqca_status freqca_run_json(const char* config_json, const char* method, char** report_json,
                              char** report_csv) {
  return guarded([&] {
    require(config_json != nullptr, "null config");
    const auto cfg = freqca::parse_run_config_text(config_json);
    const auto m = freqca::parse_method(method ? method : "freqca");
    const auto report = freqca::run_method(cfg, m);
    const std::string json = freqca::run_report_json(report, cfg).dump(2);
    const std::string csv = freqca::run_report_csv(report);
    set_out(report_json, json);
    set_out(report_csv, csv);
  });
}

freqca_status freqca_sweep_json(const char* grid_json, int32_t threads, char** report_json,
                                char** report_csv) {
  return guarded([&] {
    require(grid_json != nullptr, "null grid");
    const auto grid = freqca::parse_sweep_grid_text(grid_json);
    const auto cells = freqca::run_sweep(grid, threads > 0 ? threads : freqca::default_sweep_threads());
    set_out(report_json, freqca::sweep_report_json(grid, cells).dump(2));
    set_out(report_csv, freqca::sweep_report_csv(cells));
  });
}

freqca_status freqca_dump_trajectory(const char* config_json, const char* path) {
  return guarded([&] {
    require(config_json && path, "null argument");
    const auto cfg = freqca::parse_run_config_text(config_json);
    freqca::Trajectory traj;
    traj.seed = cfg.sampler.noise_seed;
    traj.config_hash = freqca::config_hash(cfg);
    traj.tokens = static_cast<std::size_t>(cfg.model.tokens);
    traj.channels = static_cast<std::size_t>(cfg.model.channels);
    traj.steps = freqca::ground_truth_features(cfg);
    freqca::dump_trajectory(traj, path);
  });
}

freqca_status freqca_analyze_file(const char* trajectory_path, const char* intervals, double cutoff,
                                  const char* transform, char** report_json, char** similarity_csv,
                                  char** pca_csv) {
  return guarded([&] {
    require(trajectory_path != nullptr, "null trajectory path");
    const auto kinds = freqca::parse_intervals(intervals ? intervals : "1..10");
    const auto kind = freqca::parse_transform(transform ? transform : "dct");
    const auto traj = freqca::load_trajectory(trajectory_path);
    const auto report = freqca::analyze_frequency_dynamics(traj.steps, kinds, cutoff, kind);
    set_out(report_json, freqca::dynamics_report_json(report).dump(2));
    set_out(similarity_csv, freqca::dynamics_similarity_csv(report));
    set_out(pca_csv, freqca::dynamics_pca_csv(report));
  });
}

freqca_status freqca_validate_report(const char* report_json, const char* schema) {
  return guarded([&] {
    require(report_json && schema, "null argument");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(report_json);
    } catch (const nlohmann::json::exception& e) {
      freqca::fail(freqca::ErrorCode::kFormatError, std::string("report is not JSON: ") + e.what());
    }
    const auto errors = freqca::validate_against_schema(doc, freqca::report_schema(schema));
    if (!errors.empty()) {
      std::string msg = "report violates schema:";
      for (const auto& e : errors) msg += "\n  " + e;
      freqca::fail(freqca::ErrorCode::kFormatError, msg);
    }
  });
}

}  // extern "C"
