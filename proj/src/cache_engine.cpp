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

#include "freqca/cache_engine.hpp"

#include <algorithm>
#include <span>
#include <string>

#include "freqca/numerics.hpp"

namespace freqca {
namespace {

void check_order(int order, const char* what) {
  if (order < 0 || order > kMaxHermiteOrder) {
    fail(ErrorCode::kOrderTooHigh, std::string(what) + " " + std::to_string(order) +
                                       " outside [0, " + std::to_string(kMaxHermiteOrder) + "]");
  }
}

void push_bounded(std::deque<HistoryEntry>& ring, std::size_t capacity, std::int64_t step, Tensor value) {
  ring.push_back(HistoryEntry{step, std::move(value)});
  while (ring.size() > capacity) ring.pop_front();
}

}  // namespace

void validate(const CacheConfig& cfg) {
  if (cfg.interval < 1) fail(ErrorCode::kInvalidInterval, "interval must be >= 1");
  check_order(cfg.low_order, "low_order");
  check_order(cfg.high_order, "high_order");
  if (!(cfg.cutoff > 0.0 && cfg.cutoff < 1.0)) {
    fail(ErrorCode::kInvalidCutoff, "cutoff " + std::to_string(cfg.cutoff) + " outside (0, 1)");
  }
}

CrfCache::CrfCache(int low_order, int high_order, double cutoff, TransformKind transform)
    : cutoff_(cutoff), transform_(transform) {
  check_order(low_order, "low_order");
  check_order(high_order, "high_order");
  low_capacity_ = static_cast<std::size_t>(low_order) + 1;
  high_capacity_ = static_cast<std::size_t>(high_order) + 1;
}

std::int64_t CrfCache::last_step() const {
  if (high_ring_.empty()) fail(ErrorCode::kEmptyCache, "cache holds no full steps");
  return high_ring_.back().step;
}

void CrfCache::record_full(std::int64_t step, const Tensor& crf) {
  if (!high_ring_.empty()) {
    if (step <= high_ring_.back().step) {
      fail(ErrorCode::kNonMonotoneStep, "record_full: step " + std::to_string(step) +
                                            " is not after " + std::to_string(high_ring_.back().step));
    }
    require_same_shape(high_ring_.back().value, crf, "record_full");
  }
  BandSplit split = split_bands(crf, cutoff_, transform_);
  push_bounded(low_ring_, low_capacity_, step, std::move(split.low));
  push_bounded(high_ring_, high_capacity_, step, std::move(split.high));
}

int forecast_ring(const std::deque<HistoryEntry>& ring, std::int64_t step, int order, Tensor& out) {
  if (ring.empty()) fail(ErrorCode::kEmptyCache, "forecast from an empty ring");
  int effective = std::min(order, static_cast<int>(ring.size()) - 1);
  while (effective > 0) {
    const std::vector<HistoryEntry> window(ring.end() - (effective + 1), ring.end());
    try {
      out = predict(fit_hermite(window, effective), step);
      return effective;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kRankDeficient && e.code() != ErrorCode::kInsufficientHistory) throw;
      --effective;
    }
  }
  // Order 0 over a single-entry window is literal reuse.
  out = ring.back().value;
  return 0;
}

CrfCache::Reconstruction CrfCache::reconstruct(std::int64_t step, int low_order, int high_order) const {
  if (empty()) fail(ErrorCode::kEmptyCache, "reconstruct: cache is empty");
  if (step <= last_step()) {
    fail(ErrorCode::kBackwardPrediction, "reconstruct: step " + std::to_string(step) +
                                             " is not after last full step " +
                                             std::to_string(last_step()));
  }
  check_order(low_order, "low_order");
  check_order(high_order, "high_order");
  Reconstruction out;
  Tensor high;
  out.low_order = forecast_ring(low_ring_, step, low_order, out.value);
  out.high_order = forecast_ring(high_ring_, step, high_order, high);
  out.value += high;
  return out;
}

const char* step_kind_name(StepKind kind) { return kind == StepKind::kFull ? "full" : "predicted"; }

int SchedulerPlan::full_count() const {
  return static_cast<int>(std::count(kinds.begin(), kinds.end(), StepKind::kFull));
}

SchedulerPlan build_plan(int total_steps, int interval) {
  if (total_steps < 1) fail(ErrorCode::kInvalidInterval, "total steps must be >= 1");
  if (interval < 1 || interval > total_steps) {
    fail(ErrorCode::kInvalidInterval, "interval " + std::to_string(interval) + " outside [1, " +
                                          std::to_string(total_steps) + "]");
  }
  SchedulerPlan plan{total_steps, interval, {}};
  plan.kinds.reserve(static_cast<std::size_t>(total_steps));
  for (int k = 0; k < total_steps; ++k) {
    plan.kinds.push_back(k % interval == 0 ? StepKind::kFull : StepKind::kPredicted);
  }
  return plan;
}

CostLedger cost_ledger(int layers, int order, int interval, double full_cost, double pred_cost,
                       int streams_per_layer) {
  if (layers < 1 || interval < 1 || order < 0 || streams_per_layer < 1 || !(full_cost > 0.0) ||
      pred_cost < 0.0) {
    fail(ErrorCode::kInvalidArgument, "cost_ledger: inputs must be positive");
  }
  CostLedger l;
  l.full_cost = full_cost;
  l.pred_cost = pred_cost;
  l.layers = layers;
  l.order = order;
  l.interval = interval;
  l.streams_per_layer = streams_per_layer;
  const double inv = 1.0 / static_cast<double>(interval);
  l.average_cost = inv * full_cost + (1.0 - inv) * pred_cost;
  // Same value as full_cost / average_cost.
  const double n = static_cast<double>(interval);
  l.speedup = n / (1.0 + (n - 1.0) * (pred_cost / full_cost));
  l.cache_units_layerwise = static_cast<long>(streams_per_layer) * (order + 1) * layers;
  // One reused low-band slot plus order + 1 high-band states.
  l.cache_units_freqca = 1 + (order + 1);
  l.ratio = static_cast<double>(l.cache_units_freqca) / static_cast<double>(l.cache_units_layerwise);
  return l;
}

std::uint64_t freqca_predicted_step_macs(std::size_t tokens, std::size_t channels,
                                         const CacheConfig& cfg) {
  const std::uint64_t elements = static_cast<std::uint64_t>(tokens) * channels;
  const std::uint64_t split =
      static_cast<std::uint64_t>(tokens) * 2 * transform_macs(channels, cfg.transform) + elements;
  const std::uint64_t low = fit_and_eval_macs(static_cast<std::size_t>(cfg.low_order) + 1,
                                              cfg.low_order, elements);
  const std::uint64_t high = fit_and_eval_macs(static_cast<std::size_t>(cfg.high_order) + 1,
                                               cfg.high_order, elements);
  return split + low + high + elements;
}

std::uint64_t layerwise_predicted_step_macs(std::size_t tokens, std::size_t channels, int layers,
                                            int order) {
  const std::uint64_t elements = static_cast<std::uint64_t>(tokens) * channels;
  const auto streams = 2 * static_cast<std::uint64_t>(layers);
  return streams * (fit_and_eval_macs(static_cast<std::size_t>(order) + 1, order, elements) + elements);
}

namespace {

void check_plan(const Denoiser& model, const SchedulerPlan& plan) {
  if (plan.total_steps < 1 || plan.kinds.size() != static_cast<std::size_t>(plan.total_steps)) {
    fail(ErrorCode::kInvalidInterval, "malformed scheduler plan");
  }
  if (plan.kinds.front() != StepKind::kFull) fail(ErrorCode::kInvalidInterval, "step 0 must be full");
  if (model.tokens() == 0 || model.channels() == 0) fail(ErrorCode::kInvalidConfig, "empty model");
}

void finish_report(RunReport& report, const SampleResult& cached, const SampleResult& truth) {
  RunSummary& s = report.summary;
  double mse_sum = 0.0;
  for (std::size_t k = 0; k < report.per_step.size(); ++k) {
    StepMetrics& m = report.per_step[k];
    m.state_mse_vs_truth = mean_squared_error(cached.states[k + 1], truth.states[k + 1]);
    mse_sum += m.mse_vs_truth;
    s.total_flops += m.flops;
    s.peak_cache_units = std::max(s.peak_cache_units, m.cache_units);
    (m.kind == StepKind::kFull ? s.full_steps : s.predicted_steps)++;
  }
  const auto steps = static_cast<double>(report.per_step.size());
  s.mean_mse = mse_sum / steps;
  s.final_state_mse = mean_squared_error(cached.states.back(), truth.states.back());
  s.speedup = steps * static_cast<double>(s.full_cost) / static_cast<double>(s.total_flops);
  report.final_states = {cached.states.back(), truth.states.back()};
}

void score_prediction(StepMetrics& m, const Denoiser& model, const Tensor& x, double t,
                      const Tensor& used) {
  const Tensor reference = model.forward(x, t);
  m.mse_vs_truth = mean_squared_error(used, reference);
  try {
    m.cosine_vs_truth = cosine_similarity(used, reference);
  } catch (const Error&) {
    m.cosine_vs_truth = 1.0;  // both zero: identical
  }
}

}  // namespace

RunReport run_policy(const Denoiser& model, const SchedulerPlan& plan, const CacheConfig& cfg,
                     std::uint64_t noise_seed) {
  validate(cfg);
  check_plan(model, plan);
  RunReport report;
  report.method = "freqca";
  report.seed = noise_seed;
  report.summary.full_cost = model.forward_macs();
  report.summary.pred_cost = freqca_predicted_step_macs(model.tokens(), model.channels(), cfg);
  report.per_step.resize(plan.kinds.size());

  const SampleResult truth = sample(model, plan.total_steps, noise_seed);

  CrfCache cache(cfg.low_order, cfg.high_order, cfg.cutoff, cfg.transform);
  auto hook = [&](int k, double t, const Tensor& x) {
    StepMetrics& m = report.per_step[static_cast<std::size_t>(k)];
    m.step = k;
    m.kind = plan.kinds[static_cast<std::size_t>(k)];
    m.cache_capacity = cache.capacity();
    Tensor v;
    if (m.kind == StepKind::kFull) {
      v = model.forward(x, t);
      cache.record_full(k, v);
      m.flops = report.summary.full_cost;
    } else {
      auto rec = cache.reconstruct(k, cfg.low_order, cfg.high_order);
      m.effective_low_order = rec.low_order;
      m.effective_high_order = rec.high_order;
      m.flops = report.summary.pred_cost;
      score_prediction(m, model, x, t, rec.value);
      v = std::move(rec.value);
    }
    m.cache_units = cache.unit_count();
    return v;
  };
  const SampleResult cached = sample(model, plan.total_steps, noise_seed, hook);
  finish_report(report, cached, truth);
  return report;
}

RunReport run_layerwise_baseline(const Denoiser& model, const SchedulerPlan& plan, int order,
                                 std::uint64_t noise_seed) {
  check_order(order, "order");
  check_plan(model, plan);
  const auto streams = 2 * static_cast<std::size_t>(model.layer_count());
  RunReport report;
  report.method = "layerwise";
  report.seed = noise_seed;
  report.summary.full_cost = model.forward_macs();
  report.summary.pred_cost =
      layerwise_predicted_step_macs(model.tokens(), model.channels(), model.layer_count(), order);
  report.per_step.resize(plan.kinds.size());

  const SampleResult truth = sample(model, plan.total_steps, noise_seed);

  const auto capacity = static_cast<std::size_t>(order) + 1;
  std::vector<std::deque<HistoryEntry>> rings(streams);
  auto hook = [&](int k, double t, const Tensor& x) {
    StepMetrics& m = report.per_step[static_cast<std::size_t>(k)];
    m.step = k;
    m.kind = plan.kinds[static_cast<std::size_t>(k)];
    m.cache_capacity = streams * capacity;
    Tensor v;
    if (m.kind == StepKind::kFull) {
      ForwardTrace trace = model.forward_trace(x, t);
      if (trace.residuals.size() != streams) {
        fail(ErrorCode::kShapeMismatch, "layer-wise baseline: unexpected residual stream count");
      }
      for (std::size_t s = 0; s < streams; ++s) {
        push_bounded(rings[s], capacity, k, std::move(trace.residuals[s]));
      }
      v = std::move(trace.crf);
      m.flops = report.summary.full_cost;
    } else {
      // Reassemble the residual recurrence from the live input.
      v = x;
      int effective = order;
      Tensor forecast;
      for (const auto& ring : rings) {
        effective = std::min(effective, forecast_ring(ring, k, order, forecast));
        v += forecast;
      }
      m.effective_low_order = effective;
      m.effective_high_order = effective;
      m.flops = report.summary.pred_cost;
      score_prediction(m, model, x, t, v);
    }
    std::size_t units = 0;
    for (const auto& ring : rings) units += ring.size();
    m.cache_units = units;
    return v;
  };
  const SampleResult cached = sample(model, plan.total_steps, noise_seed, hook);
  finish_report(report, cached, truth);
  return report;
}

}  // namespace freqca
