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

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "freqca/frequency.hpp"
#include "freqca/predictor.hpp"
#include "freqca/toy_dit.hpp"

namespace freqca {

struct CacheConfig {
  int interval = 5;
  int low_order = 0;
  int high_order = 2;
  double cutoff = 0.25;
  TransformKind transform = TransformKind::kDct;
};

void validate(const CacheConfig& cfg);

/// Constant-size cache of the cumulative residual feature, held as bands.
///
/// Each full step splits the feature once; the low band goes into a ring of
/// low_order + 1 entries (a single slot for the default direct-reuse
/// setting) and the high band into a ring of high_order + 1 entries.
class CrfCache {
 public:
  CrfCache(int low_order, int high_order, double cutoff, TransformKind transform);

  void record_full(std::int64_t step, const Tensor& crf);

  struct Reconstruction {
    Tensor value;
    int low_order = 0;   // effective orders after warm-up degradation
    int high_order = 0;
  };

  /// Forecasts the feature at `step` from the cached bands. Requested orders
  /// are lowered to what the cached history supports.
  Reconstruction reconstruct(std::int64_t step, int low_order, int high_order) const;

  bool empty() const { return high_ring_.empty(); }
  std::size_t unit_count() const { return low_ring_.size() + high_ring_.size(); }
  std::size_t capacity() const { return low_capacity_ + high_capacity_; }
  std::int64_t last_step() const;

  const std::deque<HistoryEntry>& low_ring() const { return low_ring_; }
  const std::deque<HistoryEntry>& high_ring() const { return high_ring_; }
  double cutoff() const { return cutoff_; }
  TransformKind transform() const { return transform_; }

 private:
  std::size_t low_capacity_;
  std::size_t high_capacity_;
  double cutoff_;
  TransformKind transform_;
  std::deque<HistoryEntry> low_ring_;
  std::deque<HistoryEntry> high_ring_;
};

/// Forecast from the most recent entries of a ring, lowering the order on
/// short history or a rank-deficient window. Returns the order used.
int forecast_ring(const std::deque<HistoryEntry>& ring, std::int64_t step, int order, Tensor& out);

enum class StepKind { kFull, kPredicted };

const char* step_kind_name(StepKind kind);

struct SchedulerPlan {
  int total_steps = 0;
  int interval = 1;
  std::vector<StepKind> kinds;

  int full_count() const;
};

/// Full steps at every index divisible by the interval.
SchedulerPlan build_plan(int total_steps, int interval);

struct CostLedger {
  double full_cost = 0.0;
  double pred_cost = 0.0;
  double average_cost = 0.0;
  double speedup = 1.0;
  int layers = 0;
  int order = 0;
  int interval = 1;
  int streams_per_layer = 2;
  long cache_units_freqca = 0;
  long cache_units_layerwise = 0;
  double ratio = 0.0;
};

CostLedger cost_ledger(int layers, int order, int interval, double full_cost, double pred_cost,
                       int streams_per_layer = 2);

// MACs charged to a predicted step of the frequency-aware policy: band split
// (forward and inverse transform per token), both band fits and forecasts,
// and recombination.
std::uint64_t freqca_predicted_step_macs(std::size_t tokens, std::size_t channels,
                                         const CacheConfig& cfg);

// MACs charged to a predicted step of layer-wise caching.
std::uint64_t layerwise_predicted_step_macs(std::size_t tokens, std::size_t channels, int layers,
                                            int order);

struct StepMetrics {
  int step = 0;
  StepKind kind = StepKind::kFull;
  double mse_vs_truth = 0.0;
  double cosine_vs_truth = 1.0;
  double state_mse_vs_truth = 0.0;
  int effective_low_order = -1;
  int effective_high_order = -1;
  std::uint64_t flops = 0;
  std::size_t cache_units = 0;
  std::size_t cache_capacity = 0;
};

struct RunSummary {
  double mean_mse = 0.0;
  double final_state_mse = 0.0;
  double speedup = 1.0;
  std::uint64_t total_flops = 0;
  std::size_t peak_cache_units = 0;
  int full_steps = 0;
  int predicted_steps = 0;
  std::uint64_t full_cost = 0;
  std::uint64_t pred_cost = 0;
};

struct RunReport {
  std::string method;
  std::uint64_t seed = 0;
  std::vector<StepMetrics> per_step;
  RunSummary summary;
  std::vector<Tensor> final_states;  // cached run's final state, then ground truth's
};

/// Samples with the frequency-aware CRF cache and scores every step.
///
/// mse_vs_truth / cosine_vs_truth compare the velocity the sampler used with
/// the model evaluated at the same state (zero on full steps).
/// state_mse_vs_truth and final_state_mse compare states with an all-full
/// run from the same noise.
RunReport run_policy(const Denoiser& model, const SchedulerPlan& plan, const CacheConfig& cfg,
                     std::uint64_t noise_seed);

/// Per-layer baseline: caches the attention and MLP residual of every layer
/// and forecasts each stream with an order-`order` fit.
RunReport run_layerwise_baseline(const Denoiser& model, const SchedulerPlan& plan, int order,
                                 std::uint64_t noise_seed);

}  // namespace freqca
