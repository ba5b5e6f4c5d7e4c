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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "freqca/frequency.hpp"
#include "freqca/numerics.hpp"

namespace freqca {

struct FrequencyDynamicsReport {
  std::size_t steps = 0;
  double cutoff = 0.25;
  TransformKind transform = TransformKind::kDct;
  std::vector<int> intervals;
  // [step][interval index]; empty where step + interval runs past the end.
  std::vector<std::vector<std::optional<double>>> low_similarity;
  std::vector<std::vector<std::optional<double>>> high_similarity;
  std::vector<Point2> pca_low;
  std::vector<Point2> pca_high;
  bool pca_low_degenerate = false;
  bool pca_high_degenerate = false;
};

/// Per-band cosine similarity between a feature and the one `interval`
/// steps later, plus 2-D PCA trajectories of each band.
FrequencyDynamicsReport analyze_frequency_dynamics(std::span<const Tensor> features,
                                                   const std::vector<int>& intervals, double cutoff,
                                                   TransformKind transform);

// Accepts "a..b" ranges and comma lists, e.g. "1..10" or "1,2,5".
std::vector<int> parse_intervals(const std::string& text);

nlohmann::ordered_json dynamics_report_json(const FrequencyDynamicsReport& report);
// step,interval,low_similarity,high_similarity (valid pairs only)
std::string dynamics_similarity_csv(const FrequencyDynamicsReport& report);
// step,low_pc1,low_pc2,high_pc1,high_pc2
std::string dynamics_pca_csv(const FrequencyDynamicsReport& report);

}  // namespace freqca
