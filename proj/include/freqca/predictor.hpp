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
#include <span>
#include <vector>

#include "freqca/tensor.hpp"

namespace freqca {

inline constexpr int kMaxHermiteOrder = 3;

/// Probabilists' Hermite polynomials He_0..He_order evaluated at s.
std::vector<double> hermite_basis(double s, int order);

// Affine map from raw step index to normalized time. The fitting window is
// sent to [-1, 1]; forecast targets land beyond +1.
struct TimeMap {
  double center = 0.0;
  double half_width = 1.0;

  double operator()(double step) const { return (step - center) / half_width; }
};

struct HistoryEntry {
  std::int64_t step = 0;
  Tensor value;
};

struct HermiteFit {
  int order = 0;
  Tensor coefficients;  // (order + 1) x flattened feature size
  TimeMap time_map;
  std::vector<std::int64_t> window_steps;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

/// Least-squares Hermite fit over the whole history; interpolates when the
/// history has exactly order + 1 entries.
HermiteFit fit_hermite(std::span<const HistoryEntry> history, int order);

/// Evaluates the fit at a step at or after the end of its window.
Tensor predict(const HermiteFit& fit, std::int64_t step);

// Multiply-accumulates charged for fitting `samples` states of `elements`
// values with an order-`order` basis, then evaluating once.
std::uint64_t fit_and_eval_macs(std::size_t samples, int order, std::size_t elements);

}  // namespace freqca
