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

#include "freqca/predictor.hpp"

#include <cmath>
#include <string>

#include "freqca/numerics.hpp"

namespace freqca {

std::vector<double> hermite_basis(double s, int order) {
  if (order < 0) fail(ErrorCode::kInvalidArgument, "hermite order must be >= 0");
  if (order > kMaxHermiteOrder) {
    fail(ErrorCode::kOrderTooHigh, "hermite order " + std::to_string(order) + " exceeds cap " +
                                       std::to_string(kMaxHermiteOrder));
  }
  if (!std::isfinite(s)) fail(ErrorCode::kInvalidArgument, "hermite basis at non-finite time");
  std::vector<double> he(static_cast<std::size_t>(order) + 1);
  he[0] = 1.0;
  if (order >= 1) he[1] = s;
  for (int k = 1; k < order; ++k) {
    he[static_cast<std::size_t>(k) + 1] =
        s * he[static_cast<std::size_t>(k)] - k * he[static_cast<std::size_t>(k) - 1];
  }
  return he;
}

HermiteFit fit_hermite(std::span<const HistoryEntry> history, int order) {
  if (order < 0 || order > kMaxHermiteOrder) {
    fail(ErrorCode::kOrderTooHigh, "hermite order " + std::to_string(order) + " outside [0, " +
                                       std::to_string(kMaxHermiteOrder) + "]");
  }
  const std::size_t samples = history.size();
  if (samples < static_cast<std::size_t>(order) + 1) {
    fail(ErrorCode::kInsufficientHistory, "order " + std::to_string(order) + " fit needs " +
                                              std::to_string(order + 1) + " states, have " +
                                              std::to_string(samples));
  }
  for (std::size_t i = 1; i < samples; ++i) {
    if (history[i].step <= history[i - 1].step) {
      fail(ErrorCode::kNonMonotoneStep, "fit history steps must be strictly increasing");
    }
    require_same_shape(history[0].value, history[i].value, "fit_hermite");
  }

  HermiteFit fit;
  fit.order = order;
  fit.rows = history[0].value.rows();
  fit.cols = history[0].value.cols();
  const auto first = static_cast<double>(history.front().step);
  const auto last = static_cast<double>(history.back().step);
  fit.time_map.center = samples > 1 ? 0.5 * (first + last) : last;
  fit.time_map.half_width = samples > 1 ? 0.5 * (last - first) : 1.0;
  fit.window_steps.reserve(samples);

  const std::size_t basis = static_cast<std::size_t>(order) + 1;
  const std::size_t elements = history[0].value.size();
  LeastSquaresProblem problem{Tensor(samples, basis), Tensor(samples, elements)};
  for (std::size_t i = 0; i < samples; ++i) {
    fit.window_steps.push_back(history[i].step);
    const auto row = hermite_basis(fit.time_map(static_cast<double>(history[i].step)), order);
    for (std::size_t k = 0; k < basis; ++k) problem.design(i, k) = row[k];
    const auto src = history[i].value.values();
    std::copy(src.begin(), src.end(), problem.targets.row(i).begin());
  }
  fit.coefficients = solve_least_squares(problem);
  return fit;
}

Tensor predict(const HermiteFit& fit, std::int64_t step) {
  if (fit.window_steps.empty()) fail(ErrorCode::kInvalidArgument, "predict: empty fit");
  if (step < fit.window_steps.back()) {
    fail(ErrorCode::kBackwardPrediction, "predict: step " + std::to_string(step) +
                                             " precedes fit window end " +
                                             std::to_string(fit.window_steps.back()));
  }
  const auto basis = hermite_basis(fit.time_map(static_cast<double>(step)), fit.order);
  Tensor out(fit.rows, fit.cols);
  auto dst = out.values();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto coeffs = fit.coefficients.row(k);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += basis[k] * coeffs[i];
  }
  return out;
}

std::uint64_t fit_and_eval_macs(std::size_t samples, int order, std::size_t elements) {
  const auto basis = static_cast<std::uint64_t>(order) + 1;
  const auto e = static_cast<std::uint64_t>(elements);
  // Solving against the factored basis costs basis * samples per element;
  // evaluation costs basis per element.
  return basis * static_cast<std::uint64_t>(samples) * e + basis * e;
}

}  // namespace freqca
