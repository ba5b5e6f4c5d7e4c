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

#include <span>
#include <vector>

#include "freqca/tensor.hpp"

namespace freqca {

/// Dense least-squares problem: minimize ||design * X - targets||_F.
struct LeastSquaresProblem {
  Tensor design;   // samples x basis
  Tensor targets;  // samples x outputs
};

/// Solves a small dense least-squares problem.
///
/// Uses the normal equations with a Cholesky factorization when they are
/// well conditioned and a column-pivoted QR otherwise. Throws RankDeficient
/// when the numerical rank (relative tolerance 1e-10) is below the basis
/// size.
Tensor solve_least_squares(const LeastSquaresProblem& problem);

/// Cosine of the angle between two flattened tensors. Throws ZeroVector when
/// both are zero; returns 0 when exactly one of them is zero.
double cosine_similarity(const Tensor& a, const Tensor& b);

using Point2 = std::vector<double>;

struct PcaOptions {
  int components = 2;
  double tolerance = 1e-8;
  int max_iterations = 1000;
  double degenerate_variance = 1e-12;
};

/// Projects a trajectory of tensors onto its leading principal directions.
///
/// Power iteration with deflation on the centered Gram matrix. Each returned
/// point has `components` coordinates; the first nonzero loading of every
/// component is made positive. Components beyond the rank of the data come
/// back as zero coordinates. Throws DegenerateCovariance when the whole
/// trajectory has no variance.
std::vector<Point2> pca_project(std::span<const Tensor> trajectory,
                                const PcaOptions& options = {});

}  // namespace freqca
