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

#include "freqca/numerics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace freqca {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMatrix> as_matrix(const Tensor& t) {
  return {t.values().data(), static_cast<Eigen::Index>(t.rows()),
          static_cast<Eigen::Index>(t.cols())};
}

constexpr double kRankTolerance = 1e-10;
constexpr double kCholeskyMinRcond = 1e-12;

}  // namespace

Tensor solve_least_squares(const LeastSquaresProblem& problem) {
  const Tensor& a = problem.design;
  const Tensor& b = problem.targets;
  if (a.rows() != b.rows()) {
    fail(ErrorCode::kShapeMismatch, "least squares: design has " + std::to_string(a.rows()) +
                                        " samples, targets have " + std::to_string(b.rows()));
  }
  if (a.empty() || a.rows() < a.cols()) {
    fail(ErrorCode::kRankDeficient, "least squares: " + std::to_string(a.rows()) +
                                        " samples for basis of size " + std::to_string(a.cols()));
  }

  const auto design = as_matrix(a);
  const auto targets = as_matrix(b);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < design.cols()) {
    fail(ErrorCode::kRankDeficient, "least squares: numerical rank " + std::to_string(qr.rank()) +
                                        " < basis size " + std::to_string(design.cols()));
  }

  Eigen::MatrixXd solution;
  const Eigen::MatrixXd gram = design.transpose() * design;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() == Eigen::Success && llt.rcond() > kCholeskyMinRcond) {
    solution = llt.solve(design.transpose() * targets);
  } else {
    solution = qr.solve(Eigen::MatrixXd(targets));
  }

  Tensor out(a.cols(), b.cols());
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      out(r, c) = solution(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  if (!out.all_finite()) fail(ErrorCode::kNumerical, "least squares produced non-finite values");
  return out;
}

double cosine_similarity(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "cosine_similarity");
  const double na = std::sqrt(squared_norm(a));
  const double nb = std::sqrt(squared_norm(b));
  if (na == 0.0 && nb == 0.0) fail(ErrorCode::kZeroVector, "cosine_similarity: both vectors are zero");
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

std::vector<Point2> pca_project(std::span<const Tensor> trajectory, const PcaOptions& options) {
  const std::size_t n = trajectory.size();
  if (options.components < 1) fail(ErrorCode::kInvalidArgument, "pca: components must be >= 1");
  const auto k = static_cast<std::size_t>(options.components);
  if (n < k + 1) {
    fail(ErrorCode::kInvalidArgument, "pca: trajectory of " + std::to_string(n) +
                                          " points is too short for " + std::to_string(k) +
                                          " components");
  }
  const std::size_t dim = trajectory.front().size();
  for (const Tensor& t : trajectory) {
    if (t.size() != dim) fail(ErrorCode::kShapeMismatch, "pca: trajectory entries differ in size");
  }

  Eigen::MatrixXd centered(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      centered(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = trajectory[i][j];
    }
  }
  centered.rowwise() -= centered.colwise().mean();

  // Gram matrix shares the nonzero spectrum of the covariance and stays n x n.
  Eigen::MatrixXd gram = centered * centered.transpose();
  const double denom = static_cast<double>(n > 1 ? n - 1 : 1);

  std::vector<Point2> points(n, Point2(k, 0.0));
  for (std::size_t comp = 0; comp < k; ++comp) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    // Fixed start vector: deterministic and generically not orthogonal to
    // the dominant eigenvector.
    std::uint64_t state = 0x9E3779B97F4A7C15ull + comp;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      v(i) = 0.5 + static_cast<double>(state >> 11) * 0x1.0p-53;
    }
    v.normalize();

    double eigenvalue = 0.0;
    for (int it = 0; it < options.max_iterations; ++it) {
      Eigen::VectorXd w = gram * v;
      const double norm = w.norm();
      if (norm == 0.0) {
        eigenvalue = 0.0;
        break;
      }
      w /= norm;
      const double delta = (w - v).norm();
      v = w;
      eigenvalue = v.dot(gram * v);
      if (delta < options.tolerance) break;
    }

    const double variance = eigenvalue / denom;
    if (variance <= options.degenerate_variance) {
      if (comp == 0) {
        fail(ErrorCode::kDegenerateCovariance,
             "pca: trajectory variance " + std::to_string(variance) + " is degenerate");
      }
      // Data rank exhausted; remaining coordinates stay zero.
      break;
    }

    const double scale = std::sqrt(eigenvalue);
    Eigen::VectorXd loading = centered.transpose() * v / scale;
    const double max_loading = loading.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < loading.size(); ++i) {
      if (std::abs(loading(i)) > 1e-12 * max_loading) {
        if (loading(i) < 0.0) v = -v;
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) points[i][comp] = scale * v(static_cast<Eigen::Index>(i));
    gram -= eigenvalue * v * v.transpose();
  }
  return points;
}

}  // namespace freqca
