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

#include <Eigen/Dense>
#include <Eigen/QR>
#include <cmath>

#include "freqca/numerics.hpp"
#include "oracles.hpp"

using freqca::ErrorCode;
using freqca::LeastSquaresProblem;
using freqca::Tensor;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const freqca::Error& e) {
    return e.code();
  }
  FAIL("expected a freqca::Error");
  return ErrorCode::kInvalidArgument;
}

Tensor multiply(const Tensor& a, const Tensor& b) {
  Tensor out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
  return out;
}

Tensor transpose(const Tensor& a) {
  Tensor out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

}  // namespace

TEST_CASE("least squares with identity design returns the targets") {
  const LeastSquaresProblem p{Tensor::identity(3), Tensor(3, 1, {1.0, 2.0, 3.0})};
  const Tensor c = freqca::solve_least_squares(p);
  REQUIRE(c.rows() == 3);
  CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c[2] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("least squares reproduces s^2 in the Hermite basis") {
  Tensor design(3, 3);
  Tensor targets(3, 1);
  const double s_values[] = {-1.0, 0.0, 1.0};
  for (std::size_t i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) design(i, static_cast<std::size_t>(k)) = oracle::he(k, s_values[i]);
    targets(i, 0) = s_values[i] * s_values[i];
  }
  const Tensor c = freqca::solve_least_squares({design, targets});
  // s^2 = He_2 + He_0
  CHECK(std::abs(c[0] - 1.0) <= 1e-10);
  CHECK(std::abs(c[1]) <= 1e-10);
  CHECK(std::abs(c[2] - 1.0) <= 1e-10);
  CHECK(freqca::max_abs_diff(multiply(design, c), targets) <= 1e-10);
}

TEST_CASE("least squares recovers known coefficients from a random design") {
  oracle::Random rng(5);
  const Tensor design = rng.tensor(5, 3);
  const Tensor truth = rng.tensor(3, 2);
  const Tensor targets = multiply(design, truth);
  const Tensor c = freqca::solve_least_squares({design, targets});
  CHECK(freqca::max_abs_diff(c, truth) <= 1e-8);
}

TEST_CASE("least squares rejects rank-deficient designs") {
  Tensor design(4, 2);
  for (std::size_t i = 0; i < 4; ++i) design(i, 0) = design(i, 1) = static_cast<double>(i + 1);
  CHECK(code_of([&] { freqca::solve_least_squares({design, Tensor(4, 1, 1.0)}); }) ==
        ErrorCode::kRankDeficient);
  CHECK(code_of([&] { freqca::solve_least_squares({Tensor(2, 3, 1.0), Tensor(2, 1)}); }) ==
        ErrorCode::kRankDeficient);
  CHECK(code_of([&] { freqca::solve_least_squares({Tensor::identity(3), Tensor(2, 1)}); }) ==
        ErrorCode::kShapeMismatch);
}

TEST_CASE("least squares residual is orthogonal to the design columns") {
  oracle::Random rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto basis = static_cast<std::size_t>(rng.integer(1, 4));
    const auto samples = basis + static_cast<std::size_t>(rng.integer(0, 6));
    const auto outputs = static_cast<std::size_t>(rng.integer(1, 5));
    const Tensor design = rng.tensor(samples, basis);
    const Tensor targets = rng.tensor(samples, outputs);
    Tensor c;
    try {
      c = freqca::solve_least_squares({design, targets});
    } catch (const freqca::Error& e) {
      CHECK(e.code() == ErrorCode::kRankDeficient);
      continue;
    }
    const Tensor residual = targets - multiply(design, c);
    const Tensor projected = multiply(transpose(design), residual);
    CHECK(freqca::max_abs(projected) <= 1e-8 * freqca::max_abs(targets));
  }
}

TEST_CASE("cosine similarity") {
  oracle::Random rng(3);
  const Tensor a = rng.tensor(4, 8);
  CHECK(freqca::cosine_similarity(a, 2.0 * a) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(freqca::cosine_similarity(a, -1.0 * a) == doctest::Approx(-1.0).epsilon(1e-15));

  Tensor e0(1, 4);
  Tensor e2(1, 4);
  e0[0] = 1.0;
  e2[2] = 1.0;
  CHECK(freqca::cosine_similarity(e0, e2) == 0.0);

  CHECK(code_of([] { freqca::cosine_similarity(Tensor(2, 2), Tensor(2, 2)); }) == ErrorCode::kZeroVector);
  CHECK(freqca::cosine_similarity(e0, Tensor(1, 4)) == 0.0);
  CHECK(code_of([&] { freqca::cosine_similarity(e0, Tensor(2, 2)); }) == ErrorCode::kShapeMismatch);
}

TEST_CASE("cosine similarity is symmetric and scale invariant") {
  oracle::Random rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Tensor a = rng.tensor(3, 5);
    const Tensor b = rng.tensor(3, 5);
    const double s = freqca::cosine_similarity(a, b);
    CHECK(s >= -1.0);
    CHECK(s <= 1.0);
    CHECK(freqca::cosine_similarity(b, a) == doctest::Approx(s).epsilon(1e-14));
    const double k = rng.uniform(0.01, 100.0);
    CHECK(freqca::cosine_similarity(k * a, b) == doctest::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("pca of collinear points has no second component") {
  oracle::Random rng(23);
  const Tensor origin = rng.tensor(8, 8);
  const Tensor direction = rng.tensor(8, 8);
  std::vector<Tensor> line;
  for (int i = 0; i < 10; ++i) line.push_back(origin + (0.3 * i - 1.0) * direction);
  const auto pts = freqca::pca_project(line);
  REQUIRE(pts.size() == 10);
  for (const auto& p : pts) CHECK(std::abs(p[1]) <= 1e-6);
  CHECK(std::abs(pts.front()[0] - pts.back()[0]) > 1.0);
}

TEST_CASE("pca preserves distances of a planar triangle in 64-D") {
  oracle::Random rng(29);
  // Orthonormal pair spanning the plane.
  Eigen::MatrixXd m(64, 2);
  for (Eigen::Index i = 0; i < 64; ++i) {
    m(i, 0) = rng.uniform();
    m(i, 1) = rng.uniform();
  }
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ() * Eigen::MatrixXd::Identity(64, 2);
  const double coords[3][2] = {{0.0, 0.0}, {3.0, 0.5}, {1.0, 2.5}};
  std::vector<Tensor> pts;
  for (const auto& c : coords) {
    Tensor t(1, 64);
    for (std::size_t i = 0; i < 64; ++i) {
      t[i] = 0.7 + c[0] * q(static_cast<Eigen::Index>(i), 0) + c[1] * q(static_cast<Eigen::Index>(i), 1);
    }
    pts.push_back(t);
  }
  const auto proj = freqca::pca_project(pts);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const double ambient = std::sqrt(freqca::squared_norm(pts[i] - pts[j]));
      const double planar = std::hypot(proj[i][0] - proj[j][0], proj[i][1] - proj[j][1]);
      CHECK(std::abs(ambient - planar) <= 1e-6);
    }
  }
}

TEST_CASE("pca of a constant trajectory is degenerate") {
  const std::vector<Tensor> same(5, Tensor(2, 3, 1.5));
  CHECK(code_of([&] { freqca::pca_project(same); }) == ErrorCode::kDegenerateCovariance);
  CHECK(code_of([&] { freqca::pca_project(std::vector<Tensor>(2, Tensor(1, 2))); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("pca projections are rotation invariant up to sign") {
  oracle::Random rng(31);
  const std::size_t dim = 12;
  // Anisotropic cloud so the leading eigenvalues are well separated.
  std::vector<Tensor> cloud;
  for (int i = 0; i < 20; ++i) {
    Tensor t(1, dim);
    for (std::size_t j = 0; j < dim; ++j) t[j] = rng.uniform() * (j == 0 ? 5.0 : j == 1 ? 2.0 : 0.3);
    cloud.push_back(t);
  }
  Eigen::MatrixXd m(dim, dim);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.uniform();
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(m).householderQ();
  std::vector<Tensor> rotated;
  for (const Tensor& t : cloud) {
    Tensor r(1, dim);
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = 0; b < dim; ++b) r[a] += q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) * t[b];
    rotated.push_back(r);
  }
  const auto p = freqca::pca_project(cloud);
  const auto r = freqca::pca_project(rotated);
  for (std::size_t comp = 0; comp < 2; ++comp) {
    const double sign = (p[0][comp] * r[0][comp] >= 0.0) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(p[i][comp] - sign * r[i][comp]) <= 1e-6);
  }
}
