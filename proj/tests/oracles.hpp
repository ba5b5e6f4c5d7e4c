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

// Test-only reference implementations. Nothing here calls into the library's
// numerical paths, so they can serve as independent oracles.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "freqca/tensor.hpp"

namespace oracle {

inline std::vector<double> dct2(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    long double acc = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      acc += static_cast<long double>(x[j]) *
             std::cos(std::numbers::pi_v<long double> * (2.0L * j + 1.0L) * k / (2.0L * n));
    }
    const long double s = k == 0 ? std::sqrt(1.0L / n) : std::sqrt(2.0L / n);
    out[k] = static_cast<double>(s * acc);
  }
  return out;
}

// Orthonormal DCT-II basis vector k of length n.
inline std::vector<double> dct_basis(std::size_t k, std::size_t n) {
  std::vector<double> v(n);
  const double s = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
  for (std::size_t j = 0; j < n; ++j) {
    v[j] = s * std::cos(std::numbers::pi * (2.0 * j + 1.0) * k / (2.0 * n));
  }
  return v;
}

inline std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<long double> acc = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      const long double a = -2.0L * std::numbers::pi_v<long double> * ((j * k) % n) / n;
      acc += std::complex<long double>(x[j].real(), x[j].imag()) * std::complex<long double>(std::cos(a), std::sin(a));
    }
    acc /= std::sqrt(static_cast<long double>(n));
    out[k] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return out;
}

// Explicit probabilists' Hermite polynomials.
inline double he(int k, double s) {
  switch (k) {
    case 0: return 1.0;
    case 1: return s;
    case 2: return s * s - 1.0;
    case 3: return s * s * s - 3.0 * s;
  }
  return NAN;
}

struct Line {
  double intercept;
  double slope;
};

// Ordinary least-squares line through (x, y) in closed form.
inline Line fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double slope = sxy / sxx;
  return {my - slope * mx, slope};
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  std::vector<double> vector(std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = uniform();
    return v;
  }

  freqca::Tensor tensor(std::size_t rows, std::size_t cols) {
    return freqca::Tensor(rows, cols, vector(rows * cols));
  }

 private:
  std::mt19937_64 engine_;
};

inline double relative_inf(const freqca::Tensor& got, const freqca::Tensor& want) {
  const double scale = std::max(1e-300, freqca::max_abs(want));
  return freqca::max_abs_diff(got, want) / scale;
}

}  // namespace oracle
