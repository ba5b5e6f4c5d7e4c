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

#include <cmath>
#include <complex>

#include "freqca/frequency.hpp"
#include "oracles.hpp"

using freqca::BandSplit;
using freqca::ErrorCode;
using freqca::Tensor;
using freqca::TransformKind;

namespace {

constexpr TransformKind kAllKinds[] = {TransformKind::kDct, TransformKind::kFft, TransformKind::kNone};

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("dct of a constant vector concentrates in coefficient 0") {
  for (std::size_t n : {1u, 3u, 8u, 12u, 64u}) {
    const std::vector<double> v(n, 2.5);
    const auto c = freqca::dct2_forward(v);
    CHECK(c[0] == doctest::Approx(2.5 * std::sqrt(static_cast<double>(n))).epsilon(1e-14));
    for (std::size_t k = 1; k < n; ++k) CHECK(std::abs(c[k]) <= 1e-12);
  }
}

TEST_CASE("dct of e0 matches direct summation") {
  const std::vector<double> e0{1.0, 0.0, 0.0, 0.0};
  CHECK(max_diff(freqca::dct2_forward(e0), oracle::dct2(e0)) <= 1e-12);
  CHECK(max_diff(freqca::dct2_naive(e0), oracle::dct2(e0)) <= 1e-12);
}

TEST_CASE("fast and naive dct agree with the oracle on random vectors") {
  oracle::Random rng(41);
  for (std::size_t n : {2u, 5u, 16u, 31u, 64u, 128u, 256u}) {
    const auto v = rng.vector(n);
    const auto want = oracle::dct2(v);
    CHECK(max_diff(freqca::dct2_forward(v), want) <= 1e-12);
    CHECK(max_diff(freqca::dct2_naive(v), want) <= 1e-12);
  }
}

TEST_CASE("dct round trip") {
  oracle::Random rng(43);
  const auto v = rng.vector(16);
  CHECK(max_diff(freqca::dct3_inverse(freqca::dct2_forward(v)), v) <= 1e-10);
  for (int trial = 0; trial < 100; ++trial) {
    const auto w = rng.vector(static_cast<std::size_t>(rng.integer(1, 200)));
    CHECK(max_diff(freqca::dct3_inverse(freqca::dct2_forward(w)), w) <= 1e-10);
  }
  CHECK_THROWS_AS(freqca::dct2_forward(std::vector<double>{}), freqca::Error);
}

TEST_CASE("unitary dft matches the oracle and inverts") {
  oracle::Random rng(47);
  for (std::size_t n : {1u, 2u, 6u, 8u, 15u, 32u}) {
    std::vector<std::complex<double>> v(n);
    for (auto& z : v) z = {rng.uniform(), rng.uniform()};
    const auto got = freqca::dft_forward(v);
    const auto want = oracle::dft(v);
    const auto back = freqca::dft_inverse(got);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(got[i] - want[i]) <= 1e-12);
      CHECK(std::abs(back[i] - v[i]) <= 1e-12);
    }
  }
}

TEST_CASE("transform names") {
  CHECK(freqca::parse_transform("fft") == TransformKind::kFft);
  CHECK(std::string(freqca::transform_name(TransformKind::kNone)) == "none");
  try {
    freqca::parse_transform("wavelet");
    FAIL("expected ConfigError");
  } catch (const freqca::Error& e) {
    CHECK(e.code() == ErrorCode::kConfigError);
  }
}

TEST_CASE("low band sizes") {
  CHECK(freqca::low_band_size(64, 0.25, TransformKind::kDct) == 16);
  CHECK(freqca::low_band_size(10, 0.25, TransformKind::kDct) == 3);
  // |f| < 8 -> f in -7..7
  CHECK(freqca::low_band_size(64, 0.25, TransformKind::kFft) == 15);
  CHECK(freqca::low_band_size(64, 0.25, TransformKind::kNone) == 64);
}

TEST_CASE("constant rows have no high band") {
  Tensor z(3, 16);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 16; ++c) z(r, c) = 1.0 + static_cast<double>(r);
  for (TransformKind kind : kAllKinds) {
    for (double rho : {0.1, 0.25, 0.5, 0.9}) {
      const BandSplit s = freqca::split_bands(z, rho, kind);
      CHECK(freqca::max_abs(s.high) <= 1e-12);
    }
  }
}

TEST_CASE("none transform keeps everything in the low band") {
  oracle::Random rng(53);
  const Tensor z = rng.tensor(4, 9);
  const BandSplit s = freqca::split_bands(z, 0.3, TransformKind::kNone);
  CHECK(s.low == z);
  CHECK(s.high == Tensor(4, 9));
}

TEST_CASE("random 4x32 split reconstructs and partitions energy") {
  oracle::Random rng(59);
  const Tensor z = rng.tensor(4, 32);
  const BandSplit s = freqca::split_bands(z, 0.25, TransformKind::kDct);
  CHECK(oracle::relative_inf(s.low + s.high, z) <= 1e-9);
  CHECK(freqca::recombine(s) == s.low + s.high);

  double energy = 0.0;
  for (std::size_t r = 0; r < 4; ++r) {
    const auto row = std::vector<double>(z.row(r).begin(), z.row(r).end());
    for (double c : oracle::dct2(row)) energy += c * c;
  }
  CHECK(std::abs(freqca::squared_norm(s.low) + freqca::squared_norm(s.high) - energy) <= 1e-8);
}

TEST_CASE("recombine with a zero high band returns the low band") {
  oracle::Random rng(61);
  BandSplit s = freqca::split_bands(rng.tensor(2, 8), 0.5, TransformKind::kDct);
  s.high = Tensor(2, 8);
  CHECK(freqca::recombine(s) == s.low);
  s.high = Tensor(2, 7);
  CHECK_THROWS_AS(freqca::recombine(s), freqca::Error);
}

TEST_CASE("two-tone signal separates into its tones") {
  const std::size_t n = 32;
  const auto tone_low = oracle::dct_basis(3, n);
  const auto tone_high = oracle::dct_basis(25, n);
  Tensor z(1, n);
  Tensor want_low(1, n);
  Tensor want_high(1, n);
  for (std::size_t i = 0; i < n; ++i) {
    want_low[i] = 1.5 * tone_low[i];
    want_high[i] = -0.75 * tone_high[i];
    z[i] = want_low[i] + want_high[i];
  }
  const BandSplit s = freqca::split_bands(z, 0.5, TransformKind::kDct);
  CHECK(freqca::max_abs_diff(s.low, want_low) <= 1e-9);
  CHECK(freqca::max_abs_diff(s.high, want_high) <= 1e-9);
}

TEST_CASE("fft split keeps low frequency cosines whole") {
  const std::size_t n = 32;
  Tensor low_tone(1, n);
  Tensor high_tone(1, n);
  for (std::size_t i = 0; i < n; ++i) {
    low_tone[i] = std::cos(2.0 * std::numbers::pi * 2.0 * static_cast<double>(i) / n);
    high_tone[i] = std::sin(2.0 * std::numbers::pi * 12.0 * static_cast<double>(i) / n);
  }
  const BandSplit s = freqca::split_bands(low_tone + high_tone, 0.25, TransformKind::kFft);
  CHECK(freqca::max_abs_diff(s.low, low_tone) <= 1e-12);
  CHECK(freqca::max_abs_diff(s.high, high_tone) <= 1e-12);
}

TEST_CASE("invalid cutoffs are rejected") {
  const Tensor z(2, 8, 1.0);
  for (double rho : {0.0, 1.0, -0.1, 1.5, std::nan("")}) {
    try {
      freqca::split_bands(z, rho, TransformKind::kDct);
      FAIL("expected InvalidCutoff");
    } catch (const freqca::Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidCutoff);
    }
  }
  CHECK_THROWS_AS(freqca::split_bands(Tensor(2, 1, 1.0), 0.5, TransformKind::kDct), freqca::Error);
  // ceil(0.95 * 8) == 8 leaves nothing for the high band.
  CHECK_THROWS_AS(freqca::split_bands(z, 0.95, TransformKind::kDct), freqca::Error);
}

TEST_CASE("band split properties hold for every transform") {
  oracle::Random rng(67);
  for (int trial = 0; trial < 60; ++trial) {
    const auto rows = static_cast<std::size_t>(rng.integer(1, 5));
    const auto cols = static_cast<std::size_t>(rng.integer(4, 70));
    const double rho = rng.uniform(0.1, 0.6);
    const Tensor a = rng.tensor(rows, cols);
    const Tensor b = rng.tensor(rows, cols);
    const double alpha = rng.uniform(-3.0, 3.0);
    const double beta = rng.uniform(-3.0, 3.0);
    for (TransformKind kind : kAllKinds) {
      CAPTURE(cols);
      CAPTURE(rho);
      const BandSplit sa = freqca::split_bands(a, rho, kind);
      const BandSplit sb = freqca::split_bands(b, rho, kind);
      const BandSplit sab = freqca::split_bands(alpha * a + beta * b, rho, kind);
      CHECK(freqca::max_abs_diff(sab.low, alpha * sa.low + beta * sb.low) <= 1e-8);

      CHECK(freqca::max_abs(freqca::split_bands(sa.low, rho, kind).high) <= 1e-9 * freqca::max_abs(a));
      CHECK(oracle::relative_inf(sa.low + sa.high, a) <= 1e-9);

      const double total = freqca::squared_norm(a);
      const double parts = freqca::squared_norm(sa.low) + freqca::squared_norm(sa.high);
      CHECK(std::abs(parts - total) <= 1e-7 * total);
    }
  }
}

TEST_CASE("transform cost model") {
  CHECK(freqca::transform_macs(64, TransformKind::kDct) == 2 * 64 * 6 + 4 * 64);
  CHECK(freqca::transform_macs(10, TransformKind::kDct) == 100);
  CHECK(freqca::transform_macs(10, TransformKind::kFft) == 400);
  CHECK(freqca::transform_macs(64, TransformKind::kNone) == 0);
}
