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

#include "freqca/frequency.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace freqca {
namespace {

using Complex = std::complex<double>;

bool is_power_of_two(std::size_t n) { return n >= 2 && std::has_single_bit(n); }

// In-place iterative radix-2 FFT, unnormalized. `sign` is -1 for forward.
void fft_radix2(std::vector<Complex>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    for (std::size_t k = 0; k < half; ++k) {
      const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                           static_cast<double>(len);
      const Complex w(std::cos(angle), std::sin(angle));
      for (std::size_t start = 0; start < n; start += len) {
        const Complex u = a[start + k];
        const Complex t = w * a[start + k + half];
        a[start + k] = u + t;
        a[start + k + half] = u - t;
      }
    }
  }
}

std::vector<Complex> dft_unnormalized(std::span<const Complex> v, int sign) {
  const std::size_t n = v.size();
  std::vector<Complex> out(v.begin(), v.end());
  if (is_power_of_two(n)) {
    fft_radix2(out, sign);
    return out;
  }
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      // Reduce the index product mod n to keep the angle small.
      const double angle = sign * 2.0 * std::numbers::pi *
                           static_cast<double>((j * k) % n) / static_cast<double>(n);
      acc += v[j] * Complex(std::cos(angle), std::sin(angle));
    }
    out[k] = acc;
  }
  return out;
}

double dct_scale(std::size_t k, std::size_t n) {
  return k == 0 ? std::sqrt(1.0 / static_cast<double>(n)) : std::sqrt(2.0 / static_cast<double>(n));
}

std::vector<double> dct2_fast(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n / 2; ++i) {
    v[i] = x[2 * i];
    v[n - 1 - i] = x[2 * i + 1];
  }
  fft_radix2(v, -1);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = -std::numbers::pi * static_cast<double>(k) / (2.0 * static_cast<double>(n));
    out[k] = (Complex(std::cos(angle), std::sin(angle)) * v[k]).real() * dct_scale(k, n);
  }
  return out;
}

std::vector<double> dct3_fast(std::span<const double> coeffs) {
  const std::size_t n = coeffs.size();
  std::vector<double> y(n);
  for (std::size_t k = 0; k < n; ++k) y[k] = coeffs[k] / dct_scale(k, n);
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = std::numbers::pi * static_cast<double>(k) / (2.0 * static_cast<double>(n));
    const double mirrored = k == 0 ? 0.0 : y[n - k];
    v[k] = Complex(std::cos(angle), std::sin(angle)) * Complex(y[k], -mirrored);
  }
  fft_radix2(v, +1);
  std::vector<double> x(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n / 2; ++i) {
    x[2 * i] = v[i].real() * inv_n;
    x[2 * i + 1] = v[n - 1 - i].real() * inv_n;
  }
  return x;
}

std::vector<double> dct3_naive(std::span<const double> coeffs) {
  const std::size_t n = coeffs.size();
  std::vector<double> x(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += dct_scale(k, n) * coeffs[k] *
             std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) * static_cast<double>(k) /
                      static_cast<double>(n));
    }
    x[j] = acc;
  }
  return x;
}

void validate_cutoff(std::size_t channels, double cutoff, TransformKind kind) {
  if (!(cutoff > 0.0 && cutoff < 1.0)) {
    fail(ErrorCode::kInvalidCutoff, "cutoff " + std::to_string(cutoff) + " outside (0, 1)");
  }
  if (kind == TransformKind::kNone) return;
  if (channels < 2) fail(ErrorCode::kInvalidCutoff, "band split needs at least 2 channels");
  const auto dct_count = static_cast<std::size_t>(std::ceil(cutoff * static_cast<double>(channels)));
  if (dct_count < 1 || dct_count > channels - 1) {
    fail(ErrorCode::kInvalidCutoff, "cutoff " + std::to_string(cutoff) + " gives a trivial split of " +
                                        std::to_string(channels) + " channels");
  }
  if (kind == TransformKind::kFft) {
    const std::size_t bins = low_band_size(channels, cutoff, kind);
    if (bins >= channels) {
      fail(ErrorCode::kInvalidCutoff, "cutoff " + std::to_string(cutoff) +
                                          " leaves no high-frequency FFT bins for " +
                                          std::to_string(channels) + " channels");
    }
  }
}

}  // namespace

const char* transform_name(TransformKind kind) {
  switch (kind) {
    case TransformKind::kDct: return "dct";
    case TransformKind::kFft: return "fft";
    case TransformKind::kNone: return "none";
  }
  return "none";
}

TransformKind parse_transform(std::string_view name) {
  if (name == "dct") return TransformKind::kDct;
  if (name == "fft") return TransformKind::kFft;
  if (name == "none") return TransformKind::kNone;
  fail(ErrorCode::kConfigError, "unknown transform '" + std::string(name) + "'");
}

std::vector<double> dct2_naive(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n == 0) fail(ErrorCode::kInvalidArgument, "dct: empty input");
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += v[j] * std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) *
                             static_cast<double>(k) / static_cast<double>(n));
    }
    out[k] = dct_scale(k, n) * acc;
  }
  return out;
}

std::vector<double> dct2_forward(std::span<const double> v) {
  if (v.empty()) fail(ErrorCode::kInvalidArgument, "dct: empty input");
  return is_power_of_two(v.size()) ? dct2_fast(v) : dct2_naive(v);
}

std::vector<double> dct3_inverse(std::span<const double> coeffs) {
  if (coeffs.empty()) fail(ErrorCode::kInvalidArgument, "dct: empty input");
  return is_power_of_two(coeffs.size()) ? dct3_fast(coeffs) : dct3_naive(coeffs);
}

std::vector<std::complex<double>> dft_forward(std::span<const std::complex<double>> v) {
  if (v.empty()) fail(ErrorCode::kInvalidArgument, "dft: empty input");
  auto out = dft_unnormalized(v, -1);
  const double s = 1.0 / std::sqrt(static_cast<double>(v.size()));
  for (auto& c : out) c *= s;
  return out;
}

std::vector<std::complex<double>> dft_inverse(std::span<const std::complex<double>> v) {
  if (v.empty()) fail(ErrorCode::kInvalidArgument, "dft: empty input");
  auto out = dft_unnormalized(v, +1);
  const double s = 1.0 / std::sqrt(static_cast<double>(v.size()));
  for (auto& c : out) c *= s;
  return out;
}

std::uint64_t transform_macs(std::size_t n, TransformKind kind) {
  const auto n64 = static_cast<std::uint64_t>(n);
  if (kind == TransformKind::kNone || n == 0) return 0;
  if (is_power_of_two(n)) {
    const auto log2n = static_cast<std::uint64_t>(std::countr_zero(n));
    // n/2 log2 n butterflies at 4 real MACs each, plus the pre/post twiddles.
    return 2 * n64 * log2n + 4 * n64;
  }
  return kind == TransformKind::kDct ? n64 * n64 : 4 * n64 * n64;
}

std::size_t low_band_size(std::size_t channels, double cutoff, TransformKind kind) {
  const double c = static_cast<double>(channels);
  switch (kind) {
    case TransformKind::kDct:
      return static_cast<std::size_t>(std::ceil(cutoff * c));
    case TransformKind::kFft: {
      const auto limit = static_cast<std::size_t>(std::ceil(cutoff * c / 2.0));
      std::size_t bins = 0;
      for (std::size_t k = 0; k < channels; ++k) {
        const std::size_t freq = k <= channels / 2 ? k : channels - k;
        if (freq < limit) ++bins;
      }
      return bins;
    }
    case TransformKind::kNone:
      return channels;
  }
  return channels;
}

BandSplit split_bands(const Tensor& z, double cutoff, TransformKind kind) {
  const std::size_t channels = z.cols();
  validate_cutoff(channels, cutoff, kind);

  BandSplit out{z, Tensor(z.rows(), z.cols()), cutoff, kind};
  if (kind == TransformKind::kNone) return out;

  if (kind == TransformKind::kDct) {
    const std::size_t keep = low_band_size(channels, cutoff, kind);
    for (std::size_t r = 0; r < z.rows(); ++r) {
      auto coeffs = dct2_forward(z.row(r));
      std::fill(coeffs.begin() + static_cast<std::ptrdiff_t>(keep), coeffs.end(), 0.0);
      const auto low = dct3_inverse(coeffs);
      std::copy(low.begin(), low.end(), out.low.row(r).begin());
    }
  } else {
    const auto limit = static_cast<std::size_t>(std::ceil(cutoff * static_cast<double>(channels) / 2.0));
    std::vector<Complex> buf(channels);
    for (std::size_t r = 0; r < z.rows(); ++r) {
      const auto row = z.row(r);
      for (std::size_t c = 0; c < channels; ++c) buf[c] = row[c];
      auto spectrum = dft_forward(buf);
      for (std::size_t k = 0; k < channels; ++k) {
        const std::size_t freq = k <= channels / 2 ? k : channels - k;
        if (freq >= limit) spectrum[k] = 0.0;
      }
      const auto low = dft_inverse(spectrum);
      auto dst = out.low.row(r);
      for (std::size_t c = 0; c < channels; ++c) dst[c] = low[c].real();
    }
  }
  for (std::size_t i = 0; i < z.size(); ++i) out.high[i] = z[i] - out.low[i];
  return out;
}

Tensor recombine(const BandSplit& split) {
  require_same_shape(split.low, split.high, "recombine");
  return split.low + split.high;
}

}  // namespace freqca
