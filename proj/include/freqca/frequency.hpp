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

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "freqca/tensor.hpp"

namespace freqca {

enum class TransformKind { kDct, kFft, kNone };

const char* transform_name(TransformKind kind);
TransformKind parse_transform(std::string_view name);

// Orthonormal DCT-II and its inverse (DCT-III). Power-of-two lengths take
// an FFT-based O(n log n) path; other lengths use direct summation.
std::vector<double> dct2_forward(std::span<const double> v);
std::vector<double> dct3_inverse(std::span<const double> coeffs);

// Reference O(n^2) orthonormal DCT-II by direct summation.
std::vector<double> dct2_naive(std::span<const double> v);

// Unitary DFT (1/sqrt(n) in both directions).
std::vector<std::complex<double>> dft_forward(std::span<const std::complex<double>> v);
std::vector<std::complex<double>> dft_inverse(std::span<const std::complex<double>> v);

// Multiply-accumulate count charged for one length-n transform under the
// cost-counting model.
std::uint64_t transform_macs(std::size_t n, TransformKind kind);

struct BandSplit {
  Tensor low;
  Tensor high;
  double cutoff = 0.25;
  TransformKind transform = TransformKind::kDct;
};

// Number of spectral coefficients kept in the low band for a channel count.
// DCT: ceil(cutoff * C). FFT: bins with |frequency| < ceil(cutoff * C / 2).
std::size_t low_band_size(std::size_t channels, double cutoff, TransformKind kind);

/// Splits each token's channel vector into complementary low and high bands.
BandSplit split_bands(const Tensor& z, double cutoff, TransformKind kind);

Tensor recombine(const BandSplit& split);

}  // namespace freqca
