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
#include <string>
#include <vector>

#include "freqca/tensor.hpp"

namespace freqca {

// On-disk layout (all integers little-endian):
//   "FQCA" | u16 version | u32 header length | UTF-8 JSON header |
//   steps * tokens * channels float64 values, step-major then row-major.
// The header carries {steps, tokens, channels, seed, config_hash}.
inline constexpr std::uint16_t kTrajectoryVersion = 1;

struct Trajectory {
  std::uint64_t seed = 0;
  std::string config_hash;
  std::size_t tokens = 0;
  std::size_t channels = 0;
  std::vector<Tensor> steps;
};

void dump_trajectory(const Trajectory& trajectory, const std::string& path);
Trajectory load_trajectory(const std::string& path);

std::string encode_trajectory(const Trajectory& trajectory);
Trajectory decode_trajectory(const std::string& bytes);

// 64-bit FNV-1a of a string, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace freqca
