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

#include "freqca/trajectory.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

namespace freqca {
namespace {

constexpr char kMagic[4] = {'F', 'Q', 'C', 'A'};

template <typename T>
void put_le(std::string& out, T value) {
  using U = std::make_unsigned_t<T>;
  auto u = static_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>(u & 0xFF));
    u = static_cast<U>(u >> 8);
  }
}

template <typename T>
T get_le(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) fail(ErrorCode::kFormatError, "trajectory: truncated file");
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(static_cast<T>(static_cast<unsigned char>(in[pos + i])) << (8 * i));
  }
  pos += sizeof(T);
  return value;
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string encode_trajectory(const Trajectory& trajectory) {
  for (const Tensor& t : trajectory.steps) {
    if (t.rows() != trajectory.tokens || t.cols() != trajectory.channels) {
      fail(ErrorCode::kShapeMismatch, "trajectory: step shape differs from header");
    }
  }
  nlohmann::ordered_json header;
  header["steps"] = trajectory.steps.size();
  header["tokens"] = trajectory.tokens;
  header["channels"] = trajectory.channels;
  header["seed"] = trajectory.seed;
  header["config_hash"] = trajectory.config_hash;
  const std::string text = header.dump();

  std::string out(kMagic, sizeof(kMagic));
  put_le<std::uint16_t>(out, kTrajectoryVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(text.size()));
  out += text;
  out.reserve(out.size() + trajectory.steps.size() * trajectory.tokens * trajectory.channels * 8);
  for (const Tensor& t : trajectory.steps) {
    for (double v : t.values()) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
  }
  return out;
}

Trajectory decode_trajectory(const std::string& bytes) {
  if (bytes.size() < sizeof(kMagic) || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    fail(ErrorCode::kFormatError, "trajectory: bad magic (expected FQCA)");
  }
  std::size_t pos = sizeof(kMagic);
  const auto version = get_le<std::uint16_t>(bytes, pos);
  if (version != kTrajectoryVersion) {
    fail(ErrorCode::kFormatError, "trajectory: unsupported version " + std::to_string(version));
  }
  const auto header_len = get_le<std::uint32_t>(bytes, pos);
  if (pos + header_len > bytes.size()) fail(ErrorCode::kFormatError, "trajectory: truncated header");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(pos, header_len));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kFormatError, std::string("trajectory: bad header json: ") + e.what());
  }
  pos += header_len;

  Trajectory out;
  std::size_t steps = 0;
  try {
    steps = header.at("steps").get<std::size_t>();
    out.tokens = header.at("tokens").get<std::size_t>();
    out.channels = header.at("channels").get<std::size_t>();
    out.seed = header.at("seed").get<std::uint64_t>();
    out.config_hash = header.at("config_hash").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kFormatError, std::string("trajectory: header field: ") + e.what());
  }
  const std::size_t per_step = out.tokens * out.channels;
  if (bytes.size() - pos != steps * per_step * 8) {
    fail(ErrorCode::kFormatError, "trajectory: payload size does not match header");
  }
  out.steps.reserve(steps);
  for (std::size_t s = 0; s < steps; ++s) {
    std::vector<double> values(per_step);
    for (double& v : values) v = std::bit_cast<double>(get_le<std::uint64_t>(bytes, pos));
    out.steps.emplace_back(out.tokens, out.channels, std::move(values));
  }
  return out;
}

void dump_trajectory(const Trajectory& trajectory, const std::string& path) {
  const std::string bytes = encode_trajectory(trajectory);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) fail(ErrorCode::kIoError, "write to '" + path + "' failed");
}

Trajectory load_trajectory(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return decode_trajectory(bytes);
}

}  // namespace freqca
