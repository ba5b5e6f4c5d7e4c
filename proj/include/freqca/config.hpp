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
#include <memory>
#include <string>
#include <string_view>

#include <json.hpp>

#include "freqca/cache_engine.hpp"
#include "freqca/toy_dit.hpp"

namespace freqca {

struct SamplerConfig {
  int steps = 50;
  std::uint64_t noise_seed = 0;
};

// Everything needed to reproduce one sampling run.
//
// JSON layout (unknown keys are rejected; model.seed and sampler.noise_seed
// are mandatory):
//   model   {layers, channels, tokens, heads, seed, timestep_embedding_dim,
//            mlp_ratio, zero_init_gates}
//   host    "toy" | "synthetic"                       (optional, default toy)
//   sampler {steps, noise_seed}
//   policy  {interval, low_order, high_order, cutoff, transform}
struct RunConfig {
  ToyDitConfig model;
  std::string host = "toy";
  SamplerConfig sampler;
  CacheConfig policy;
};

enum class Method { kFreqca, kFora, kTaylor, kLayerwise };

const char* method_name(Method m);
Method parse_method(std::string_view name);

/// Parses and validates a run configuration. Errors are ConfigError with
/// the offending field path in the message.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig parse_run_config_text(const std::string& text);

nlohmann::ordered_json config_to_json(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);

std::unique_ptr<Denoiser> make_host(const RunConfig& cfg);

// Policy actually executed for a method: fora is whole-feature reuse (0, 0);
// taylor forecasts the undecomposed feature with the configured high order.
CacheConfig method_policy(const CacheConfig& policy, Method m);

RunReport run_method(const RunConfig& cfg, Method m);

// Ground-truth (all-full) feature trajectory of a configuration.
std::vector<Tensor> ground_truth_features(const RunConfig& cfg);

}  // namespace freqca
