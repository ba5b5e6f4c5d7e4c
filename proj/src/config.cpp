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

#include "freqca/config.hpp"

#include <limits>
#include <set>
#include <type_traits>

#include "freqca/trajectory.hpp"

namespace freqca {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& path, const std::string& msg) {
  fail(ErrorCode::kConfigError, "config field '" + path + "': " + msg);
}

const json& object_at(const json& parent, const std::string& key, const std::string& path) {
  if (!parent.contains(key)) config_error(path, "missing");
  const json& v = parent.at(key);
  if (!v.is_object()) config_error(path, "expected an object");
  return v;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) config_error(prefix.empty() ? key : prefix + "." + key, "unknown key");
  }
}

template <typename T>
T integer_field(const json& obj, const std::string& key, const std::string& prefix, T fallback,
                bool required = false) {
  const std::string path = prefix + "." + key;
  if (!obj.contains(key)) {
    if (required) config_error(path, "missing (required)");
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer()) config_error(path, "expected an integer");
  if constexpr (std::is_unsigned_v<T>) {
    if (v.is_number_unsigned()) return v.get<T>();
    if (v.get<std::int64_t>() < 0) config_error(path, "must be non-negative");
    return static_cast<T>(v.get<std::int64_t>());
  } else {
    const auto raw = v.get<std::int64_t>();
    if (raw < std::numeric_limits<T>::min() || raw > std::numeric_limits<T>::max()) {
      config_error(path, "out of range");
    }
    return static_cast<T>(raw);
  }
}

double number_field(const json& obj, const std::string& key, const std::string& prefix, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) config_error(prefix + "." + key, "expected a number");
  return v.get<double>();
}

std::string string_field(const json& obj, const std::string& key, const std::string& prefix,
                         const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) config_error(prefix + "." + key, "expected a string");
  return v.get<std::string>();
}

// Re-raises component validation errors as ConfigError tagged with a path.
template <typename F>
void check(const std::string& path, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    config_error(path, e.what());
  }
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::kFreqca: return "freqca";
    case Method::kFora: return "fora";
    case Method::kTaylor: return "taylor";
    case Method::kLayerwise: return "layerwise";
  }
  return "freqca";
}

Method parse_method(std::string_view name) {
  if (name == "freqca") return Method::kFreqca;
  if (name == "fora") return Method::kFora;
  if (name == "taylor") return Method::kTaylor;
  if (name == "layerwise") return Method::kLayerwise;
  fail(ErrorCode::kConfigError, "unknown method '" + std::string(name) + "'");
}

RunConfig parse_run_config(const json& doc) {
  if (!doc.is_object()) config_error("<root>", "expected an object");
  reject_unknown(doc, {"model", "host", "sampler", "policy"}, "");
  RunConfig cfg;

  const json& model = object_at(doc, "model", "model");
  reject_unknown(model, {"layers", "channels", "tokens", "heads", "seed", "timestep_embedding_dim",
                         "mlp_ratio", "zero_init_gates"},
                 "model");
  cfg.model.layers = integer_field<int>(model, "layers", "model", cfg.model.layers);
  cfg.model.channels = integer_field<int>(model, "channels", "model", cfg.model.channels);
  cfg.model.tokens = integer_field<int>(model, "tokens", "model", cfg.model.tokens);
  cfg.model.heads = integer_field<int>(model, "heads", "model", cfg.model.heads);
  cfg.model.seed = integer_field<std::uint64_t>(model, "seed", "model", 0, true);
  cfg.model.timestep_embedding_dim =
      integer_field<int>(model, "timestep_embedding_dim", "model", cfg.model.timestep_embedding_dim);
  cfg.model.mlp_ratio = integer_field<int>(model, "mlp_ratio", "model", cfg.model.mlp_ratio);
  if (model.contains("zero_init_gates")) {
    if (!model.at("zero_init_gates").is_boolean()) config_error("model.zero_init_gates", "expected a boolean");
    cfg.model.zero_init_gates = model.at("zero_init_gates").get<bool>();
  }
  check("model", [&] { validate(cfg.model); });

  if (doc.contains("host")) {
    if (!doc.at("host").is_string()) config_error("host", "expected a string");
    cfg.host = doc.at("host").get<std::string>();
    if (cfg.host != "toy" && cfg.host != "synthetic") {
      config_error("host", "expected \"toy\" or \"synthetic\", got \"" + cfg.host + "\"");
    }
  }

  const json& sampler = object_at(doc, "sampler", "sampler");
  reject_unknown(sampler, {"steps", "noise_seed"}, "sampler");
  cfg.sampler.steps = integer_field<int>(sampler, "steps", "sampler", cfg.sampler.steps);
  cfg.sampler.noise_seed = integer_field<std::uint64_t>(sampler, "noise_seed", "sampler", 0, true);
  if (cfg.sampler.steps < 1) config_error("sampler.steps", "must be >= 1");

  const json& policy = object_at(doc, "policy", "policy");
  reject_unknown(policy, {"interval", "low_order", "high_order", "cutoff", "transform"}, "policy");
  cfg.policy.interval = integer_field<int>(policy, "interval", "policy", cfg.policy.interval);
  cfg.policy.low_order = integer_field<int>(policy, "low_order", "policy", cfg.policy.low_order);
  cfg.policy.high_order = integer_field<int>(policy, "high_order", "policy", cfg.policy.high_order);
  cfg.policy.cutoff = number_field(policy, "cutoff", "policy", cfg.policy.cutoff);
  const std::string transform = string_field(policy, "transform", "policy", "dct");
  check("policy.transform", [&] { cfg.policy.transform = parse_transform(transform); });
  check("policy.interval", [&] {
    if (cfg.policy.interval < 1 || cfg.policy.interval > cfg.sampler.steps) {
      fail(ErrorCode::kInvalidInterval, "must lie in [1, sampler.steps]");
    }
  });
  check("policy.low_order", [&] { CacheConfig c = cfg.policy; c.high_order = 0; validate(c); });
  check("policy.high_order", [&] { CacheConfig c = cfg.policy; c.low_order = 0; validate(c); });
  check("policy.cutoff", [&] {
    // Exercise the split once so degenerate cutoffs fail at parse time.
    split_bands(Tensor(1, static_cast<std::size_t>(cfg.model.channels)), cfg.policy.cutoff,
                cfg.policy.transform);
  });
  return cfg;
}

RunConfig parse_run_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  return parse_run_config(doc);
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
  nlohmann::ordered_json out;
  out["model"] = {{"layers", cfg.model.layers},
                  {"channels", cfg.model.channels},
                  {"tokens", cfg.model.tokens},
                  {"heads", cfg.model.heads},
                  {"seed", cfg.model.seed},
                  {"timestep_embedding_dim", cfg.model.timestep_embedding_dim},
                  {"mlp_ratio", cfg.model.mlp_ratio},
                  {"zero_init_gates", cfg.model.zero_init_gates}};
  out["host"] = cfg.host;
  out["sampler"] = {{"steps", cfg.sampler.steps}, {"noise_seed", cfg.sampler.noise_seed}};
  out["policy"] = {{"interval", cfg.policy.interval},
                   {"low_order", cfg.policy.low_order},
                   {"high_order", cfg.policy.high_order},
                   {"cutoff", cfg.policy.cutoff},
                   {"transform", transform_name(cfg.policy.transform)}};
  return out;
}

std::string config_hash(const RunConfig& cfg) { return fnv1a_hex(config_to_json(cfg).dump()); }

std::unique_ptr<Denoiser> make_host(const RunConfig& cfg) {
  if (cfg.host == "synthetic") {
    return std::make_unique<SyntheticHost>(static_cast<std::size_t>(cfg.model.tokens),
                                           static_cast<std::size_t>(cfg.model.channels),
                                           cfg.policy.cutoff, cfg.model.seed);
  }
  return std::make_unique<ToyDit>(cfg.model);
}

CacheConfig method_policy(const CacheConfig& policy, Method m) {
  CacheConfig out = policy;
  switch (m) {
    case Method::kFreqca:
    case Method::kLayerwise:
      break;
    case Method::kFora:
      out.low_order = 0;
      out.high_order = 0;
      out.transform = TransformKind::kNone;
      break;
    case Method::kTaylor:
      out.low_order = policy.high_order;
      out.high_order = 0;
      out.transform = TransformKind::kNone;
      break;
  }
  return out;
}

RunReport run_method(const RunConfig& cfg, Method m) {
  const auto host = make_host(cfg);
  const SchedulerPlan plan = build_plan(cfg.sampler.steps, cfg.policy.interval);
  RunReport report = m == Method::kLayerwise
                         ? run_layerwise_baseline(*host, plan, cfg.policy.high_order, cfg.sampler.noise_seed)
                         : run_policy(*host, plan, method_policy(cfg.policy, m), cfg.sampler.noise_seed);
  report.method = method_name(m);
  return report;
}

std::vector<Tensor> ground_truth_features(const RunConfig& cfg) {
  const auto host = make_host(cfg);
  return sample(*host, cfg.sampler.steps, cfg.sampler.noise_seed).outputs;
}

}  // namespace freqca
