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
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "freqca/tensor.hpp"

namespace freqca {

// Output of one denoiser evaluation with every residual stream exposed.
// residuals holds the attention then MLP update of each layer, in order.
struct ForwardTrace {
  Tensor input;
  std::vector<Tensor> residuals;
  Tensor crf;
};

// Anything the sampler can drive: maps (state, timestep) to a velocity.
class Denoiser {
 public:
  virtual ~Denoiser() = default;

  virtual std::size_t tokens() const = 0;
  virtual std::size_t channels() const = 0;
  virtual int layer_count() const = 0;
  virtual Tensor forward(const Tensor& x, double t) const = 0;
  // Throws InvalidArgument for hosts without residual streams.
  virtual ForwardTrace forward_trace(const Tensor& x, double t) const = 0;
  // Multiply-accumulates of one forward pass.
  virtual std::uint64_t forward_macs() const = 0;
};

struct ToyDitConfig {
  int layers = 8;
  int channels = 64;
  int tokens = 16;
  int heads = 4;
  std::uint64_t seed = 42;
  int timestep_embedding_dim = 32;
  int mlp_ratio = 4;
  // adaLN-Zero style: gate projections start at exactly zero, so every
  // residual update vanishes and the output equals the input.
  bool zero_init_gates = false;
};

void validate(const ToyDitConfig& cfg);

/// Small diffusion transformer: L blocks of adaLN-modulated self-attention
/// and MLP, each added back through a gated residual connection.
///
/// Weights come from std::mt19937_64 seeded with cfg.seed, converted to
/// normals by Box-Muller over 53-bit uniforms (see gaussian_tensor). Draw
/// order: timestep MLP, then per layer Wq, Wk, Wv, Wo, W1, W2, modulation
/// weights. Projections are scaled by 1/sqrt(fan_in); modulation weights by
/// 0.3/sqrt(embedding dim); gate biases start at 0.5 unless zero_init_gates.
class ToyDit final : public Denoiser {
 public:
  explicit ToyDit(const ToyDitConfig& cfg);

  const ToyDitConfig& config() const { return cfg_; }

  std::size_t tokens() const override { return static_cast<std::size_t>(cfg_.tokens); }
  std::size_t channels() const override { return static_cast<std::size_t>(cfg_.channels); }
  int layer_count() const override { return cfg_.layers; }
  Tensor forward(const Tensor& x, double t) const override;
  ForwardTrace forward_trace(const Tensor& x, double t) const override;
  std::uint64_t forward_macs() const override;

  // Sinusoidal embedding of t followed by the shared SiLU projection.
  std::vector<double> timestep_embedding(double t) const;

 private:
  struct Layer {
    Tensor wq, wk, wv, wo;
    Tensor w1, w2;
    Tensor mod_w;  // embedding_dim x 6C: shift1, scale1, gate1, shift2, scale2, gate2
    std::vector<double> mod_b;
  };

  ToyDitConfig cfg_;
  Tensor time_w_;
  std::vector<Layer> layers_;
};

// Output depends only on the timestep: a constant low band plus a high band
// that is quadratic in t. Used to probe the cache engine on a signal whose
// best predictor is known in closed form.
class SyntheticHost final : public Denoiser {
 public:
  SyntheticHost(std::size_t tokens, std::size_t channels, double cutoff, std::uint64_t seed);

  std::size_t tokens() const override { return low_.rows(); }
  std::size_t channels() const override { return low_.cols(); }
  int layer_count() const override { return 1; }
  Tensor forward(const Tensor& x, double t) const override;
  ForwardTrace forward_trace(const Tensor& x, double t) const override;
  std::uint64_t forward_macs() const override;

  const Tensor& low_band() const { return low_; }
  // High band at time t: a0 + a1 t + a2 t^2.
  Tensor high_band(double t) const;

 private:
  Tensor low_;
  Tensor a0_, a1_, a2_;
};

/// Deterministic N(0, stddev^2) tensor from a seed (Box-Muller over
/// std::mt19937_64).
Tensor gaussian_tensor(std::size_t rows, std::size_t cols, std::uint64_t seed, double stddev = 1.0);

// Timestep of sampler step k out of T: t_k = 1 - k / T.
double sampler_timestep(int step, int total_steps);

struct SampleResult {
  std::vector<Tensor> states;   // T + 1 states, starting from noise
  std::vector<Tensor> outputs;  // T velocities actually applied
};

// Produces the velocity for a step. The default calls the model.
using StepHook = std::function<Tensor(int step, double t, const Tensor& x)>;

/// Euler integration of the flow from t = 1 to t = 0:
/// x_{k+1} = x_k - (1/T) v(x_k, t_k).
SampleResult sample(const Denoiser& model, int steps, std::uint64_t noise_seed,
                    const StepHook& hook = {});

}  // namespace freqca
