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

#include "freqca/toy_dit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "freqca/frequency.hpp"

namespace freqca {
namespace {

constexpr double kLayerNormEps = 1e-6;
constexpr double kGateBias = 0.5;
constexpr double kModulationScale = 0.3;

class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1], u2 in [0, 1)
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  Tensor tensor(std::size_t rows, std::size_t cols, double stddev) {
    Tensor t(rows, cols);
    for (double& v : t.values()) v = stddev * next();
    return t;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMatrix> view(const Tensor& t) {
  return {t.values().data(), static_cast<Eigen::Index>(t.rows()), static_cast<Eigen::Index>(t.cols())};
}

// out = a * b for row-major a (n x k) and b (k x m).
Tensor matmul(const Tensor& a, const Tensor& b) {
  Tensor out(a.rows(), b.cols());
  Eigen::Map<RowMatrix>(out.values().data(), static_cast<Eigen::Index>(out.rows()),
                        static_cast<Eigen::Index>(out.cols())).noalias() = view(a) * view(b);
  return out;
}

// LayerNorm without affine parameters, then (1 + scale) * x + shift.
Tensor modulated_norm(const Tensor& h, std::span<const double> shift, std::span<const double> scale) {
  Tensor out(h.rows(), h.cols());
  const auto c = static_cast<double>(h.cols());
  for (std::size_t r = 0; r < h.rows(); ++r) {
    const auto src = h.row(r);
    double mean = 0.0;
    for (double v : src) mean += v;
    mean /= c;
    double var = 0.0;
    for (double v : src) var += (v - mean) * (v - mean);
    var /= c;
    const double inv = 1.0 / std::sqrt(var + kLayerNormEps);
    auto dst = out.row(r);
    for (std::size_t j = 0; j < h.cols(); ++j) {
      dst[j] = (src[j] - mean) * inv * (1.0 + scale[j]) + shift[j];
    }
  }
  return out;
}

double gelu(double x) {
  constexpr double k = 0.7978845608028654;  // sqrt(2 / pi)
  return 0.5 * x * (1.0 + std::tanh(k * (x + 0.044715 * x * x * x)));
}

double silu(double x) { return x / (1.0 + std::exp(-x)); }

void apply_gate(Tensor& t, std::span<const double> gate) {
  for (std::size_t r = 0; r < t.rows(); ++r) {
    auto row = t.row(r);
    for (std::size_t j = 0; j < t.cols(); ++j) row[j] *= gate[j];
  }
}

}  // namespace

Tensor gaussian_tensor(std::size_t rows, std::size_t cols, std::uint64_t seed, double stddev) {
  GaussianStream g(seed);
  return g.tensor(rows, cols, stddev);
}

void validate(const ToyDitConfig& cfg) {
  auto bad = [](const std::string& msg) { fail(ErrorCode::kInvalidConfig, msg); };
  if (cfg.layers < 1) bad("layers must be >= 1");
  if (cfg.channels < 2) bad("channels must be >= 2");
  if (cfg.tokens < 1) bad("tokens must be >= 1");
  if (cfg.heads < 1) bad("heads must be >= 1");
  if (cfg.channels % cfg.heads != 0) {
    bad("heads (" + std::to_string(cfg.heads) + ") must divide channels (" +
        std::to_string(cfg.channels) + ")");
  }
  if (cfg.timestep_embedding_dim < 2 || cfg.timestep_embedding_dim % 2 != 0) {
    bad("timestep_embedding_dim must be even and >= 2");
  }
  if (cfg.mlp_ratio < 1) bad("mlp_ratio must be >= 1");
}

ToyDit::ToyDit(const ToyDitConfig& cfg) : cfg_(cfg) {
  validate(cfg_);
  const auto c = static_cast<std::size_t>(cfg_.channels);
  const auto e = static_cast<std::size_t>(cfg_.timestep_embedding_dim);
  const auto hidden = c * static_cast<std::size_t>(cfg_.mlp_ratio);
  const double proj = 1.0 / std::sqrt(static_cast<double>(c));

  GaussianStream g(cfg_.seed);
  time_w_ = g.tensor(e, e, 1.0 / std::sqrt(static_cast<double>(e)));
  layers_.reserve(static_cast<std::size_t>(cfg_.layers));
  for (int l = 0; l < cfg_.layers; ++l) {
    Layer layer;
    layer.wq = g.tensor(c, c, proj);
    layer.wk = g.tensor(c, c, proj);
    layer.wv = g.tensor(c, c, proj);
    layer.wo = g.tensor(c, c, proj);
    layer.w1 = g.tensor(c, hidden, proj);
    layer.w2 = g.tensor(hidden, c, 1.0 / std::sqrt(static_cast<double>(hidden)));
    layer.mod_w = g.tensor(e, 6 * c, kModulationScale / std::sqrt(static_cast<double>(e)));
    layer.mod_b.assign(6 * c, 0.0);
    for (std::size_t gate_block : {std::size_t{2}, std::size_t{5}}) {
      for (std::size_t j = 0; j < c; ++j) {
        if (cfg_.zero_init_gates) {
          for (std::size_t r = 0; r < e; ++r) layer.mod_w(r, gate_block * c + j) = 0.0;
        } else {
          layer.mod_b[gate_block * c + j] = kGateBias;
        }
      }
    }
    layers_.push_back(std::move(layer));
  }
}

std::vector<double> ToyDit::timestep_embedding(double t) const {
  const auto e = static_cast<std::size_t>(cfg_.timestep_embedding_dim);
  const std::size_t half = e / 2;
  std::vector<double> raw(e);
  for (std::size_t i = 0; i < half; ++i) {
    // Angular frequencies from 4 down to 0.04: smooth over t in [0, 1].
    const double frac = half > 1 ? static_cast<double>(i) / static_cast<double>(half - 1) : 0.0;
    const double omega = 4.0 * std::pow(0.01, frac);
    raw[i] = std::sin(omega * t);
    raw[half + i] = std::cos(omega * t);
  }
  std::vector<double> out(e, 0.0);
  for (std::size_t i = 0; i < e; ++i) {
    for (std::size_t j = 0; j < e; ++j) out[j] += raw[i] * time_w_(i, j);
  }
  for (double& v : out) v = silu(v);
  return out;
}

ForwardTrace ToyDit::forward_trace(const Tensor& x, double t) const {
  if (x.rows() != tokens() || x.cols() != channels()) {
    fail(ErrorCode::kShapeMismatch, "toy dit input is " + std::to_string(x.rows()) + "x" +
                                        std::to_string(x.cols()) + ", expected " +
                                        std::to_string(tokens()) + "x" + std::to_string(channels()));
  }
  if (!std::isfinite(t)) fail(ErrorCode::kInvalidArgument, "timestep must be finite");

  const std::size_t c = channels();
  const std::size_t n = tokens();
  const auto heads = static_cast<std::size_t>(cfg_.heads);
  const std::size_t head_dim = c / heads;
  const double attn_scale = 1.0 / std::sqrt(static_cast<double>(head_dim));
  const auto temb = timestep_embedding(t);

  ForwardTrace trace;
  trace.input = x;
  trace.residuals.reserve(2 * layers_.size());
  Tensor h = x;

  std::vector<double> mod(6 * c);
  std::vector<double> scores(n);
  for (const Layer& layer : layers_) {
    std::copy(layer.mod_b.begin(), layer.mod_b.end(), mod.begin());
    for (std::size_t i = 0; i < temb.size(); ++i) {
      const auto w = layer.mod_w.row(i);
      for (std::size_t j = 0; j < mod.size(); ++j) mod[j] += temb[i] * w[j];
    }
    const std::span<const double> m(mod);

    // Attention block.
    const Tensor a = modulated_norm(h, m.subspan(0, c), m.subspan(c, c));
    const Tensor q = matmul(a, layer.wq);
    const Tensor k = matmul(a, layer.wk);
    const Tensor v = matmul(a, layer.wv);
    Tensor attn(n, c);
    for (std::size_t hd = 0; hd < heads; ++hd) {
      const std::size_t off = hd * head_dim;
      for (std::size_t i = 0; i < n; ++i) {
        double peak = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
          double s = 0.0;
          for (std::size_t d = 0; d < head_dim; ++d) s += q(i, off + d) * k(j, off + d);
          scores[j] = s * attn_scale;
          peak = std::max(peak, scores[j]);
        }
        double total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          scores[j] = std::exp(scores[j] - peak);
          total += scores[j];
        }
        for (std::size_t j = 0; j < n; ++j) {
          const double w = scores[j] / total;
          for (std::size_t d = 0; d < head_dim; ++d) attn(i, off + d) += w * v(j, off + d);
        }
      }
    }
    Tensor attn_residual = matmul(attn, layer.wo);
    apply_gate(attn_residual, m.subspan(2 * c, c));
    h += attn_residual;
    trace.residuals.push_back(std::move(attn_residual));

    // MLP block.
    const Tensor b = modulated_norm(h, m.subspan(3 * c, c), m.subspan(4 * c, c));
    Tensor hidden = matmul(b, layer.w1);
    for (double& val : hidden.values()) val = gelu(val);
    Tensor mlp_residual = matmul(hidden, layer.w2);
    apply_gate(mlp_residual, m.subspan(5 * c, c));
    h += mlp_residual;
    trace.residuals.push_back(std::move(mlp_residual));
  }
  if (!h.all_finite()) fail(ErrorCode::kNumerical, "toy dit produced non-finite output");
  trace.crf = std::move(h);
  return trace;
}

Tensor ToyDit::forward(const Tensor& x, double t) const { return forward_trace(x, t).crf; }

std::uint64_t ToyDit::forward_macs() const {
  const auto c = static_cast<std::uint64_t>(cfg_.channels);
  const auto n = static_cast<std::uint64_t>(cfg_.tokens);
  const auto e = static_cast<std::uint64_t>(cfg_.timestep_embedding_dim);
  const auto hidden = c * static_cast<std::uint64_t>(cfg_.mlp_ratio);
  const std::uint64_t modulation = e * 6 * c;
  const std::uint64_t norms = 2 * (3 * n * c);
  const std::uint64_t attention = 4 * n * c * c + 2 * n * n * c;
  const std::uint64_t mlp = 2 * n * c * hidden + n * hidden;
  const std::uint64_t gates = 2 * n * c;
  const std::uint64_t per_layer = modulation + norms + attention + mlp + gates;
  return e * e + static_cast<std::uint64_t>(cfg_.layers) * per_layer;
}

SyntheticHost::SyntheticHost(std::size_t tokens, std::size_t channels, double cutoff,
                             std::uint64_t seed) {
  GaussianStream g(seed);
  low_ = split_bands(g.tensor(tokens, channels, 1.0), cutoff, TransformKind::kDct).low;
  a0_ = split_bands(g.tensor(tokens, channels, 1.0), cutoff, TransformKind::kDct).high;
  a1_ = split_bands(g.tensor(tokens, channels, 1.0), cutoff, TransformKind::kDct).high;
  a2_ = split_bands(g.tensor(tokens, channels, 1.0), cutoff, TransformKind::kDct).high;
}

Tensor SyntheticHost::high_band(double t) const {
  Tensor out = a0_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a1_[i] * t + a2_[i] * t * t;
  return out;
}

Tensor SyntheticHost::forward(const Tensor& x, double t) const {
  if (x.rows() != tokens() || x.cols() != channels()) {
    fail(ErrorCode::kShapeMismatch, "synthetic host input shape mismatch");
  }
  return low_ + high_band(t);
}

ForwardTrace SyntheticHost::forward_trace(const Tensor&, double) const {
  fail(ErrorCode::kInvalidArgument, "synthetic host has no residual streams");
}

std::uint64_t SyntheticHost::forward_macs() const { return 3 * low_.size(); }

double sampler_timestep(int step, int total_steps) {
  return 1.0 - static_cast<double>(step) / static_cast<double>(total_steps);
}

SampleResult sample(const Denoiser& model, int steps, std::uint64_t noise_seed, const StepHook& hook) {
  if (steps < 1) fail(ErrorCode::kInvalidArgument, "sampler needs at least one step");
  SampleResult out;
  out.states.reserve(static_cast<std::size_t>(steps) + 1);
  out.outputs.reserve(static_cast<std::size_t>(steps));
  out.states.push_back(gaussian_tensor(model.tokens(), model.channels(), noise_seed));
  const double dt = 1.0 / static_cast<double>(steps);
  for (int k = 0; k < steps; ++k) {
    const Tensor& x = out.states.back();
    const double t = sampler_timestep(k, steps);
    Tensor v = hook ? hook(k, t, x) : model.forward(x, t);
    require_same_shape(x, v, "sampler velocity");
    Tensor next = x;
    for (std::size_t i = 0; i < next.size(); ++i) next[i] -= dt * v[i];
    out.outputs.push_back(std::move(v));
    out.states.push_back(std::move(next));
  }
  return out;
}

}  // namespace freqca
