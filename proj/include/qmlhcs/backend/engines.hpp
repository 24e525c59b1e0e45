// Copyright 2026 The qmlhcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qmlhcs/backend/counts.hpp"
#include "qmlhcs/backend/statevector.hpp"
#include "qmlhcs/core/backend.hpp"
#include "qmlhcs/core/random.hpp"

namespace qmlhcs {

/// Variational RY + CNOT-chain circuit read out as per-wire <Z>. Runs exactly
/// when the config has no shot count, otherwise estimates <Z> from sampled
/// counts (PauliZ convention, so both modes agree in expectation).
class CircuitBackend final : public Backend {
 public:
  explicit CircuitBackend(BackendConfig config, std::shared_ptr<const Projector> projector = nullptr)
      : Backend(std::move(config), std::move(projector)) {
    detail::require(dim() <= QuantumState::kMaxWires, ErrorKind::InvalidConfig,
                    "circuit backend supports at most " + std::to_string(QuantumState::kMaxWires) + " wires");
  }

  std::string_view name() const override { return sampled() ? "sim_sampled" : "sim_analytic"; }

  BackendCapabilities capabilities() const override { return {true, true, true}; }

  bool sampled() const noexcept { return config().shots.has_value(); }

  QuantumState prepare(std::span<const double> x, std::size_t depth) const {
    return run_circuit(encode_input(x), depth, dim());
  }

 protected:
  StateVector run(std::span<const double> x, const ExecutionOptions& options) const override {
    const QuantumState state = prepare(x, depth_for(options));
    if (!sampled()) return expectation_z(state);
    const auto counts = sample_counts(state, *config().shots, seed_for(options));
    return counts_to_expectations(counts, CountsConvention::PauliZ);
  }
};

/// Deterministic compiled-style map S = tanh(W x + b). Unless given
/// explicitly, W and b are drawn once from SplitMix64 seeded with the config
/// seed: W_ij ~ U[-1, 1] / sqrt(D), b_i ~ U[-1, 1], row-major draw order
/// with all of W before b.
class ReferenceBackend final : public Backend {
 public:
  explicit ReferenceBackend(BackendConfig config, std::shared_ptr<const Projector> projector = nullptr)
      : Backend(std::move(config), std::move(projector)) {
    const std::size_t d = dim();
    SplitMix64 rng(this->config().seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    weights_.resize(d * d);
    for (double& w : weights_) w = rng.uniform(-1.0, 1.0) * scale;
    bias_.resize(d);
    for (double& b : bias_) b = rng.uniform(-1.0, 1.0);
  }

  /// Explicit D x D row-major weights and length-D bias.
  ReferenceBackend(BackendConfig config, std::vector<double> weights, std::vector<double> bias,
                   std::shared_ptr<const Projector> projector = nullptr)
      : Backend(std::move(config), std::move(projector)), weights_(std::move(weights)), bias_(std::move(bias)) {
    detail::require_same_size(dim() * dim(), weights_.size(), "reference weights", ErrorKind::InvalidConfig);
    detail::require_same_size(dim(), bias_.size(), "reference bias", ErrorKind::InvalidConfig);
    detail::require_finite(weights_, "reference weights");
    detail::require_finite(bias_, "reference bias");
  }

  static ReferenceBackend identity(BackendConfig config) {
    const std::size_t d = config.dim;
    std::vector<double> w(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) w[i * d + i] = 1.0;
    return ReferenceBackend(std::move(config), std::move(w), std::vector<double>(d, 0.0));
  }

  std::string_view name() const override { return "reference"; }
  BackendCapabilities capabilities() const override { return {true, false, true}; }

  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> bias() const noexcept { return bias_; }

 protected:
  StateVector run(std::span<const double> x, const ExecutionOptions&) const override {
    const std::size_t d = dim();
    std::vector<double> out(d);
    for (std::size_t i = 0; i < d; ++i) {
      double acc = bias_[i];
      for (std::size_t j = 0; j < d; ++j) acc += weights_[i * d + j] * x[j];
      out[i] = std::tanh(acc);
    }
    return StateVector(std::move(out));
  }

 private:
  std::vector<double> weights_;
  std::vector<double> bias_;
};

/// Registers "sim_analytic", "sim_sampled" and "reference" in that order.
/// sim_analytic drops any shot count; sim_sampled requires one.
inline void register_builtin_backends(BackendRegistry& registry) {
  register_backend(
      registry, "sim_analytic",
      [](const BackendConfig& config) {
        BackendConfig analytic = config;
        analytic.shots.reset();
        return std::make_unique<CircuitBackend>(analytic);
      },
      {.analytic = true, .sampled = false, .deterministic = true});
  register_backend(
      registry, "sim_sampled",
      [](const BackendConfig& config) -> std::unique_ptr<Backend> {
        detail::require(config.shots.has_value(), ErrorKind::InvalidConfig, "sim_sampled requires a shot count");
        return std::make_unique<CircuitBackend>(config);
      },
      {.analytic = false, .sampled = true, .deterministic = true});
  register_backend(
      registry, "reference",
      [](const BackendConfig& config) { return std::make_unique<ReferenceBackend>(config); },
      {.analytic = true, .sampled = false, .deterministic = true});
}

inline BackendRegistry builtin_backends() {
  BackendRegistry registry;
  register_builtin_backends(registry);
  return registry;
}

}  // namespace qmlhcs
