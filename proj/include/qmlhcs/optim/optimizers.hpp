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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmlhcs/core/random.hpp"
#include "qmlhcs/core/registry.hpp"
#include "qmlhcs/core/types.hpp"

namespace qmlhcs {

using ParameterVector = std::vector<double>;
using Hyperparams = std::map<std::string, double>;
using Objective = std::function<double(std::span<const double>)>;

struct OptimizerSpec {
  std::string name;
  Hyperparams hyperparams;
};

/// Method-specific accumulators. Each optimizer uses the fields it needs;
/// `extra` is free for externally registered methods.
struct OptimizerState {
  std::uint64_t step = 0;
  std::uint64_t seed = 0;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  double radius = 0.0;
  std::map<std::string, std::vector<double>> extra;
};

struct StepResult {
  ParameterVector theta;
  std::size_t evaluations = 0;
};

/// Unified update contract. Gradient-based methods read `gradient`;
/// gradient-free methods call `objective`.
class Optimizer {
 public:
  virtual ~Optimizer() = default;
  virtual std::string_view name() const = 0;
  virtual bool requires_gradient() const = 0;

  virtual OptimizerState init(std::size_t parameters, std::uint64_t seed) const {
    detail::require(parameters >= 1, ErrorKind::InvalidConfig, "optimizer needs at least one parameter");
    OptimizerState state;
    state.seed = seed;
    return state;
  }

  virtual StepResult step(OptimizerState& state, std::span<const double> theta, const Objective& objective,
                          std::optional<std::span<const double>> gradient) const = 0;
};

namespace detail {

inline double required_hyperparam(const Hyperparams& h, const std::string& key, std::string_view method) {
  const auto it = h.find(key);
  if (it == h.end()) {
    throw Error(ErrorKind::MissingHyperparam, std::string(method) + " requires hyperparameter '" + key + "'");
  }
  require(std::isfinite(it->second), ErrorKind::InvalidConfig, "hyperparameter '" + key + "' must be finite");
  return it->second;
}

inline double optional_hyperparam(const Hyperparams& h, const std::string& key, double fallback) {
  const auto it = h.find(key);
  if (it == h.end()) return fallback;
  require(std::isfinite(it->second), ErrorKind::InvalidConfig, "hyperparameter '" + key + "' must be finite");
  return it->second;
}

inline double evaluate(const Objective& objective, std::span<const double> theta) {
  require(static_cast<bool>(objective), ErrorKind::InvalidConfig, "gradient-free step needs an objective");
  const double value = objective(theta);
  if (!std::isfinite(value)) throw Error(ErrorKind::NonFiniteObjective, "objective returned a non-finite value");
  return value;
}

inline std::span<const double> require_gradient(std::optional<std::span<const double>> gradient,
                                                std::span<const double> theta, std::string_view method) {
  require(gradient.has_value(), ErrorKind::InvalidConfig, std::string(method) + " needs a gradient");
  require_same_size(theta.size(), gradient->size(), "gradient", ErrorKind::LengthMismatch);
  require_finite(*gradient, "gradient");
  return *gradient;
}

}  // namespace detail

class SgdOptimizer final : public Optimizer {
 public:
  explicit SgdOptimizer(const Hyperparams& h) : lr_(detail::required_hyperparam(h, "lr", "sgd")) {}

  std::string_view name() const override { return "sgd"; }
  bool requires_gradient() const override { return true; }

  StepResult step(OptimizerState& state, std::span<const double> theta, const Objective&,
                  std::optional<std::span<const double>> gradient) const override {
    const auto g = detail::require_gradient(gradient, theta, name());
    ParameterVector next(theta.begin(), theta.end());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] -= lr_ * g[i];
    ++state.step;
    return {std::move(next), 0};
  }

 private:
  double lr_;
};

/// Bias-corrected first/second moment method. Defaults beta1=0.9,
/// beta2=0.999, eps=1e-8.
class AdamLikeOptimizer final : public Optimizer {
 public:
  explicit AdamLikeOptimizer(const Hyperparams& h)
      : lr_(detail::required_hyperparam(h, "lr", "adam_like")),
        beta1_(detail::optional_hyperparam(h, "beta1", 0.9)),
        beta2_(detail::optional_hyperparam(h, "beta2", 0.999)),
        eps_(detail::optional_hyperparam(h, "eps", 1e-8)) {}

  std::string_view name() const override { return "adam_like"; }
  bool requires_gradient() const override { return true; }

  OptimizerState init(std::size_t parameters, std::uint64_t seed) const override {
    OptimizerState state = Optimizer::init(parameters, seed);
    state.first_moment.assign(parameters, 0.0);
    state.second_moment.assign(parameters, 0.0);
    return state;
  }

  StepResult step(OptimizerState& state, std::span<const double> theta, const Objective&,
                  std::optional<std::span<const double>> gradient) const override {
    const auto g = detail::require_gradient(gradient, theta, name());
    if (state.first_moment.size() != theta.size()) state.first_moment.assign(theta.size(), 0.0);
    if (state.second_moment.size() != theta.size()) state.second_moment.assign(theta.size(), 0.0);

    const double k = static_cast<double>(state.step + 1);
    const double m_correction = 1.0 - std::pow(beta1_, k);
    const double v_correction = 1.0 - std::pow(beta2_, k);
    ParameterVector next(theta.begin(), theta.end());
    for (std::size_t i = 0; i < next.size(); ++i) {
      state.first_moment[i] = beta1_ * state.first_moment[i] + (1.0 - beta1_) * g[i];
      state.second_moment[i] = beta2_ * state.second_moment[i] + (1.0 - beta2_) * g[i] * g[i];
      const double m_hat = state.first_moment[i] / m_correction;
      const double v_hat = state.second_moment[i] / v_correction;
      next[i] -= lr_ * m_hat / (std::sqrt(v_hat) + eps_);
    }
    ++state.step;
    return {std::move(next), 0};
  }

 private:
  double lr_, beta1_, beta2_, eps_;
};

/// Central differences per coordinate (h default 1e-4), then a plain
/// gradient step with rate lr. Costs 2P evaluations.
class FiniteDiffOptimizer final : public Optimizer {
 public:
  explicit FiniteDiffOptimizer(const Hyperparams& h)
      : lr_(detail::required_hyperparam(h, "lr", "finite_diff")), h_(detail::optional_hyperparam(h, "h", 1e-4)) {
    detail::require(h_ > 0.0, ErrorKind::InvalidConfig, "finite_diff step h must be positive");
  }

  std::string_view name() const override { return "finite_diff"; }
  bool requires_gradient() const override { return false; }

  ParameterVector estimate(std::span<const double> theta, const Objective& objective) const {
    ParameterVector probe(theta.begin(), theta.end());
    ParameterVector grad(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
      probe[i] = theta[i] + h_;
      const double plus = detail::evaluate(objective, probe);
      probe[i] = theta[i] - h_;
      const double minus = detail::evaluate(objective, probe);
      probe[i] = theta[i];
      grad[i] = (plus - minus) / (2.0 * h_);
    }
    return grad;
  }

  StepResult step(OptimizerState& state, std::span<const double> theta, const Objective& objective,
                  std::optional<std::span<const double>>) const override {
    const auto grad = estimate(theta, objective);
    ParameterVector next(theta.begin(), theta.end());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] -= lr_ * grad[i];
    ++state.step;
    return {std::move(next), 2 * theta.size()};
  }

 private:
  double lr_, h_;
};

/// Simultaneous perturbation with Rademacher directions drawn from
/// SplitMix64(derive_seed(seed, {k})). Gains a_k = a / (k + 1 + A)^0.602 and
/// c_k = c / (k + 1)^0.101; defaults a = 0.1, c = 0.1, A = 10.
class SpsaOptimizer final : public Optimizer {
 public:
  explicit SpsaOptimizer(const Hyperparams& h)
      : a_(detail::optional_hyperparam(h, "a", 0.1)),
        c_(detail::optional_hyperparam(h, "c", 0.1)),
        big_a_(detail::optional_hyperparam(h, "A", 10.0)),
        alpha_(detail::optional_hyperparam(h, "alpha", 0.602)),
        gamma_(detail::optional_hyperparam(h, "gamma", 0.101)) {
    detail::require(c_ > 0.0, ErrorKind::InvalidConfig, "spsa c must be positive");
  }

  std::string_view name() const override { return "spsa"; }
  bool requires_gradient() const override { return false; }

  StepResult step(OptimizerState& state, std::span<const double> theta, const Objective& objective,
                  std::optional<std::span<const double>>) const override {
    const double k = static_cast<double>(state.step);
    const double ak = a_ / std::pow(k + 1.0 + big_a_, alpha_);
    const double ck = c_ / std::pow(k + 1.0, gamma_);

    SplitMix64 rng(derive_seed(state.seed, {state.step}));
    std::vector<double> delta(theta.size());
    for (double& d : delta) d = rng.rademacher();

    ParameterVector plus(theta.begin(), theta.end());
    ParameterVector minus(theta.begin(), theta.end());
    for (std::size_t i = 0; i < theta.size(); ++i) {
      plus[i] += ck * delta[i];
      minus[i] -= ck * delta[i];
    }
    const double diff = detail::evaluate(objective, plus) - detail::evaluate(objective, minus);

    ParameterVector next(theta.begin(), theta.end());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] -= ak * diff / (2.0 * ck * delta[i]);
    ++state.step;
    return {std::move(next), 2};
  }

 private:
  double a_, c_, big_a_, alpha_, gamma_;
};

/// Random-proposal descent with an adaptive radius: theta + u with every
/// u_i ~ U[-r, r], kept only on strict improvement. Accepts grow r by 1.2
/// (capped at r_max), rejects shrink it by 0.9 (floored at r_min). Defaults
/// r0 = 0.05, r_min = 1e-4, r_max = 0.2. A non-finite candidate value counts
/// as a rejection.
class TrustRegionScalarOptimizer final : public Optimizer {
 public:
  explicit TrustRegionScalarOptimizer(const Hyperparams& h = {})
      : r0_(detail::optional_hyperparam(h, "r0", 0.05)),
        r_min_(detail::optional_hyperparam(h, "r_min", 1e-4)),
        r_max_(detail::optional_hyperparam(h, "r_max", 0.2)),
        grow_(detail::optional_hyperparam(h, "grow", 1.2)),
        shrink_(detail::optional_hyperparam(h, "shrink", 0.9)) {
    detail::require(r_min_ > 0.0 && r_min_ <= r0_ && r0_ <= r_max_, ErrorKind::InvalidConfig,
                    "trust region radii must satisfy 0 < r_min <= r0 <= r_max");
    detail::require(grow_ >= 1.0 && shrink_ > 0.0 && shrink_ <= 1.0, ErrorKind::InvalidConfig,
                    "trust region needs grow >= 1 and 0 < shrink <= 1");
  }

  std::string_view name() const override { return "trust_region_scalar"; }
  bool requires_gradient() const override { return false; }

  double r_min() const noexcept { return r_min_; }
  double r_max() const noexcept { return r_max_; }

  OptimizerState init(std::size_t parameters, std::uint64_t seed) const override {
    OptimizerState state = Optimizer::init(parameters, seed);
    state.radius = r0_;
    return state;
  }

  StepResult step(OptimizerState& state, std::span<const double> theta, const Objective& objective,
                  std::optional<std::span<const double>>) const override {
    if (state.radius <= 0.0) state.radius = r0_;
    const double current = detail::evaluate(objective, theta);

    SplitMix64 rng(derive_seed(state.seed, {state.step}));
    ParameterVector candidate(theta.begin(), theta.end());
    for (double& v : candidate) v += rng.uniform(-state.radius, state.radius);

    const double proposed = objective(candidate);
    ++state.step;
    if (std::isfinite(proposed) && proposed < current) {
      state.radius = std::min(state.radius * grow_, r_max_);
      return {std::move(candidate), 2};
    }
    state.radius = std::max(state.radius * shrink_, r_min_);
    return {ParameterVector(theta.begin(), theta.end()), 2};
  }

 private:
  double r0_, r_min_, r_max_, grow_, shrink_;
};

using OptimizerFactory = std::function<std::unique_ptr<Optimizer>(const Hyperparams&)>;

class OptimizerRegistry : public Registry<OptimizerFactory, bool> {
 public:
  OptimizerRegistry() : Registry(ErrorKind::UnknownOptimizer) {}
};

/// Built-ins in listing order: sgd, adam_like, finite_diff, spsa,
/// trust_region_scalar.
inline OptimizerRegistry builtin_optimizers() {
  OptimizerRegistry registry;
  registry.add("sgd", [](const Hyperparams& h) { return std::make_unique<SgdOptimizer>(h); }, true);
  registry.add("adam_like", [](const Hyperparams& h) { return std::make_unique<AdamLikeOptimizer>(h); }, true);
  registry.add("finite_diff", [](const Hyperparams& h) { return std::make_unique<FiniteDiffOptimizer>(h); }, false);
  registry.add("spsa", [](const Hyperparams& h) { return std::make_unique<SpsaOptimizer>(h); }, false);
  registry.add("trust_region_scalar",
               [](const Hyperparams& h) { return std::make_unique<TrustRegionScalarOptimizer>(h); }, false);
  return registry;
}

struct CreatedOptimizer {
  std::unique_ptr<Optimizer> optimizer;
  OptimizerState state;
};

inline CreatedOptimizer registry_create(const OptimizerRegistry& registry, const OptimizerSpec& spec,
                                        std::size_t parameters = 1, std::uint64_t seed = 0) {
  auto optimizer = registry.at(spec.name).factory(spec.hyperparams);
  detail::require(optimizer != nullptr, ErrorKind::InvalidConfig, "factory for '" + spec.name + "' returned null");
  OptimizerState state = optimizer->init(parameters, seed);
  return {std::move(optimizer), std::move(state)};
}

inline ParameterVector step_gradient(const Optimizer& optimizer, OptimizerState& state, std::span<const double> theta,
                                     std::span<const double> gradient) {
  detail::require(optimizer.requires_gradient(), ErrorKind::InvalidConfig,
                  std::string(optimizer.name()) + " is gradient-free");
  detail::require_finite(theta, "parameters");
  return optimizer.step(state, theta, Objective{}, gradient).theta;
}

inline StepResult step_gradient_free(const Optimizer& optimizer, OptimizerState& state, std::span<const double> theta,
                                     const Objective& objective) {
  detail::require(!optimizer.requires_gradient(), ErrorKind::InvalidConfig,
                  std::string(optimizer.name()) + " needs a gradient");
  detail::require_finite(theta, "parameters");
  return optimizer.step(state, theta, objective, std::nullopt);
}

/// One trust-region step on a scalar.
inline double step_trust_region_scalar(const TrustRegionScalarOptimizer& optimizer, OptimizerState& state,
                                       double alpha, const std::function<double(double)>& objective) {
  const double theta[1] = {alpha};
  const auto result = optimizer.step(
      state, theta, [&objective](std::span<const double> p) { return objective(p[0]); }, std::nullopt);
  return result.theta[0];
}

}  // namespace qmlhcs
