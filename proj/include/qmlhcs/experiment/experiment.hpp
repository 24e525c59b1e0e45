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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "qmlhcs/backend/engines.hpp"
#include "qmlhcs/core/random.hpp"
#include "qmlhcs/evaluation/losses.hpp"
#include "qmlhcs/experiment/config.hpp"
#include "qmlhcs/experiment/drift.hpp"
#include "qmlhcs/hypercausal/node.hpp"
#include "qmlhcs/optim/optimizers.hpp"
#include "qmlhcs/runtime/callbacks.hpp"
#include "qmlhcs/runtime/telemetry.hpp"

namespace qmlhcs {

/// One row of epochs.csv.
struct EpochLog {
  std::size_t epoch = 0;
  double alpha = 0.0;
  double delta_alpha = 0.0;
  double loss_task = 0.0;
  double loss_cons = 0.0;
  double loss_coh = 0.0;
  double loss_total = 0.0;
  double mean_state = 0.0;
  double mean_future = 0.0;
  double phi = 0.0;
  double a = 1.0;
  double b = 0.0;
  std::size_t depth = 1;

  friend bool operator==(const EpochLog&, const EpochLog&) = default;
};

/// Fixed ramp x0[i] = i / (D - 1).
inline StateVector base_ramp(std::size_t dim) {
  detail::require(dim >= 2, ErrorKind::InvalidConfig, "ramp needs at least two dimensions");
  std::vector<double> x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = static_cast<double>(i) / static_cast<double>(dim - 1);
  return StateVector(std::move(x));
}

inline std::shared_ptr<const Backend> make_experiment_backend(const ExperimentConfig& config) {
  BackendConfig bc;
  bc.dim = config.dim;
  bc.branches = config.branches;
  bc.depth = config.depth_schedule.start;
  bc.seed = config.seed;
  auto projector = std::make_shared<const LinearProjector>(config.projector);
  switch (config.backend) {
    case ExperimentBackend::Analytic: return std::make_shared<CircuitBackend>(bc, projector);
    case ExperimentBackend::Sampled:
      bc.shots = config.shots;
      return std::make_shared<CircuitBackend>(bc, projector);
    case ExperimentBackend::Reference: return std::make_shared<ReferenceBackend>(bc, projector);
  }
  return nullptr;
}

/// Drift-feedback loop around a single node. Construct, then call run() or
/// drive epochs manually through evaluate().
class DriftExperiment {
 public:
  /// Everything computed for one candidate alpha under frozen epoch conditions.
  struct Evaluation {
    TriadicOutput raw;
    StateVector observed_state;
    StateVector observed_future;
    double loss_task = 0.0;
    double loss_cons = 0.0;
    double loss_coh = 0.0;
    double loss_total = 0.0;
  };

  /// Conditions shared by every candidate evaluated within one epoch.
  struct EpochConditions {
    std::size_t epoch = 0;
    std::size_t depth = 1;
    DriftSignals signals;
    std::uint64_t sample_seed = 0;
  };

  explicit DriftExperiment(ExperimentConfig config, TelemetryLogger* telemetry = nullptr)
      : config_(std::move(config)), telemetry_(telemetry) {
    config_.validate();
    node_ = HCNode(make_experiment_backend(config_), Policy::parse(config_.policy));
    ramp_ = base_ramp(config_.dim);
    optimizers_ = builtin_optimizers();
    auto created = registry_create(optimizers_, config_.optimizer, 1, derive_seed(config_.seed, {0x6f707421}));
    detail::require(!created.optimizer->requires_gradient(), ErrorKind::InvalidConfig,
                    "alpha feedback needs a gradient-free optimizer, got '" + config_.optimizer.name + "'");
    optimizer_ = std::move(created.optimizer);
    optimizer_state_ = std::move(created.state);
  }

  const ExperimentConfig& config() const noexcept { return config_; }
  const HCNode& node() const noexcept { return node_; }

  EpochConditions conditions(std::size_t epoch, std::size_t depth) const {
    return {epoch, depth, drift_signals(epoch, config_.epochs, config_.drift), derive_seed(config_.seed, {epoch})};
  }

  /// The alpha-dependent part of an epoch: drifted input, node step, readout
  /// bias and losses. Pure given the previous observations held by the experiment.
  Evaluation evaluate(double alpha, const EpochConditions& cond) const {
    std::vector<double> scaled(ramp_.begin(), ramp_.end());
    for (double& v : scaled) v *= alpha;
    const StateVector input = apply_input_drift(StateVector(std::move(scaled)), cond.signals.phi, cond.signals.a);

    Evaluation ev{node_forward(node_, input, previous_state_, {.depth = cond.depth, .seed = cond.sample_seed}),
                  {}, {}, 0.0, 0.0, 0.0, 0.0};
    ev.observed_state = apply_readout_bias(ev.raw.state, cond.signals.b);
    ev.observed_future = apply_readout_bias(ev.raw.representative, cond.signals.b);

    // Self-supervised target: last epoch's observed representative future.
    ev.loss_task = previous_future_ ? loss_task(previous_future_->values(), ev.observed_state.values(), TaskLoss::Mse)
                                    : 0.0;
    const StateVector& past = previous_state_ ? *previous_state_ : ev.observed_state;
    ev.loss_cons = loss_consistency(past, ev.observed_state, ev.observed_future, config_.loss_weights);
    ev.loss_coh = loss_coherence(ev.raw.futures, config_.coherence);
    ev.loss_total = aggregate_loss(ev.loss_task, ev.loss_cons, ev.loss_coh);
    return ev;
  }

  /// Runs all epochs through the callback loop. A depth scheduler and, when
  /// a logger was given, a telemetry callback are installed ahead of `extra`.
  std::vector<EpochLog> run(std::span<Callback* const> extra = {}) {
    DepthSchedulerCallback scheduler(config_.depth_schedule);
    std::optional<TelemetryCallback> telemetry_cb;
    std::vector<Callback*> callbacks{&scheduler};
    if (telemetry_) callbacks.push_back(&telemetry_cb.emplace(*telemetry_));
    callbacks.insert(callbacks.end(), extra.begin(), extra.end());

    std::vector<EpochLog> logs;
    logs.reserve(config_.epochs);
    double alpha = config_.alpha0;
    double last_alpha = alpha;

    CallbackContext ctx;
    ctx.alpha = alpha;
    run_with_callbacks(
        [&](CallbackContext& c) {
          const auto epoch = static_cast<std::size_t>(c.epoch);
          const EpochConditions cond = conditions(epoch, c.depth);
          const Evaluation ev = evaluate(alpha, cond);

          EpochLog row;
          row.epoch = epoch;
          row.alpha = alpha;
          row.delta_alpha = epoch == 0 ? 0.0 : alpha - last_alpha;
          row.loss_task = ev.loss_task;
          row.loss_cons = ev.loss_cons;
          row.loss_coh = ev.loss_coh;
          row.loss_total = ev.loss_total;
          row.mean_state = mean_of(ev.observed_state.values());
          row.mean_future = mean_of(ev.observed_future.values());
          row.phi = cond.signals.phi;
          row.a = cond.signals.a;
          row.b = cond.signals.b;
          row.depth = cond.depth;
          logs.push_back(row);

          c.alpha = alpha;
          c.losses = {{"task", ev.loss_task}, {"cons", ev.loss_cons}, {"coh", ev.loss_coh}, {"total", ev.loss_total}};
          c.extra = {{"mean_state", row.mean_state}, {"mean_future", row.mean_future}, {"phi", row.phi},
                     {"a", row.a}, {"b", row.b}};

          last_alpha = alpha;
          if (config_.adapt_alpha) alpha = next_alpha(alpha, cond);
          previous_state_ = ev.observed_state;
          previous_future_ = ev.observed_future;
        },
        callbacks, static_cast<std::int64_t>(config_.epochs), ctx);
    return logs;
  }

 private:
  double next_alpha(double alpha, const EpochConditions& cond) {
    const double theta[1] = {alpha};
    const auto result = step_gradient_free(
        *optimizer_, optimizer_state_, theta,
        [this, &cond](std::span<const double> p) { return evaluate(p[0], cond).loss_total; });
    return result.theta[0];
  }

  ExperimentConfig config_;
  TelemetryLogger* telemetry_;
  HCNode node_;
  StateVector ramp_;
  OptimizerRegistry optimizers_;
  std::unique_ptr<Optimizer> optimizer_;
  OptimizerState optimizer_state_;
  std::optional<StateVector> previous_state_;
  std::optional<StateVector> previous_future_;
};

inline std::vector<EpochLog> run_experiment(const ExperimentConfig& config, TelemetryLogger* telemetry = nullptr) {
  DriftExperiment experiment(config, telemetry);
  return experiment.run();
}

}  // namespace qmlhcs
