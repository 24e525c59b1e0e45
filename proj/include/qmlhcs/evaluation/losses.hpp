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
#include <span>
#include <vector>

#include "qmlhcs/core/types.hpp"

namespace qmlhcs {

enum class CoherenceMode { Var, Mad };
enum class TaskLoss { Mse, Mae, Ce };

struct LossWeights {
  double alpha = 1.0;  // past deviation ||S_t - S_{t-1}||^2
  double beta = 1.0;   // future deviation ||S_t - S_hat_{t+1}||^2

  void validate() const {
    detail::require(std::isfinite(alpha) && alpha >= 0.0, ErrorKind::InvalidConfig, "alpha must be >= 0");
    detail::require(std::isfinite(beta) && beta >= 0.0, ErrorKind::InvalidConfig, "beta must be >= 0");
  }
};

/// Predictions and targets of equal length.
struct SeriesPair {
  std::vector<double> predictions;
  std::vector<double> targets;

  std::size_t size() const noexcept { return predictions.size(); }

  void validate(std::size_t min_length = 1) const {
    detail::require_same_size(predictions.size(), targets.size(), "series targets", ErrorKind::LengthMismatch);
    detail::require(predictions.size() >= min_length, ErrorKind::LengthMismatch,
                    "series needs at least " + std::to_string(min_length) + " samples");
    detail::require_finite(predictions, "predictions");
    detail::require_finite(targets, "targets");
  }
};

/// Row-major concatenation of a sequence of states.
inline std::vector<double> flatten(const std::vector<StateVector>& states) {
  std::vector<double> out;
  for (const auto& s : states) out.insert(out.end(), s.begin(), s.end());
  return out;
}

inline std::vector<double> flatten(const FutureSet& futures) {
  return std::vector<double>(futures.data().begin(), futures.data().end());
}

/// Branch dispersion around mu = mean(F, 0), averaged over all K*D entries.
inline double loss_coherence(const FutureSet& futures, CoherenceMode mode = CoherenceMode::Var) {
  const auto center = column_mean(futures);
  double acc = 0.0;
  for (std::size_t k = 0; k < futures.rows(); ++k) {
    for (std::size_t j = 0; j < futures.cols(); ++j) {
      const double d = futures(k, j) - center[j];
      acc += mode == CoherenceMode::Var ? d * d : std::abs(d);
    }
  }
  return acc / static_cast<double>(futures.rows() * futures.cols());
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return acc;
}

/// alpha ||S_t - S_{t-1}||^2 + beta ||S_t - S_hat||^2.
inline double loss_consistency(const StateVector& previous, const StateVector& current,
                               const StateVector& predicted, const LossWeights& weights) {
  weights.validate();
  detail::require_same_size(current.size(), previous.size(), "previous state");
  detail::require_same_size(current.size(), predicted.size(), "predicted state");
  return weights.alpha * squared_distance(current.values(), previous.values()) +
         weights.beta * squared_distance(current.values(), predicted.values());
}

inline constexpr double kCrossEntropyClip = 1e-12;

inline double loss_task(const SeriesPair& pair, TaskLoss kind) {
  pair.validate();
  const auto& p = pair.predictions;
  const auto& t = pair.targets;
  const double n = static_cast<double>(p.size());
  switch (kind) {
    case TaskLoss::Mse: {
      double acc = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) acc += (p[i] - t[i]) * (p[i] - t[i]);
      return acc / n;
    }
    case TaskLoss::Mae: {
      double acc = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - t[i]);
      return acc / n;
    }
    case TaskLoss::Ce: {
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 0.0) throw Error(ErrorKind::NegativeTarget, "target " + std::to_string(i) + " is negative");
      }
      std::vector<double> clipped(p.size());
      double norm = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        clipped[i] = std::max(p[i], kCrossEntropyClip);
        norm += clipped[i];
      }
      double acc = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (t[i] != 0.0) acc -= t[i] * std::log(clipped[i] / norm);
      }
      return acc;
    }
  }
  return 0.0;
}

inline double loss_task(std::span<const double> predictions, std::span<const double> targets, TaskLoss kind) {
  return loss_task(SeriesPair{{predictions.begin(), predictions.end()}, {targets.begin(), targets.end()}}, kind);
}

}  // namespace qmlhcs
