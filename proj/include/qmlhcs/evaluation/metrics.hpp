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
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "qmlhcs/core/types.hpp"
#include "qmlhcs/evaluation/losses.hpp"

namespace qmlhcs {

// ---------------------------------------------------------------------------
// Anomaly metrics
// ---------------------------------------------------------------------------

struct AnomalyMetrics {
  double roc_auc_rate_mean = 0.0;
  double roc_auc_trapezoid = 0.0;
  double lag_recall = 0.0;
};

struct RocPoint {
  double threshold;
  double tpr;
  double fpr;
};

namespace detail {

inline void require_binary(std::span<const int> labels) {
  for (int l : labels) require(l == 0 || l == 1, ErrorKind::InvalidConfig, "labels must be 0 or 1");
}

}  // namespace detail

/// One point per threshold, from the +inf sentinel down through every
/// distinct score. "score >= threshold" predicts positive.
inline std::vector<RocPoint> roc_curve(std::span<const double> scores, std::span<const int> labels) {
  detail::require_same_size(scores.size(), labels.size(), "anomaly labels", ErrorKind::LengthMismatch);
  detail::require_finite(scores, "anomaly scores");
  detail::require_binary(labels);
  const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  const std::size_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorKind::DegenerateLabels, "ROC needs at least one positive and one negative label");
  }

  std::vector<double> thresholds(scores.begin(), scores.end());
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  thresholds.insert(thresholds.begin(), std::numeric_limits<double>::infinity());

  std::vector<RocPoint> curve;
  curve.reserve(thresholds.size());
  for (double thr : thresholds) {
    std::size_t tp = 0;
    std::size_t fp = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] >= thr) (labels[i] == 1 ? tp : fp)++;
    }
    curve.push_back({thr, static_cast<double>(tp) / static_cast<double>(positives),
                     static_cast<double>(fp) / static_cast<double>(negatives)});
  }
  return curve;
}

/// 1/2 (sum TPR_i / N + sum FPR_i / N) over the N thresholds: the mean of
/// the two rates. Not the area under the curve in general; see roc_auc_trapezoid.
inline double roc_auc_rate_mean(std::span<const double> scores, std::span<const int> labels) {
  const auto curve = roc_curve(scores, labels);
  double tpr = 0.0;
  double fpr = 0.0;
  for (const auto& p : curve) {
    tpr += p.tpr;
    fpr += p.fpr;
  }
  const double n = static_cast<double>(curve.size());
  return 0.5 * (tpr / n + fpr / n);
}

inline double roc_auc_trapezoid(std::span<const double> scores, std::span<const int> labels) {
  const auto curve = roc_curve(scores, labels);
  double area = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    area += (curve[i].fpr - curve[i - 1].fpr) * 0.5 * (curve[i].tpr + curve[i - 1].tpr);
  }
  return area;
}

/// Fraction of anomaly onsets (0 -> 1 label transitions, or a positive first
/// sample) that get a detection within `lag` steps, onset included.
inline double lag_recall(std::span<const int> labels, std::span<const int> detections, std::size_t lag) {
  detail::require_same_size(labels.size(), detections.size(), "detections", ErrorKind::LengthMismatch);
  detail::require_binary(labels);
  detail::require_binary(detections);
  std::size_t onsets = 0;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    if (labels[t] != 1 || (t > 0 && labels[t - 1] == 1)) continue;
    ++onsets;
    for (std::size_t k = 0; k <= lag && t + k < detections.size(); ++k) {
      if (detections[t + k] == 1) {
        ++hits;
        break;
      }
    }
  }
  if (onsets == 0) throw Error(ErrorKind::DegenerateLabels, "lag recall needs at least one anomaly onset");
  return static_cast<double>(hits) / static_cast<double>(onsets);
}

inline constexpr double kDetectionThreshold = 0.5;

inline std::vector<int> threshold_detections(std::span<const double> scores, double threshold = kDetectionThreshold) {
  std::vector<int> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) out[i] = scores[i] >= threshold ? 1 : 0;
  return out;
}

inline AnomalyMetrics metric_anomaly(std::span<const double> scores, std::span<const int> labels, std::size_t lag,
                                     std::optional<std::span<const int>> detections = std::nullopt) {
  const auto thresholded = threshold_detections(scores);
  const std::span<const int> det = detections ? *detections : std::span<const int>(thresholded);
  return {roc_auc_rate_mean(scores, labels), roc_auc_trapezoid(scores, labels), lag_recall(labels, det, lag)};
}

// ---------------------------------------------------------------------------
// Control metrics
// ---------------------------------------------------------------------------

enum class SettlingMode {
  Persistent,  // every later sample stays inside the ball
  FirstEntry,  // first sample inside the ball
};

struct ControlMetrics {
  double overshoot = 0.0;
  std::optional<std::size_t> settling_time;  // empty: never settles within the trajectory
};

inline constexpr double kOvershootFloor = 1e-9;

/// (S_{t,j*} - S_{t-1,j*}) / max(|S_{t-1,j*}|, 1e-9) with j* = argmax_j S_{t,j}.
inline double overshoot(const std::vector<StateVector>& trajectory, std::size_t t) {
  detail::require(t >= 1 && t < trajectory.size(), ErrorKind::IndexOutOfRange,
                  "overshoot needs 1 <= t < trajectory length");
  const auto& now = trajectory[t];
  const auto& before = trajectory[t - 1];
  detail::require_same_size(now.size(), before.size(), "trajectory state");
  const auto j = static_cast<std::size_t>(std::max_element(now.begin(), now.end()) - now.begin());
  return (now[j] - before[j]) / std::max(std::abs(before[j]), kOvershootFloor);
}

/// Offset k >= 1 after which ||S_{t+k'} - S_t|| < epsilon.
inline std::optional<std::size_t> settling_time(const std::vector<StateVector>& trajectory, std::size_t t,
                                                double epsilon, SettlingMode mode = SettlingMode::Persistent) {
  detail::require(t < trajectory.size(), ErrorKind::IndexOutOfRange, "settling reference index out of range");
  detail::require(epsilon > 0.0, ErrorKind::InvalidConfig, "settling tolerance must be positive");
  const auto& ref = trajectory[t];
  const std::size_t horizon = trajectory.size() - 1 - t;
  auto inside = [&](std::size_t k) {
    detail::require_same_size(ref.size(), trajectory[t + k].size(), "trajectory state");
    return std::sqrt(squared_distance(trajectory[t + k].values(), ref.values())) < epsilon;
  };

  if (mode == SettlingMode::FirstEntry) {
    for (std::size_t k = 1; k <= horizon; ++k) {
      if (inside(k)) return k;
    }
    return std::nullopt;
  }
  if (horizon == 0 || !inside(horizon)) return std::nullopt;
  std::size_t k = horizon;
  while (k > 1 && inside(k - 1)) --k;
  return k;
}

inline ControlMetrics metric_control(const std::vector<StateVector>& trajectory, std::size_t t, double epsilon,
                                     SettlingMode mode = SettlingMode::Persistent) {
  return {overshoot(trajectory, t), settling_time(trajectory, t, epsilon, mode)};
}

// ---------------------------------------------------------------------------
// Forecast metrics
// ---------------------------------------------------------------------------

struct ForecastMetrics {
  double mape = 0.0;
  double mase = 0.0;
  double lag_delta = 0.0;
  double rmse = 0.0;
};

/// Percent scale: 100/N sum |(p - t) / t|.
inline double mape(const SeriesPair& pair) {
  pair.validate();
  double acc = 0.0;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    if (pair.targets[i] == 0.0) throw Error(ErrorKind::ZeroTarget, "MAPE undefined: target " + std::to_string(i) + " is 0");
    acc += std::abs((pair.predictions[i] - pair.targets[i]) / pair.targets[i]);
  }
  return 100.0 * acc / static_cast<double>(pair.size());
}

/// Mean |p_i - t_i| over i = 2..N divided by mean |t_i - t_{i-1}| over the
/// same range, so the naive forecast p_i = t_{i-1} scores exactly 1.
inline double mase(const SeriesPair& pair) {
  pair.validate(2);
  double error = 0.0;
  double naive = 0.0;
  for (std::size_t i = 1; i < pair.size(); ++i) {
    error += std::abs(pair.predictions[i] - pair.targets[i]);
    naive += std::abs(pair.targets[i] - pair.targets[i - 1]);
  }
  if (naive == 0.0) throw Error(ErrorKind::DegenerateBaseline, "MASE undefined for constant targets");
  return error / naive;
}

/// (1/(N - lag)) sum_{i=1}^{N-lag} |p_{i+lag} - t_i|.
inline double lag_delta(const SeriesPair& pair, std::size_t lag) {
  pair.validate();
  detail::require(lag < pair.size(), ErrorKind::IndexOutOfRange, "lag must be smaller than the series length");
  const std::size_t n = pair.size() - lag;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::abs(pair.predictions[i + lag] - pair.targets[i]);
  return acc / static_cast<double>(n);
}

inline double rmse(const SeriesPair& pair) { return std::sqrt(loss_task(pair, TaskLoss::Mse)); }

inline ForecastMetrics metric_forecast(const SeriesPair& pair, std::size_t lag) {
  return {mape(pair), mase(pair), lag_delta(pair, lag), rmse(pair)};
}

}  // namespace qmlhcs
