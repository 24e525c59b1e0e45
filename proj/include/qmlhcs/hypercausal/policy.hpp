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
#include <span>
#include <string>
#include <vector>

#include "qmlhcs/core/types.hpp"

namespace qmlhcs {

enum class PolicyKind { Mean, Median, MinRisk };

/// r(F_i). The full future set is passed along so functionals can measure a
/// row against the branch center.
using RiskFunctional = std::function<double(std::span<const double> row, const FutureSet& futures)>;

namespace risk {

inline double l2_norm(std::span<const double> row, const FutureSet&) {
  double sq = 0.0;
  for (double v : row) sq += v * v;
  return std::sqrt(sq);
}

inline double distance_to_center(std::span<const double> row, const FutureSet& futures) {
  const auto center = column_mean(futures);
  double sq = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) sq += (row[j] - center[j]) * (row[j] - center[j]);
  return std::sqrt(sq);
}

}  // namespace risk

struct Policy {
  PolicyKind kind = PolicyKind::Mean;
  RiskFunctional risk;
  std::string risk_name;

  static Policy mean() { return {}; }
  static Policy median() { return {PolicyKind::Median, {}, {}}; }
  static Policy min_risk(RiskFunctional r, std::string name = "custom") {
    return {PolicyKind::MinRisk, std::move(r), std::move(name)};
  }

  std::string name() const {
    switch (kind) {
      case PolicyKind::Mean: return "mean";
      case PolicyKind::Median: return "median";
      case PolicyKind::MinRisk: return risk_name.empty() ? "min_risk" : "min_risk:" + risk_name;
    }
    return "mean";
  }

  /// "mean", "median", "min_risk:l2" or "min_risk:center".
  static Policy parse(const std::string& text) {
    if (text == "mean") return mean();
    if (text == "median") return median();
    if (text == "min_risk:l2") return min_risk(risk::l2_norm, "l2");
    if (text == "min_risk:center") return min_risk(risk::distance_to_center, "center");
    if (text == "min_risk") throw Error(ErrorKind::MissingRiskFunctional, "min_risk needs a risk functional");
    throw Error(ErrorKind::ParseError, "unknown policy '" + text + "'");
  }
};

inline std::vector<double> column_median(const FutureSet& futures) {
  const std::size_t k = futures.rows();
  std::vector<double> out(futures.cols());
  std::vector<double> column(k);
  for (std::size_t j = 0; j < futures.cols(); ++j) {
    for (std::size_t i = 0; i < k; ++i) column[i] = futures(i, j);
    std::sort(column.begin(), column.end());
    out[j] = (k % 2 == 1) ? column[k / 2] : 0.5 * (column[k / 2 - 1] + column[k / 2]);
  }
  return out;
}

/// Index of the lowest-risk row; the earliest row wins ties.
inline std::size_t min_risk_index(const FutureSet& futures, const RiskFunctional& risk) {
  if (!risk) throw Error(ErrorKind::MissingRiskFunctional, "min_risk policy requires a risk functional");
  std::size_t best = 0;
  double best_risk = risk(futures.row(0), futures);
  for (std::size_t i = 1; i < futures.rows(); ++i) {
    const double r = risk(futures.row(i), futures);
    if (r < best_risk) {
      best = i;
      best_risk = r;
    }
  }
  return best;
}

inline StateVector policy_aggregate(const FutureSet& futures, PolicyKind kind, const RiskFunctional& risk = {}) {
  detail::require(futures.rows() >= 1, ErrorKind::DimensionMismatch, "policy needs at least one branch");
  switch (kind) {
    case PolicyKind::Mean: return StateVector(column_mean(futures));
    case PolicyKind::Median: return StateVector(column_median(futures));
    case PolicyKind::MinRisk: {
      const auto row = futures.row(min_risk_index(futures, risk));
      return StateVector(std::vector<double>(row.begin(), row.end()));
    }
  }
  return StateVector(column_mean(futures));
}

inline StateVector policy_aggregate(const FutureSet& futures, const Policy& policy) {
  return policy_aggregate(futures, policy.kind, policy.risk);
}

}  // namespace qmlhcs
