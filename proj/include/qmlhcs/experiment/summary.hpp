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
#include <optional>
#include <vector>

#include "qmlhcs/experiment/experiment.hpp"

namespace qmlhcs {

struct SummaryRow {
  std::size_t epoch = 0;
  double mean_state = 0.0;               // S-bar_t
  double mean_future = 0.0;              // mu-bar_t
  std::optional<double> delta_alpha;     // undefined at epoch 0
  std::optional<double> drift_proxy;     // smoothed |delta alpha|
  double phi = 0.0;
  double loss_coh = 0.0;
};

/// Centered moving average over the defined entries of `values`. The window
/// spans floor((w-1)/2) samples before and the rest after; near the edges
/// it is truncated to what exists.
inline std::vector<std::optional<double>> centered_moving_average(const std::vector<std::optional<double>>& values,
                                                                  std::size_t window) {
  detail::require(window >= 1, ErrorKind::InvalidConfig, "window must be >= 1");
  const std::size_t before = (window - 1) / 2;
  const std::size_t after = window - 1 - before;
  std::vector<std::optional<double>> out(values.size());
  for (std::size_t t = 0; t < values.size(); ++t) {
    const std::size_t lo = t >= before ? t - before : 0;
    const std::size_t hi = std::min(values.size() - 1, t + after);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = lo; i <= hi; ++i) {
      if (values[i]) {
        sum += *values[i];
        ++n;
      }
    }
    if (n > 0) out[t] = sum / static_cast<double>(n);
  }
  return out;
}

/// Per-epoch alignment series, alpha increments and the drift proxy.
inline std::vector<SummaryRow> summarize(const std::vector<EpochLog>& logs, std::size_t window = 11) {
  if (logs.empty()) throw Error(ErrorKind::EmptyLogs, "nothing to summarize");
  std::vector<std::optional<double>> abs_delta(logs.size());
  std::vector<SummaryRow> rows(logs.size());
  for (std::size_t t = 0; t < logs.size(); ++t) {
    rows[t].epoch = logs[t].epoch;
    rows[t].mean_state = logs[t].mean_state;
    rows[t].mean_future = logs[t].mean_future;
    rows[t].phi = logs[t].phi;
    rows[t].loss_coh = logs[t].loss_coh;
    if (t > 0) {
      rows[t].delta_alpha = logs[t].alpha - logs[t - 1].alpha;
      abs_delta[t] = std::abs(*rows[t].delta_alpha);
    }
  }
  const auto smoothed = centered_moving_average(abs_delta, window);
  for (std::size_t t = 0; t < rows.size(); ++t) rows[t].drift_proxy = smoothed[t];
  return rows;
}

}  // namespace qmlhcs
