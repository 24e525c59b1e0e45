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
#include <numbers>
#include <vector>

#include "qmlhcs/core/types.hpp"

namespace qmlhcs {

/// Hardware-style drift: additive phase, multiplicative detuning and an
/// oscillating readout bias.
struct DriftParams {
  double phi_max = 0.1;                 // rad
  double eps = 5e-5;                    // per-epoch detuning slope
  double b_max = 0.05;                  // peak readout-bias mix, in [0, 1]
  double phi0 = std::numbers::pi / 4;   // rad

  void validate() const {
    detail::require(std::isfinite(phi_max) && std::isfinite(eps) && std::isfinite(b_max) && std::isfinite(phi0),
                    ErrorKind::InvalidConfig, "drift parameters must be finite");
    detail::require(b_max >= 0.0 && b_max <= 1.0, ErrorKind::InvalidConfig, "b_max must lie in [0, 1]");
  }

  static DriftParams none() { return {0.0, 0.0, 0.0, std::numbers::pi / 4}; }
};

struct DriftSignals {
  double phi = 0.0;
  double a = 1.0;
  double b = 0.0;
};

/// phi_t = phi_max sin(2 pi t / (T - 1)), a_t = 1 + eps t,
/// b_t = b_max (1/2 + 1/2 sin(phi_t + phi0)).
inline DriftSignals drift_signals(std::size_t t, std::size_t epochs, const DriftParams& params) {
  detail::require(epochs >= 2, ErrorKind::InvalidConfig, "drift needs at least two epochs");
  detail::require(t < epochs, ErrorKind::IndexOutOfRange, "epoch index beyond horizon");
  const double td = static_cast<double>(t);
  const double phi = params.phi_max * std::sin(2.0 * std::numbers::pi * td / static_cast<double>(epochs - 1));
  const double a = 1.0 + params.eps * td;
  const double b = params.b_max * (0.5 + 0.5 * std::sin(phi + params.phi0));
  return {phi, a, b};
}

/// x~ = a (x + phi), elementwise.
inline StateVector apply_input_drift(const StateVector& x, double phi, double a) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * (x[i] + phi);
  return StateVector(std::move(out));
}

inline double sign_of(double v) noexcept { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

/// (1 - b) S + b sign(S), with sign(0) = 0.
inline StateVector apply_readout_bias(const StateVector& s, double b) {
  detail::require(b >= 0.0 && b <= 1.0, ErrorKind::InvalidConfig, "readout bias must lie in [0, 1]");
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = (1.0 - b) * s[i] + b * sign_of(s[i]);
  return StateVector(std::move(out));
}

/// L = L_task + (L_cons + L_coh) / 2.
inline double aggregate_loss(double task, double consistency, double coherence) {
  return task + 0.5 * (consistency + coherence);
}

}  // namespace qmlhcs
