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
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "qmlhcs/core/types.hpp"

namespace qmlhcs {

/// Dense statevector over D qubits. Basis index bit (D-1-i) holds wire i, so
/// wire 0 is the most significant bit and reads leftmost in a bitstring.
class QuantumState {
 public:
  static constexpr std::size_t kMaxWires = 24;

  explicit QuantumState(std::size_t wires) : wires_(wires) {
    detail::require(wires >= 1 && wires <= kMaxWires, ErrorKind::InvalidConfig,
                    "statevector supports 1.." + std::to_string(kMaxWires) + " wires");
    amplitudes_.assign(std::size_t{1} << wires, {0.0, 0.0});
    amplitudes_[0] = 1.0;
  }

  std::size_t wires() const noexcept { return wires_; }
  std::span<const std::complex<double>> amplitudes() const noexcept { return amplitudes_; }

  std::size_t bit_mask(std::size_t wire) const noexcept { return std::size_t{1} << (wires_ - 1 - wire); }

  void apply_ry(std::size_t wire, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const std::size_t mask = bit_mask(wire);
    for (std::size_t idx = 0; idx < amplitudes_.size(); ++idx) {
      if (idx & mask) continue;
      const auto a0 = amplitudes_[idx];
      const auto a1 = amplitudes_[idx | mask];
      amplitudes_[idx] = c * a0 - s * a1;
      amplitudes_[idx | mask] = s * a0 + c * a1;
    }
  }

  void apply_cnot(std::size_t control, std::size_t target) {
    const std::size_t cmask = bit_mask(control);
    const std::size_t tmask = bit_mask(target);
    for (std::size_t idx = 0; idx < amplitudes_.size(); ++idx) {
      if ((idx & cmask) && !(idx & tmask)) std::swap(amplitudes_[idx], amplitudes_[idx | tmask]);
    }
  }

  double norm_squared() const noexcept {
    double total = 0.0;
    for (const auto& a : amplitudes_) total += std::norm(a);
    return total;
  }

  void normalize() {
    const double n = std::sqrt(norm_squared());
    for (auto& a : amplitudes_) a /= n;
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(amplitudes_.size());
    std::transform(amplitudes_.begin(), amplitudes_.end(), p.begin(),
                   [](const std::complex<double>& a) { return std::norm(a); });
    return p;
  }

 private:
  std::size_t wires_;
  std::vector<std::complex<double>> amplitudes_;
};

/// Angle encoding: theta_i = clamp(x_i, -pi, pi).
inline std::vector<double> encode_input(std::span<const double> x) {
  detail::require_finite(x, "encoder input");
  std::vector<double> angles(x.begin(), x.end());
  for (double& a : angles) a = std::clamp(a, -std::numbers::pi, std::numbers::pi);
  return angles;
}

/// |0...0> followed by `depth` layers of [RY(theta_i) on every wire, then the
/// CNOT chain 0->1, 1->2, ..., D-2 -> D-1].
inline QuantumState run_circuit(std::span<const double> angles, std::size_t depth) {
  detail::require(!angles.empty(), ErrorKind::DimensionMismatch, "circuit needs at least one wire");
  detail::require(depth >= 1, ErrorKind::InvalidConfig, "circuit depth must be >= 1");
  QuantumState state(angles.size());
  for (std::size_t layer = 0; layer < depth; ++layer) {
    for (std::size_t wire = 0; wire < angles.size(); ++wire) state.apply_ry(wire, angles[wire]);
    for (std::size_t wire = 0; wire + 1 < angles.size(); ++wire) state.apply_cnot(wire, wire + 1);
  }
  state.normalize();
  return state;
}

inline QuantumState run_circuit(std::span<const double> angles, std::size_t depth, std::size_t expected_wires) {
  detail::require_same_size(expected_wires, angles.size(), "circuit angles");
  return run_circuit(angles, depth);
}

/// <Z_i> = sum_b |amp(b)|^2 (1 - 2 b_i).
inline StateVector expectation_z(const QuantumState& state) {
  const auto amps = state.amplitudes();
  std::vector<double> out(state.wires(), 0.0);
  for (std::size_t wire = 0; wire < state.wires(); ++wire) {
    const std::size_t mask = state.bit_mask(wire);
    double acc = 0.0;
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
      const double p = std::norm(amps[idx]);
      acc += (idx & mask) ? -p : p;
    }
    out[wire] = std::clamp(acc, -1.0, 1.0);
  }
  return StateVector(std::move(out));
}

}  // namespace qmlhcs
