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
#include <vector>

#include "qmlhcs/core/projector.hpp"
#include "qmlhcs/core/types.hpp"

namespace qmlhcs {

/// Gain and offset are per-dimension; a single element broadcasts to every
/// dimension.
struct LinearProjectorParams {
  std::vector<double> w{1.0};
  std::vector<double> b{0.0};
  double span = 0.5;

  void validate() const {
    detail::require(!w.empty() && !b.empty(), ErrorKind::InvalidConfig, "projector gain/offset must be nonempty");
    detail::require(std::isfinite(span) && span >= 0.0, ErrorKind::InvalidConfig,
                    "projector span must be finite and >= 0");
    detail::require_finite(w, "projector gain");
    detail::require_finite(b, "projector offset");
  }
};

namespace detail {

inline double broadcast_at(const std::vector<double>& v, std::size_t j) { return v.size() == 1 ? v[0] : v[j]; }

inline void require_broadcastable(const std::vector<double>& v, std::size_t dim, std::string_view what) {
  if (v.size() != 1 && v.size() != dim) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " has length " + std::to_string(v.size()) +
                                                  " but state has dimension " + std::to_string(dim));
  }
}

}  // namespace detail

/// Perturbation offsets spread evenly over [-span, span]. One branch sits on
/// the midpoint.
inline std::vector<double> linear_deltas(std::size_t branches, double span) {
  detail::require(branches >= 1, ErrorKind::InvalidConfig, "branch count must be >= 1");
  std::vector<double> deltas(branches, 0.0);
  if (branches == 1) return deltas;
  const double denom = static_cast<double>(branches - 1);
  // Integer numerator keeps the grid exactly antisymmetric with a zero middle.
  for (std::size_t k = 0; k < branches; ++k) {
    deltas[k] = span * (2.0 * static_cast<double>(k) - denom) / denom;
  }
  return deltas;
}

/// F_k = tanh(w * s + b + delta_k), elementwise.
inline FutureSet project_linear(const StateVector& state, std::size_t branches,
                                const LinearProjectorParams& params) {
  params.validate();
  const std::size_t dim = state.size();
  detail::require_broadcastable(params.w, dim, "projector gain");
  detail::require_broadcastable(params.b, dim, "projector offset");

  std::vector<double> base(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    base[j] = detail::broadcast_at(params.w, j) * state[j] + detail::broadcast_at(params.b, j);
  }

  const auto deltas = linear_deltas(branches, params.span);
  std::vector<double> data;
  data.reserve(branches * dim);
  for (double delta : deltas) {
    for (std::size_t j = 0; j < dim; ++j) data.push_back(std::tanh(base[j] + delta));
  }
  return FutureSet(branches, dim, std::move(data));
}

class LinearProjector final : public Projector {
 public:
  LinearProjector() = default;
  explicit LinearProjector(LinearProjectorParams params) : params_(std::move(params)) { params_.validate(); }

  FutureSet project(const StateVector& state, std::size_t branches) const override {
    return project_linear(state, branches, params_);
  }

  const LinearProjectorParams& params() const noexcept { return params_; }

 private:
  LinearProjectorParams params_;
};

}  // namespace qmlhcs
