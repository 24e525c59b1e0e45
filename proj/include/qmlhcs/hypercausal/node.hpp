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

#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "qmlhcs/core/backend.hpp"
#include "qmlhcs/hypercausal/policy.hpp"

namespace qmlhcs {

/// A backend bound to a projector and a projection policy. When no projector
/// is given the backend's own projector generates the futures.
struct HCNode {
  std::shared_ptr<const Backend> backend;
  std::shared_ptr<const Projector> projector;
  Policy policy;

  HCNode() = default;
  HCNode(std::shared_ptr<const Backend> b, Policy p = {}, std::shared_ptr<const Projector> proj = nullptr)
      : backend(std::move(b)), projector(std::move(proj)), policy(std::move(p)) {}

  std::size_t dim() const { return backend->dim(); }
  std::size_t branches() const { return backend->config().branches; }
  const Projector& active_projector() const { return projector ? *projector : backend->projector(); }
};

/// Mean over dimensions of the per-dimension population standard deviation.
inline double branch_dispersion(const FutureSet& futures) {
  const auto center = column_mean(futures);
  double total = 0.0;
  for (std::size_t j = 0; j < futures.cols(); ++j) {
    double sq = 0.0;
    for (std::size_t k = 0; k < futures.rows(); ++k) {
      const double d = futures(k, j) - center[j];
      sq += d * d;
    }
    total += std::sqrt(sq / static_cast<double>(futures.rows()));
  }
  return total / static_cast<double>(futures.cols());
}

/// One triadic step (x_t, S_{t-1}) -> (S_t, F_t, S_hat_{t+1}). The previous
/// state is validated and carried along for the consistency loss; it does not
/// feed into S_t.
inline TriadicOutput node_forward(const HCNode& node, std::span<const double> x,
                                  const std::optional<StateVector>& previous = std::nullopt,
                                  const ExecutionOptions& options = {}) {
  detail::require(node.backend != nullptr, ErrorKind::InvalidConfig, "node has no backend");
  if (previous) detail::require_same_size(node.dim(), previous->size(), "previous state");

  const auto started = std::chrono::steady_clock::now();
  StateVector state = node.backend->execute(x, options);
  FutureSet futures = node.active_projector().project(state, node.branches());
  detail::require_same_size(node.dim(), futures.cols(), "projector output width");
  detail::require(futures.rows() >= 2, ErrorKind::DimensionMismatch, "node must produce at least two futures");
  StateVector representative = policy_aggregate(futures, node.policy);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;

  Diagnostics diagnostics{
      {"branch_std", branch_dispersion(futures)},
      {"k_effective", static_cast<double>(futures.rows())},
      {"wall_time_s", elapsed.count()},
      {"has_previous", previous ? 1.0 : 0.0},
  };
  return TriadicOutput{std::move(state),         std::move(futures), std::move(representative),
                       node.policy.name(),       previous,           std::move(diagnostics)};
}

inline TriadicOutput node_forward(const HCNode& node, const StateVector& x,
                                  const std::optional<StateVector>& previous = std::nullopt,
                                  const ExecutionOptions& options = {}) {
  return node_forward(node, x.values(), previous, options);
}

/// Sequential composition S^(i) = N_i(S^(i-1)), S^(0) = x. Futures and the
/// representative come from the final node.
/// One hypercausal step (x_t, S_{t-1}) -> (S_t, F_t, S_hat_{t+1}). The
/// previous state is recorded, never fed into state generation.
inline TriadicOutput triadic_step(const HCNode& node, const StateVector& x,
                                  const std::optional<StateVector>& previous = std::nullopt) {
  return node_forward(node, x, previous);
}

inline TriadicOutput chain_forward(const std::vector<HCNode>& nodes, const StateVector& x) {
  detail::require(!nodes.empty(), ErrorKind::InvalidConfig, "chain needs at least one node");
  TriadicOutput out = node_forward(nodes.front(), x);
  for (std::size_t i = 1; i < nodes.size(); ++i) out = node_forward(nodes[i], out.state);
  return out;
}

}  // namespace qmlhcs
