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
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "qmlhcs/core/projector.hpp"
#include "qmlhcs/core/registry.hpp"
#include "qmlhcs/core/types.hpp"
#include "qmlhcs/projectors/linear.hpp"

namespace qmlhcs {

/// Per-call overrides. Both default to the backend's own configuration.
struct ExecutionOptions {
  std::optional<std::size_t> depth;
  std::optional<std::uint64_t> seed;
};

/// Backend execution contract: x -> S = f(x), then F = g(S, K) through the
/// owned projector. Instances are immutable after construction.
class Backend {
 public:
  explicit Backend(BackendConfig config, std::shared_ptr<const Projector> projector = nullptr)
      : config_(std::move(config)), projector_(std::move(projector)) {
    config_.validate();
    if (!projector_) projector_ = std::make_shared<LinearProjector>();
  }

  virtual ~Backend() = default;

  virtual std::string_view name() const = 0;
  virtual BackendCapabilities capabilities() const = 0;

  /// Length of the input vector accepted by execute().
  virtual std::size_t input_dim() const { return config_.dim; }

  std::size_t dim() const noexcept { return config_.dim; }
  const BackendConfig& config() const noexcept { return config_; }
  const Projector& projector() const noexcept { return *projector_; }
  std::shared_ptr<const Projector> shared_projector() const noexcept { return projector_; }

  StateVector execute(std::span<const double> x, const ExecutionOptions& options = {}) const {
    detail::require_same_size(input_dim(), x.size(), std::string(name()) + " input");
    detail::require_finite(x, "backend input");
    if (options.depth) {
      detail::require(*options.depth >= 1, ErrorKind::InvalidConfig, "depth override must be >= 1");
    }
    StateVector out = run(x, options);
    // The reported dimension is part of the contract; engines may not drift from it.
    detail::require_same_size(config_.dim, out.size(), std::string(name()) + " output");
    return out;
  }

  StateVector execute(const StateVector& x, const ExecutionOptions& options = {}) const {
    return execute(x.values(), options);
  }

  FutureSet project(const StateVector& state) const { return projector_->project(state, config_.branches); }

 protected:
  virtual StateVector run(std::span<const double> x, const ExecutionOptions& options) const = 0;

  std::size_t depth_for(const ExecutionOptions& options) const { return options.depth.value_or(config_.depth); }
  std::uint64_t seed_for(const ExecutionOptions& options) const { return options.seed.value_or(config_.seed); }

 private:
  BackendConfig config_;
  std::shared_ptr<const Projector> projector_;
};

using BackendFactory = std::function<std::unique_ptr<Backend>(const BackendConfig&)>;
using BackendRegistry = Registry<BackendFactory, BackendCapabilities>;

inline void register_backend(BackendRegistry& registry, std::string name, BackendFactory factory,
                             BackendCapabilities capabilities) {
  detail::require(capabilities.valid(), ErrorKind::InvalidConfig,
                  "backend '" + name + "' must be analytic or sampled");
  registry.add(std::move(name), std::move(factory), capabilities);
}

inline std::unique_ptr<Backend> create_backend(const BackendRegistry& registry, const std::string& name,
                                               const BackendConfig& config) {
  const auto& entry = registry.at(name);
  config.validate();
  auto backend = entry.factory(config);
  detail::require(backend != nullptr, ErrorKind::InvalidConfig, "factory for '" + name + "' returned null");
  detail::require_same_size(config.dim, backend->dim(), "created backend dimension");
  return backend;
}

}  // namespace qmlhcs
