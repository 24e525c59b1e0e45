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
#include <exception>
#include <functional>
#include <map>
#include <span>
#include <string>

#include "qmlhcs/runtime/schedule.hpp"
#include "qmlhcs/runtime/telemetry.hpp"

namespace qmlhcs {

/// High-level state shared with callbacks.
struct CallbackContext {
  std::int64_t epoch = 0;
  std::map<std::string, double> losses;
  double alpha = 1.0;
  std::size_t depth = 1;
  std::map<std::string, double> extra;
};

class Callback {
 public:
  virtual ~Callback() = default;
  virtual void on_epoch_start(CallbackContext&) {}
  virtual void on_epoch_end(CallbackContext&) {}
  /// Observes a failure; the error is rethrown after every callback has seen it.
  virtual void on_error(const CallbackContext&, const std::string&) {}
};

class DepthSchedulerCallback final : public Callback {
 public:
  explicit DepthSchedulerCallback(DepthSchedule schedule) : schedule_(schedule) { schedule_.validate(); }

  void on_epoch_start(CallbackContext& ctx) override { ctx.depth = depth_at(schedule_, ctx.epoch); }

  const DepthSchedule& schedule() const noexcept { return schedule_; }

 private:
  DepthSchedule schedule_;
};

/// Emits "epoch_start", "epoch_end" and "error" records.
class TelemetryCallback final : public Callback {
 public:
  explicit TelemetryCallback(TelemetryLogger& logger) : logger_(logger) {}

  void on_epoch_start(CallbackContext& ctx) override {
    logger_.log_event("epoch_start", {{"epoch", static_cast<double>(ctx.epoch)},
                                      {"alpha", ctx.alpha},
                                      {"depth", static_cast<double>(ctx.depth)}});
  }

  void on_epoch_end(CallbackContext& ctx) override {
    TelemetryContext xi{{"epoch", static_cast<double>(ctx.epoch)},
                        {"alpha", ctx.alpha},
                        {"depth", static_cast<double>(ctx.depth)}};
    for (const auto& [k, v] : ctx.losses) xi.emplace("loss_" + k, v);
    for (const auto& [k, v] : ctx.extra) xi.emplace(k, v);
    logger_.log_event("epoch_end", std::move(xi));
  }

  void on_error(const CallbackContext& ctx, const std::string& message) override {
    logger_.log_event("error", {{"epoch", static_cast<double>(ctx.epoch)}, {"message", message}});
  }

 private:
  TelemetryLogger& logger_;
};

using LoopBody = std::function<void(CallbackContext&)>;

/// Per epoch: every on_epoch_start in list order, the body, every
/// on_epoch_end in list order. A throwing body triggers on_error on every
/// callback and then propagates; later epochs do not run.
inline CallbackContext run_with_callbacks(const LoopBody& body, std::span<Callback* const> callbacks,
                                          std::int64_t epochs, CallbackContext ctx = {}) {
  detail::require(epochs >= 0, ErrorKind::InvalidConfig, "epoch count must be >= 0");
  for (std::int64_t e = 0; e < epochs; ++e) {
    ctx.epoch = e;
    for (Callback* cb : callbacks) cb->on_epoch_start(ctx);
    try {
      body(ctx);
    } catch (const std::exception& err) {
      for (Callback* cb : callbacks) cb->on_error(ctx, err.what());
      throw;
    }
    for (Callback* cb : callbacks) cb->on_epoch_end(ctx);
  }
  return ctx;
}

}  // namespace qmlhcs
