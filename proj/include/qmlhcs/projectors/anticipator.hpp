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

#include <charconv>
#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmlhcs/core/projector.hpp"
#include "qmlhcs/core/types.hpp"

namespace qmlhcs {

/// A named transform applied to the branch center.
struct Perturbation {
  std::string name;
  std::function<std::vector<double>(std::span<const double>)> apply;

  static Perturbation shift(double amount) {
    return {"shift:" + format_amount(amount), [amount](std::span<const double> c) {
              std::vector<double> out(c.begin(), c.end());
              for (double& v : out) v += amount;
              return out;
            }};
  }

  static Perturbation scale(double factor) {
    return {"scale:" + format_amount(factor), [factor](std::span<const double> c) {
              std::vector<double> out(c.begin(), c.end());
              for (double& v : out) v *= factor;
              return out;
            }};
  }

  /// Parses the built-in forms "shift:<real>" and "scale:<real>".
  static Perturbation parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "perturbation '" + text + "' lacks ':'");
    const std::string kind = text.substr(0, colon);
    const std::string number = text.substr(colon + 1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
    if (ec != std::errc() || ptr != number.data() + number.size() || !std::isfinite(value)) {
      throw Error(ErrorKind::ParseError, "perturbation '" + text + "' has an invalid amount");
    }
    if (kind == "shift") return shift(value);
    if (kind == "scale") return scale(value);
    throw Error(ErrorKind::ParseError, "unknown perturbation kind '" + kind + "'");
  }

 private:
  static std::string format_amount(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
  }
};

struct PerturbationSet {
  std::vector<Perturbation> items;
  bool symmetric = false;
};

/// Appends one variant v = p(c) per perturbation to the base rows, each
/// followed by its mirror 2c - v when symmetric. c is the column mean of the
/// base rows. No tanh is applied to the variants.
inline FutureSet anticipate(const FutureSet& base, const PerturbationSet& perturbations) {
  detail::require(base.rows() >= 1, ErrorKind::DimensionMismatch, "anticipator needs a nonempty base");
  FutureSet out = base;
  if (perturbations.items.empty()) return out;

  const auto center = column_mean(base);
  for (const auto& p : perturbations.items) {
    const auto variant = p.apply(center);
    if (variant.size() != center.size()) {
      throw Error(ErrorKind::PerturbationOutputDimMismatch,
                  "perturbation '" + p.name + "' returned " + std::to_string(variant.size()) +
                      " values for a " + std::to_string(center.size()) + "-dimensional center");
    }
    out.append_row(variant);
    if (perturbations.symmetric) {
      std::vector<double> mirror(center.size());
      for (std::size_t j = 0; j < center.size(); ++j) mirror[j] = 2.0 * center[j] - variant[j];
      out.append_row(mirror);
    }
  }
  return out;
}

/// Wraps a base projector and augments its output with counterfactual rows.
class Anticipator final : public Projector {
 public:
  Anticipator(std::shared_ptr<const Projector> base, PerturbationSet perturbations)
      : base_(std::move(base)), perturbations_(std::move(perturbations)) {
    detail::require(base_ != nullptr, ErrorKind::InvalidConfig, "anticipator needs a base projector");
  }

  FutureSet project(const StateVector& state, std::size_t branches) const override {
    return anticipate(base_->project(state, branches), perturbations_);
  }

  const Projector& base() const noexcept { return *base_; }
  const PerturbationSet& perturbations() const noexcept { return perturbations_; }

 private:
  std::shared_ptr<const Projector> base_;
  PerturbationSet perturbations_;
};

}  // namespace qmlhcs
