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
#include <fstream>
#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "qmlhcs/evaluation/losses.hpp"
#include "qmlhcs/experiment/drift.hpp"
#include "qmlhcs/optim/optimizers.hpp"
#include "qmlhcs/projectors/linear.hpp"
#include "qmlhcs/runtime/schedule.hpp"

namespace qmlhcs {

enum class ExperimentBackend { Analytic, Sampled, Reference };

inline std::string to_string(ExperimentBackend b) {
  switch (b) {
    case ExperimentBackend::Analytic: return "analytic";
    case ExperimentBackend::Sampled: return "sampled";
    case ExperimentBackend::Reference: return "reference";
  }
  return "sampled";
}

inline ExperimentBackend parse_experiment_backend(const std::string& text) {
  if (text == "analytic") return ExperimentBackend::Analytic;
  if (text == "sampled") return ExperimentBackend::Sampled;
  if (text == "reference") return ExperimentBackend::Reference;
  throw Error(ErrorKind::InvalidConfig, "backend must be analytic, sampled or reference, got '" + text + "'");
}

/// Everything a drift run depends on. Defaults are the standard
/// setup: D = 7, K = 20, T = 300, 1024 shots, depth 1 -> 5, alpha0 = 1.
struct ExperimentConfig {
  std::size_t dim = 7;
  std::size_t branches = 20;
  std::size_t epochs = 300;
  std::uint64_t shots = 1024;
  DepthSchedule depth_schedule{1, 5, 300};
  double alpha0 = 1.0;
  bool adapt_alpha = true;
  DriftParams drift;
  std::uint64_t seed = 42;
  ExperimentBackend backend = ExperimentBackend::Sampled;
  std::string policy = "mean";
  LinearProjectorParams projector;
  OptimizerSpec optimizer{"trust_region_scalar", {}};
  LossWeights loss_weights;
  CoherenceMode coherence = CoherenceMode::Var;
  std::size_t summary_window = 11;

  void validate() const {
    detail::require(dim >= 2, ErrorKind::InvalidConfig, "dim must be >= 2 for the base ramp");
    detail::require(branches >= 2, ErrorKind::InvalidConfig, "branches must be >= 2");
    detail::require(epochs >= 2, ErrorKind::InvalidConfig, "epochs must be >= 2");
    detail::require(shots >= 1, ErrorKind::InvalidConfig, "shots must be >= 1");
    detail::require(std::isfinite(alpha0), ErrorKind::InvalidConfig, "alpha0 must be finite");
    detail::require(summary_window >= 1, ErrorKind::InvalidConfig, "summary window must be >= 1");
    depth_schedule.validate();
    drift.validate();
    projector.validate();
    loss_weights.validate();
  }
};

inline nlohmann::json to_json(const ExperimentConfig& c) {
  return {
      {"dim", c.dim},
      {"branches", c.branches},
      {"epochs", c.epochs},
      {"shots", c.shots},
      {"depth_schedule", {{"start", c.depth_schedule.start}, {"end", c.depth_schedule.end},
                          {"horizon", c.depth_schedule.horizon}}},
      {"alpha0", c.alpha0},
      {"adapt_alpha", c.adapt_alpha},
      {"drift", {{"phi_max", c.drift.phi_max}, {"eps", c.drift.eps}, {"b_max", c.drift.b_max},
                 {"phi0", c.drift.phi0}}},
      {"seed", c.seed},
      {"backend", to_string(c.backend)},
      {"policy", c.policy},
      {"projector", {{"w", c.projector.w}, {"b", c.projector.b}, {"span", c.projector.span}}},
      {"optimizer", {{"name", c.optimizer.name}, {"hyperparams", c.optimizer.hyperparams}}},
      {"loss_weights", {{"alpha", c.loss_weights.alpha}, {"beta", c.loss_weights.beta}}},
      {"coherence", c.coherence == CoherenceMode::Var ? "var" : "mad"},
      {"summary_window", c.summary_window},
  };
}

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& doc, const std::set<std::string>& allowed,
                                const std::string& where) {
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.contains(key)) throw Error(ErrorKind::InvalidConfig, "unknown key '" + key + "' in " + where);
  }
}

inline std::vector<double> number_or_array(const nlohmann::json& v) {
  if (v.is_number()) return {v.get<double>()};
  return v.get<std::vector<double>>();
}

}  // namespace detail

/// Overlays a JSON document on the defaults. Unknown keys are errors. When
/// "epochs" is given without a depth horizon, the horizon follows it.
inline ExperimentConfig config_from_json(const nlohmann::json& doc, ExperimentConfig c = {}) {
  try {
    detail::require(doc.is_object(), ErrorKind::InvalidConfig, "config must be a JSON object");
    detail::reject_unknown_keys(doc,
                                {"dim", "branches", "epochs", "shots", "depth_schedule", "alpha0", "adapt_alpha",
                                 "drift", "seed", "backend", "policy", "projector", "optimizer", "loss_weights",
                                 "coherence", "summary_window"},
                                "config");
    if (doc.contains("dim")) c.dim = doc["dim"].get<std::size_t>();
    if (doc.contains("branches")) c.branches = doc["branches"].get<std::size_t>();
    if (doc.contains("epochs")) {
      c.epochs = doc["epochs"].get<std::size_t>();
      c.depth_schedule.horizon = c.epochs;
    }
    if (doc.contains("shots")) c.shots = doc["shots"].get<std::uint64_t>();
    if (doc.contains("depth_schedule")) {
      const auto& d = doc["depth_schedule"];
      detail::reject_unknown_keys(d, {"start", "end", "horizon"}, "depth_schedule");
      c.depth_schedule.start = d.value("start", c.depth_schedule.start);
      c.depth_schedule.end = d.value("end", c.depth_schedule.end);
      c.depth_schedule.horizon = d.value("horizon", c.depth_schedule.horizon);
    }
    if (doc.contains("alpha0")) c.alpha0 = doc["alpha0"].get<double>();
    if (doc.contains("adapt_alpha")) c.adapt_alpha = doc["adapt_alpha"].get<bool>();
    if (doc.contains("drift")) {
      const auto& d = doc["drift"];
      detail::reject_unknown_keys(d, {"phi_max", "eps", "b_max", "phi0"}, "drift");
      c.drift.phi_max = d.value("phi_max", c.drift.phi_max);
      c.drift.eps = d.value("eps", c.drift.eps);
      c.drift.b_max = d.value("b_max", c.drift.b_max);
      c.drift.phi0 = d.value("phi0", c.drift.phi0);
    }
    if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("backend")) c.backend = parse_experiment_backend(doc["backend"].get<std::string>());
    if (doc.contains("policy")) c.policy = doc["policy"].get<std::string>();
    if (doc.contains("projector")) {
      const auto& p = doc["projector"];
      detail::reject_unknown_keys(p, {"w", "b", "span"}, "projector");
      if (p.contains("w")) c.projector.w = detail::number_or_array(p["w"]);
      if (p.contains("b")) c.projector.b = detail::number_or_array(p["b"]);
      if (p.contains("span")) c.projector.span = p["span"].get<double>();
    }
    if (doc.contains("optimizer")) {
      const auto& o = doc["optimizer"];
      detail::reject_unknown_keys(o, {"name", "hyperparams"}, "optimizer");
      c.optimizer.name = o.at("name").get<std::string>();
      c.optimizer.hyperparams = o.value("hyperparams", Hyperparams{});
    }
    if (doc.contains("loss_weights")) {
      const auto& w = doc["loss_weights"];
      detail::reject_unknown_keys(w, {"alpha", "beta"}, "loss_weights");
      c.loss_weights.alpha = w.value("alpha", c.loss_weights.alpha);
      c.loss_weights.beta = w.value("beta", c.loss_weights.beta);
    }
    if (doc.contains("coherence")) {
      const auto mode = doc["coherence"].get<std::string>();
      detail::require(mode == "var" || mode == "mad", ErrorKind::InvalidConfig, "coherence must be var or mad");
      c.coherence = mode == "var" ? CoherenceMode::Var : CoherenceMode::Mad;
    }
    if (doc.contains("summary_window")) c.summary_window = doc["summary_window"].get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

inline ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidConfig, "cannot open config " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, path + ": " + e.what());
  }
  return config_from_json(doc, std::move(base));
}

}  // namespace qmlhcs
