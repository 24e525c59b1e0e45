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

#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmlhcs/backend/engines.hpp"
#include "qmlhcs/hypercausal/graph.hpp"
#include "qmlhcs/projectors/anticipator.hpp"
#include "qmlhcs/projectors/linear.hpp"

namespace qmlhcs {

// GraphSpec JSON layout:
//
//   {
//     "nodes": {
//       "<name>": {
//         "backend": "reference",            // registry name
//         "dim": 3, "branches": 5, "depth": 1, "seed": 7, "shots": 1024,
//         "policy": "mean",                  // mean | median | min_risk:l2 | min_risk:center
//         "projector": {"w": 1.0, "b": [0, 0, 0], "span": 0.5,
//                       "perturbations": ["shift:0.1"], "symmetric": true}
//       }
//     },
//     "edges": [["a", "b"]],
//     "inputs": {"a": [0.1, 0.2, 0.3]}
//   }
//
// Only "backend" and "dim" are required per node.

namespace detail {

inline std::vector<double> json_broadcast_vector(const nlohmann::json& v, const char* what) {
  if (v.is_number()) return {v.get<double>()};
  require(v.is_array(), ErrorKind::ParseError, std::string(what) + " must be a number or an array");
  return v.get<std::vector<double>>();
}

}  // namespace detail

inline std::shared_ptr<const Projector> projector_from_json(const nlohmann::json& doc) {
  LinearProjectorParams params;
  if (doc.contains("w")) params.w = detail::json_broadcast_vector(doc["w"], "projector w");
  if (doc.contains("b")) params.b = detail::json_broadcast_vector(doc["b"], "projector b");
  if (doc.contains("span")) params.span = doc["span"].get<double>();
  auto linear = std::make_shared<const LinearProjector>(params);

  if (!doc.contains("perturbations")) return linear;
  PerturbationSet set;
  set.symmetric = doc.value("symmetric", false);
  for (const auto& item : doc["perturbations"]) set.items.push_back(Perturbation::parse(item.get<std::string>()));
  return std::make_shared<const Anticipator>(linear, std::move(set));
}

inline GraphSpec graph_from_json(const nlohmann::json& doc, const BackendRegistry& registry) {
  try {
    GraphSpec graph;
    for (const auto& [name, spec] : doc.at("nodes").items()) {
      BackendConfig config;
      config.dim = spec.at("dim").get<std::size_t>();
      config.branches = spec.value("branches", std::size_t{2});
      config.depth = spec.value("depth", std::size_t{1});
      config.seed = spec.value("seed", std::uint64_t{0});
      if (spec.contains("shots")) config.shots = spec["shots"].get<std::uint64_t>();
      std::shared_ptr<const Backend> backend = create_backend(registry, spec.at("backend").get<std::string>(), config);

      HCNode node(std::move(backend), Policy::parse(spec.value("policy", std::string("mean"))));
      if (spec.contains("projector")) node.projector = projector_from_json(spec["projector"]);
      graph.add_node(name, std::move(node));
    }
    if (doc.contains("edges")) {
      for (const auto& edge : doc["edges"]) {
        detail::require(edge.is_array() && edge.size() == 2, ErrorKind::ParseError, "edges must be [parent, child] pairs");
        graph.add_edge(edge[0].get<std::string>(), edge[1].get<std::string>());
      }
    }
    if (doc.contains("inputs")) {
      for (const auto& [name, values] : doc["inputs"].items()) {
        graph.set_input(name, StateVector(values.get<std::vector<double>>()));
      }
    }
    return graph;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("graph spec: ") + e.what());
  }
}

inline GraphSpec load_graph(const std::string& path, const BackendRegistry& registry) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  return graph_from_json(doc, registry);
}

inline nlohmann::json graph_output_to_json(const GraphOutput& output) {
  nlohmann::json nodes = nlohmann::json::object();
  for (const auto& name : output.order) {
    const auto& r = output.at(name);
    std::vector<std::vector<double>> futures;
    for (std::size_t k = 0; k < r.futures.rows(); ++k) {
      const auto row = r.futures.row(k);
      futures.emplace_back(row.begin(), row.end());
    }
    nodes[name] = {{"state", r.state.vector()},
                   {"futures", futures},
                   {"representative", r.representative.vector()},
                   {"policy", r.policy},
                   {"diagnostics", r.diagnostics}};
  }
  return {{"order", output.order}, {"nodes", std::move(nodes)}};
}

}  // namespace qmlhcs
