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

// Builds a two-node chain, runs one step per node and scores the result.

#include <cstdio>
#include <memory>

#include "qmlhcs/qmlhcs.hpp"

int main() {
  using namespace qmlhcs;
  const auto registry = builtin_backends();

  BackendConfig config{.dim = 3, .branches = 5, .shots = 4096, .depth = 2, .seed = 7};
  std::shared_ptr<const Backend> sampled = create_backend(registry, "sim_sampled", config);

  // Second node: analytic circuit, anticipator adding a shifted center and its mirror.
  config.shots.reset();
  std::shared_ptr<const Backend> analytic = create_backend(registry, "sim_analytic", config);
  auto anticipator = std::make_shared<Anticipator>(std::make_shared<LinearProjector>(LinearProjectorParams{}),
                                                   PerturbationSet{{Perturbation::shift(0.2)}, true});

  GraphSpec graph;
  graph.add_node("sense", HCNode(sampled))
      .add_node("plan", HCNode(analytic, Policy::min_risk(risk::distance_to_center, "center"), anticipator))
      .add_edge("sense", "plan")
      .set_input("sense", StateVector{0.3, -1.2, 2.0});

  const auto out = graph_forward(graph);
  for (const auto& name : out.order) {
    const auto& r = out.at(name);
    std::printf("%-6s S =", name.c_str());
    for (double v : r.state) std::printf(" %+.4f", v);
    std::printf("  K = %zu  coherence = %.5f\n", r.futures.rows(), loss_coherence(r.futures));
  }

  const auto& plan = out.at("plan");
  const double cons = loss_consistency(out.at("sense").state, plan.state, plan.representative, LossWeights{});
  std::printf("consistency(sense -> plan) = %.5f\n", cons);
  return 0;
}
