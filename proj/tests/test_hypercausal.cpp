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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "qmlhcs/qmlhcs.hpp"

namespace {

using namespace qmlhcs;

template <class F>
Error error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected an exception";
  return Error(ErrorKind::IoError, "none");
}

template <class F>
ErrorKind kind_of(F&& f) {
  return error_of(std::forward<F>(f)).kind();
}

std::vector<std::vector<double>> rows_of(const FutureSet& f) {
  std::vector<std::vector<double>> out;
  for (std::size_t k = 0; k < f.rows(); ++k) out.emplace_back(f.row(k).begin(), f.row(k).end());
  return out;
}

double l2(const std::vector<double>& r) {
  double s = 0.0;
  for (double v : r) s += v * v;
  return std::sqrt(s);
}

std::shared_ptr<const Backend> reference(std::size_t dim, std::uint64_t seed, std::size_t branches = 5) {
  return std::make_shared<ReferenceBackend>(BackendConfig{.dim = dim, .branches = branches, .seed = seed});
}

TEST(Policy, Examples) {
  EXPECT_EQ(policy_aggregate(FutureSet{{1, 3}, {3, 5}}, Policy::mean()), (StateVector{2, 4}));
  EXPECT_EQ(policy_aggregate(FutureSet{{0}, {1}, {10}}, Policy::median()), StateVector{1});
  EXPECT_EQ(policy_aggregate(FutureSet{{0}, {1}, {10}, {4}}, Policy::median()), StateVector{2.5});
  EXPECT_EQ(policy_aggregate(FutureSet{{3, 4}, {0.3, 0.4}, {6, 8}}, Policy::min_risk(risk::l2_norm)),
            (StateVector{0.3, 0.4}));
}

TEST(Policy, MissingRiskFunctional) {
  EXPECT_EQ(kind_of([] { policy_aggregate(FutureSet{{1}, {2}}, PolicyKind::MinRisk); }),
            ErrorKind::MissingRiskFunctional);
  EXPECT_EQ(kind_of([] { Policy::parse("min_risk"); }), ErrorKind::MissingRiskFunctional);
  EXPECT_EQ(kind_of([] { Policy::parse("mode"); }), ErrorKind::ParseError);
  EXPECT_EQ(Policy::parse("min_risk:center").name(), "min_risk:center");
}

TEST(Policy, TieBreakLowestIndex) {
  const FutureSet f{{1, 0}, {0, 1}, {0.6, 0.8}};
  EXPECT_EQ(min_risk_index(f, risk::l2_norm), 0u);
}

TEST(Policy, AgreesWithExhaustiveOracles) {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 1 + rng() % 7, d = 1 + rng() % 5;
    std::vector<std::vector<double>> rows(k, std::vector<double>(d));
    for (auto& r : rows)
      for (double& v : r) v = (rng() % 4 == 0) ? std::round(rng.uniform(-3, 3)) : rng.uniform(-3, 3);
    const FutureSet f(rows);
    EXPECT_EQ(policy_aggregate(f, Policy::mean()).vector(), oracle::column_mean(rows));
    const auto med = policy_aggregate(f, Policy::median());
    const auto med_ref = oracle::column_median(rows);
    for (std::size_t j = 0; j < d; ++j) EXPECT_NEAR(med[j], med_ref[j], 1e-12);
    EXPECT_EQ(policy_aggregate(f, Policy::min_risk(risk::l2_norm)).vector(), rows[oracle::argmin_risk(rows, l2)]);
  }
}

TEST(Policy, PermutationAndTranslation) {
  SplitMix64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> rows(5, std::vector<double>(3));
    for (auto& r : rows)
      for (double& v : r) v = rng.uniform(-1, 1);
    auto shuffled = rows;
    std::reverse(shuffled.begin(), shuffled.end());
    std::rotate(shuffled.begin(), shuffled.begin() + 2, shuffled.end());
    for (const auto& p : {Policy::mean(), Policy::median(), Policy::min_risk(risk::l2_norm)}) {
      const auto a = policy_aggregate(FutureSet(rows), p);
      const auto b = policy_aggregate(FutureSet(shuffled), p);
      for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(a[j], b[j], 1e-15);
    }
    const std::vector<double> c{0.5, -2.0, 1.25};
    auto moved = rows;
    for (auto& r : moved)
      for (std::size_t j = 0; j < 3; ++j) r[j] += c[j];
    for (const auto& p : {Policy::mean(), Policy::median()}) {
      const auto a = policy_aggregate(FutureSet(rows), p);
      const auto b = policy_aggregate(FutureSet(moved), p);
      for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(b[j], a[j] + c[j], 1e-12);
    }
  }
}

TEST(Node, LinearProjectorMeanAtOrigin) {
  auto backend = std::make_shared<ReferenceBackend>(ReferenceBackend::identity({.dim = 1, .branches = 3}));
  const auto out = node_forward(HCNode(backend), StateVector{0.0});
  EXPECT_EQ(out.state, StateVector{0.0});
  EXPECT_NEAR(out.representative[0], 0.0, 1e-17);
}

TEST(Node, MinRiskCenterPicksMiddleBranch) {
  auto backend = std::make_shared<ReferenceBackend>(ReferenceBackend::identity({.dim = 2, .branches = 5}));
  HCNode node(backend, Policy::min_risk(risk::distance_to_center, "center"));
  const auto out = node_forward(node, StateVector{0.3, -0.2});
  const auto rows = rows_of(out.futures);
  const auto center = oracle::column_mean(rows);
  auto dist = [&](const std::vector<double>& r) {
    double s = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) s += (r[j] - center[j]) * (r[j] - center[j]);
    return s;
  };
  EXPECT_EQ(oracle::argmin_risk(rows, dist), 2u);
  EXPECT_EQ(out.representative.vector(), rows[2]);
}

TEST(Node, AnticipatorOverrideReportsEffectiveK) {
  auto backend = reference(2, 3, 4);
  auto proj = std::make_shared<Anticipator>(std::make_shared<LinearProjector>(),
                                            PerturbationSet{{Perturbation::shift(0.1), Perturbation::scale(0.5)}, true});
  HCNode node(backend, Policy::mean(), proj);
  const auto out = node_forward(node, StateVector{0.1, 0.2});
  EXPECT_EQ(out.futures.rows(), 8u);
  EXPECT_EQ(out.diagnostics.at("k_effective"), 8.0);
}

TEST(Topology, Examples) {
  auto b = reference(1, 0);
  GraphSpec chain;
  chain.add_node("c", HCNode(b)).add_node("a", HCNode(b)).add_node("b", HCNode(b));
  chain.add_edge("a", "b").add_edge("b", "c");
  EXPECT_EQ(topological_order(chain), (std::vector<std::string>{"a", "b", "c"}));

  GraphSpec fan;
  fan.add_node("c", HCNode(b)).add_node("b", HCNode(b)).add_node("a", HCNode(b));
  fan.add_edge("b", "c").add_edge("a", "c");
  EXPECT_EQ(topological_order(fan), (std::vector<std::string>{"a", "b", "c"}));

  GraphSpec diamond;
  for (const char* n : {"z", "y", "x", "w"}) diamond.add_node(n, HCNode(b));
  diamond.add_edge("z", "y").add_edge("z", "x").add_edge("y", "w").add_edge("x", "w");
  EXPECT_EQ(topological_order(diamond), (std::vector<std::string>{"z", "x", "y", "w"}));
}

TEST(Topology, CycleDetectedNamesAnEdgeOnTheCycle) {
  auto b = reference(1, 0);
  GraphSpec two;
  two.add_node("a", HCNode(b)).add_node("b", HCNode(b));
  two.add_edge("a", "b").add_edge("b", "a");
  EXPECT_EQ(kind_of([&] { topological_order(two); }), ErrorKind::CycleDetected);

  // A cycle upstream of a long tail: the reported edge must be q->r, r->s or s->q.
  GraphSpec tail;
  for (const char* n : {"a", "q", "r", "s", "t", "u"}) tail.add_node(n, HCNode(b));
  tail.add_edge("q", "r").add_edge("r", "s").add_edge("s", "q").add_edge("s", "t").add_edge("t", "u");
  tail.add_edge("a", "q");
  const std::string msg = error_of([&] { topological_order(tail); }).what();
  EXPECT_TRUE(msg.find("q -> r") != std::string::npos || msg.find("r -> s") != std::string::npos ||
              msg.find("s -> q") != std::string::npos)
      << msg;

  GraphSpec self;
  self.add_node("a", HCNode(b)).add_edge("a", "a");
  EXPECT_NE(std::string(error_of([&] { topological_order(self); }).what()).find("a -> a"), std::string::npos);
}

TEST(Graph, UnknownEndpointsAndDuplicates) {
  auto b = reference(1, 0);
  GraphSpec g;
  g.add_node("a", HCNode(b));
  EXPECT_EQ(kind_of([&] { g.add_node("a", HCNode(b)); }), ErrorKind::DuplicateName);
  g.add_edge("a", "ghost");
  EXPECT_EQ(kind_of([&] { topological_order(g); }), ErrorKind::UnknownName);
}

TEST(Graph, SingleNodeEqualsNodeForward) {
  HCNode node(reference(3, 11));
  GraphSpec g;
  g.add_node("only", node).set_input("only", StateVector{0.1, 0.2, 0.3});
  const auto out = graph_forward(g);
  const auto direct = node_forward(node, StateVector{0.1, 0.2, 0.3});
  EXPECT_EQ(out.at("only").state, direct.state);
  EXPECT_EQ(out.at("only").futures, direct.futures);
  EXPECT_EQ(out.at("only").representative, direct.representative);
}

TEST(Graph, ParentMeanInput) {
  // With identity weights S = tanh(x); the child must see the mean of its parents' states.
  auto id = std::make_shared<ReferenceBackend>(ReferenceBackend::identity({.dim = 2}));
  GraphSpec g;
  g.add_node("p1", HCNode(id)).add_node("p2", HCNode(id)).add_node("child", HCNode(id));
  g.add_edge("p1", "child").add_edge("p2", "child");
  g.set_input("p1", StateVector{0.2, 0.4}).set_input("p2", StateVector{0.6, -0.4});
  const auto out = graph_forward(g);
  const auto& s1 = out.at("p1").state;
  const auto& s2 = out.at("p2").state;
  const auto expected = node_forward(HCNode(id), StateVector{(s1[0] + s2[0]) / 2, (s1[1] + s2[1]) / 2});
  EXPECT_EQ(out.at("child").state, expected.state);
}

class EchoBackend final : public Backend {
 public:
  using Backend::Backend;
  std::string_view name() const override { return "echo"; }
  BackendCapabilities capabilities() const override { return {true, false, true}; }

 protected:
  StateVector run(std::span<const double> x, const ExecutionOptions&) const override {
    return StateVector(std::vector<double>(x.begin(), x.end()));
  }
};

TEST(Graph, ParentMeanIsExactOnEchoBackend) {
  auto echo = std::make_shared<EchoBackend>(BackendConfig{.dim = 2});
  GraphSpec g;
  g.add_node("a", HCNode(echo)).add_node("b", HCNode(echo)).add_node("c", HCNode(echo));
  g.add_edge("a", "c").add_edge("b", "c");
  g.set_input("a", StateVector{1, 1}).set_input("b", StateVector{3, 3});
  EXPECT_EQ(graph_forward(g).at("c").state, (StateVector{2, 2}));

  // Explicit input wins over parents.
  g.set_input("c", StateVector{-5, 7});
  EXPECT_EQ(graph_forward(g).at("c").state, (StateVector{-5, 7}));
}

TEST(Graph, MissingSourceInput) {
  GraphSpec g;
  g.add_node("a", HCNode(reference(1, 0)));
  EXPECT_EQ(kind_of([&] { graph_forward(g); }), ErrorKind::MissingSourceInput);
}

TEST(Graph, PathGraphMatchesManualAndChain) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::vector<HCNode> nodes{HCNode(reference(4, seed)), HCNode(reference(4, seed + 100)),
                              HCNode(reference(4, seed + 200), Policy::median())};
    const StateVector x{0.5, -0.25, 1.0, 0.0};
    GraphSpec g;
    // Names chosen so lexicographic order differs from insertion order.
    g.add_node("n2", nodes[1]).add_node("n3", nodes[2]).add_node("n1", nodes[0]);
    g.add_edge("n1", "n2").add_edge("n2", "n3").set_input("n1", x);
    const auto graph = graph_forward(g);
    const auto chain = chain_forward(nodes, x);

    const auto s1 = node_forward(nodes[0], x);
    const auto s2 = node_forward(nodes[1], s1.state);
    const auto s3 = node_forward(nodes[2], s2.state);
    EXPECT_EQ(graph.at("n3").state, s3.state);
    EXPECT_EQ(chain.state, s3.state);
    EXPECT_EQ(chain.futures, graph.at("n3").futures);
    EXPECT_EQ(chain.representative, graph.at("n3").representative);
  }
}

TEST(Chain, TwoReferenceNodesComposeDirectly) {
  auto r1 = std::make_shared<ReferenceBackend>(BackendConfig{.dim = 3, .seed = 1});
  auto r2 = std::make_shared<ReferenceBackend>(BackendConfig{.dim = 3, .seed = 2});
  const StateVector x{0.3, 0.1, -0.8};
  const auto out = chain_forward({HCNode(r1), HCNode(r2)}, x);
  EXPECT_EQ(out.state, r2->execute(r1->execute(x)));
  EXPECT_EQ(chain_forward({HCNode(r1)}, x).state, node_forward(HCNode(r1), x).state);
  EXPECT_EQ(kind_of([&] { chain_forward({HCNode(r1), HCNode(reference(2, 0))}, x); }), ErrorKind::DimensionMismatch);
}

TEST(Graph, InsertionOrderIndependence) {
  auto build = [](bool reversed) {
    GraphSpec g;
    std::vector<std::string> names{"a", "b", "c", "d"};
    if (reversed) std::reverse(names.begin(), names.end());
    for (const auto& n : names) g.add_node(n, HCNode(reference(2, n[0])));
    std::vector<std::pair<std::string, std::string>> edges{{"a", "c"}, {"b", "c"}, {"c", "d"}};
    if (reversed) std::reverse(edges.begin(), edges.end());
    for (const auto& [p, c] : edges) g.add_edge(p, c);
    g.set_input("a", StateVector{0.1, 0.2}).set_input("b", StateVector{-0.3, 0.4});
    return graph_forward(g);
  };
  const auto x = build(false), y = build(true);
  EXPECT_EQ(x.order, y.order);
  for (const auto& n : x.order) EXPECT_EQ(x.at(n).state, y.at(n).state);
}

TEST(GraphJson, LoadsAndEvaluates) {
  const auto doc = nlohmann::json::parse(R"({
    "nodes": {
      "src": {"backend": "reference", "dim": 2, "branches": 3, "seed": 5},
      "sink": {"backend": "sim_analytic", "dim": 2, "branches": 4, "depth": 2, "policy": "median",
               "projector": {"w": [1.0, 0.5], "b": 0.1, "span": 0.2,
                             "perturbations": ["shift:0.1"], "symmetric": true}}
    },
    "edges": [["src", "sink"]],
    "inputs": {"src": [0.25, -0.5]}
  })");
  const auto registry = builtin_backends();
  const auto g = graph_from_json(doc, registry);
  const auto out = graph_forward(g);
  EXPECT_EQ(out.order, (std::vector<std::string>{"src", "sink"}));
  EXPECT_EQ(out.at("sink").futures.rows(), 6u);

  const auto js = graph_output_to_json(out);
  EXPECT_EQ(js["order"][1], "sink");
  EXPECT_TRUE(js["nodes"]["sink"].contains("representative"));

  EXPECT_EQ(kind_of([&] { graph_from_json(nlohmann::json::parse(R"({"nodes":{"a":{"backend":"nope","dim":1}}})"), registry); }),
            ErrorKind::UnknownName);
  EXPECT_EQ(kind_of([&] { graph_from_json(nlohmann::json::parse(R"({"nodes":{"a":{"backend":"reference"}}})"), registry); }),
            ErrorKind::ParseError);
}

}  // namespace
