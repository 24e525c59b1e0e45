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

#include <functional>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qmlhcs/hypercausal/node.hpp"

namespace qmlhcs {

struct GraphSpec {
  std::map<std::string, HCNode> nodes;
  std::vector<std::pair<std::string, std::string>> edges;  // (parent, child)
  std::map<std::string, StateVector> inputs;

  GraphSpec& add_node(std::string name, HCNode node) {
    detail::require(!name.empty(), ErrorKind::InvalidConfig, "node name must be nonempty");
    if (!nodes.emplace(name, std::move(node)).second) {
      throw Error(ErrorKind::DuplicateName, "node '" + name + "' already exists");
    }
    return *this;
  }

  GraphSpec& add_edge(std::string parent, std::string child) {
    edges.emplace_back(std::move(parent), std::move(child));
    return *this;
  }

  GraphSpec& set_input(std::string name, StateVector x) {
    inputs.insert_or_assign(std::move(name), std::move(x));
    return *this;
  }
};

struct GraphOutput {
  std::vector<std::string> order;
  std::map<std::string, TriadicOutput> nodes;

  const TriadicOutput& at(const std::string& name) const {
    const auto it = nodes.find(name);
    if (it == nodes.end()) throw Error(ErrorKind::UnknownName, "no output for node '" + name + "'");
    return it->second;
  }
};

namespace detail {

/// Parents of each node, deduplicated and sorted by name.
inline std::map<std::string, std::vector<std::string>> parent_lists(const GraphSpec& graph) {
  std::map<std::string, std::set<std::string>> sets;
  for (const auto& [name, node] : graph.nodes) sets[name];
  for (const auto& [parent, child] : graph.edges) {
    if (!graph.nodes.contains(parent)) throw Error(ErrorKind::UnknownName, "edge parent '" + parent + "' is not a node");
    if (!graph.nodes.contains(child)) throw Error(ErrorKind::UnknownName, "edge child '" + child + "' is not a node");
    sets[child].insert(parent);
  }
  std::map<std::string, std::vector<std::string>> out;
  for (auto& [name, parents] : sets) out[name] = std::vector<std::string>(parents.begin(), parents.end());
  return out;
}

}  // namespace detail

/// Kahn's algorithm with a name-ordered ready set, so independent nodes come
/// out in lexicographic order.
inline std::vector<std::string> topological_order(const GraphSpec& graph) {
  const auto parents = detail::parent_lists(graph);
  std::map<std::string, std::size_t> pending;
  std::map<std::string, std::vector<std::string>> children;
  for (const auto& [child, ps] : parents) {
    pending[child] = ps.size();
    for (const auto& p : ps) children[p].push_back(child);
  }

  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (const auto& [name, count] : pending) {
    if (count == 0) ready.push(name);
  }

  std::vector<std::string> order;
  order.reserve(pending.size());
  while (!ready.empty()) {
    std::string name = ready.top();
    ready.pop();
    for (const auto& child : children[name]) {
      if (--pending[child] == 0) ready.push(child);
    }
    order.push_back(std::move(name));
  }

  if (order.size() != pending.size()) {
    // Every unresolved node has an unresolved parent, so walking parents from
    // any of them must revisit a node; the closing edge lies on a cycle.
    std::string current;
    for (const auto& [name, count] : pending) {
      if (count != 0) {
        current = name;
        break;
      }
    }
    // The step that revisits a node closes the cycle: `current` is a parent of `child`.
    std::set<std::string> seen;
    std::string child;
    while (seen.insert(current).second) {
      for (const auto& p : parents.at(current)) {
        if (pending.at(p) != 0) {
          child = std::exchange(current, p);
          break;
        }
      }
    }
    throw Error(ErrorKind::CycleDetected, "edge " + current + " -> " + child + " lies on a cycle");
  }
  return order;
}

/// Evaluates every node in topological order. A node with an explicit input
/// uses it; otherwise its input is the elementwise mean of its parents' S_t.
inline GraphOutput graph_forward(const GraphSpec& graph) {
  const auto order = topological_order(graph);
  const auto parents = detail::parent_lists(graph);

  GraphOutput out;
  out.order = order;
  for (const auto& name : order) {
    const HCNode& node = graph.nodes.at(name);
    const auto explicit_input = graph.inputs.find(name);
    const auto& ps = parents.at(name);

    std::vector<double> x;
    if (explicit_input != graph.inputs.end()) {
      x = explicit_input->second.vector();
    } else {
      if (ps.empty()) throw Error(ErrorKind::MissingSourceInput, "source node '" + name + "' has no input");
      const std::size_t width = out.nodes.at(ps.front()).state.size();
      x.assign(width, 0.0);
      for (const auto& p : ps) {
        const auto& s = out.nodes.at(p).state;
        detail::require_same_size(width, s.size(), "parent state of '" + name + "'");
        for (std::size_t j = 0; j < width; ++j) x[j] += s[j];
      }
      const double count = static_cast<double>(ps.size());
      for (double& v : x) v /= count;
    }
    out.nodes.emplace(name, node_forward(node, x));
  }
  return out;
}

}  // namespace qmlhcs
