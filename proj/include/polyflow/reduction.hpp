// Copyright 2026 The Polyflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reduction of a directed polymatroidal network with a fractional metric to
// an edge-capacitated digraph H, and the map from cuts of H back to cuts of
// the original network.
//
// H has the original nodes, one node gamma_e per edge, and for every node v
// an in-tree over delta^-(v) and an out-tree over delta^+(v). Sort delta^-(v)
// as e_1..e_n by decreasing l(e,v) (ties by edge index). The in-tree is the
// path v_1 -> v_2 -> ... -> v_n -> v where arc (v_j, v_{j+1}) has length
// l(e_j,v) - l(e_{j+1},v) and cost rho^-_v({e_1..e_j}), plus connectors
// gamma_{e_j} -> v_j of length 0 that can never be cut. The out-tree mirrors
// it: v -> v_n -> ... -> v_1 with connectors v_j -> gamma_{e_j}.

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "polyflow/error.hpp"
#include "polyflow/graph.hpp"
#include "polyflow/network.hpp"
#include "polyflow/relaxations.hpp"

namespace polyflow {

enum class HNodeRole { Original, EdgeNode, InTree, OutTree };
enum class HArcRole { Connector, InPath, OutPath };

inline const char* to_string(HNodeRole r) {
  switch (r) {
    case HNodeRole::Original: return "original";
    case HNodeRole::EdgeNode: return "edge";
    case HNodeRole::InTree: return "in_tree";
    default: return "out_tree";
  }
}
inline const char* to_string(HArcRole r) {
  switch (r) {
    case HArcRole::Connector: return "connector";
    case HArcRole::InPath: return "in_path";
    default: return "out_path";
  }
}

struct HNode {
  HNodeRole role;
  std::size_t owner;      // original node (itself, or the tree's root); edge tail for gamma_e
  std::size_t edge;       // gamma_e's edge, or e_j for tree node v_j
  std::size_t depth = 0;  // j for tree nodes, 1-based
};

struct HArc {
  std::size_t from;
  std::size_t to;
  double length;
  double cost;            // meaningless when infinite
  bool infinite = false;  // connectors: never part of a cut
  HArcRole role;
  std::size_t owner = 0;  // tree root v
  std::size_t depth = 0;  // j
  EdgeSet set;            // S_j for path arcs (sorted edge indices)
};

struct ReducedNetwork {
  std::size_t original_nodes = 0;
  std::vector<HNode> nodes;
  std::vector<HArc> arcs;
  std::vector<std::size_t> gamma;                   // H node of each original edge
  std::vector<std::vector<std::size_t>> in_tree;    // [v][j-1] -> H node v_j^-
  std::vector<std::vector<std::size_t>> out_tree;   // [v][j-1] -> H node v_j^+

  std::size_t num_nodes() const { return nodes.size(); }

  Digraph graph() const {
    Digraph g(nodes.size());
    for (std::size_t a = 0; a < arcs.size(); ++a) g.add_arc(arcs[a].from, arcs[a].to, arcs[a].length, a);
    return g;
  }

  // sum over finite-cost arcs of c * l'.
  double total_volume() const {
    double z = 0.0;
    for (const HArc& a : arcs) {
      if (!a.infinite) z += a.cost * a.length;
    }
    return z;
  }

  double cut_cost(const std::vector<std::size_t>& cut) const {
    double z = 0.0;
    for (std::size_t a : cut) {
      if (arcs.at(a).infinite) throw InputError("cut contains an uncuttable arc");
      z += arcs[a].cost;
    }
    return z;
  }
};

inline ReducedNetwork reduce(const PolymatroidalNetwork& net, const FractionalCutMetric& metric) {
  if (!net.directed()) throw InputError("the reduction applies to directed networks");
  if (metric.split.size() != net.num_edges()) throw InputError("metric does not match network");
  for (const auto& s : metric.split) {
    if (!(s[0] >= 0.0) || !(s[1] >= 0.0)) throw InputError("metric splits must be non-negative");
  }
  ReducedNetwork red;
  const std::size_t n = net.num_nodes(), m = net.num_edges();
  red.original_nodes = n;
  for (std::size_t v = 0; v < n; ++v) red.nodes.push_back({HNodeRole::Original, v, 0, 0});
  for (std::size_t e = 0; e < m; ++e) {
    red.gamma.push_back(red.nodes.size());
    red.nodes.push_back({HNodeRole::EdgeNode, net.edge(e).u, e, 0});
  }
  red.in_tree.resize(n);
  red.out_tree.resize(n);

  auto sorted_slots = [&](const std::vector<std::size_t>& edges, int which) {
    std::vector<std::size_t> order(edges);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (metric.split[a][which] != metric.split[b][which]) {
        return metric.split[a][which] > metric.split[b][which];
      }
      return a < b;
    });
    return order;
  };

  for (std::size_t v = 0; v < n; ++v) {
    for (int side = 0; side < 2; ++side) {
      // side 0: in-tree over delta^-(v), split at the head end (index 1).
      // side 1: out-tree over delta^+(v), split at the tail end (index 0).
      const bool in = side == 0;
      const int which = in ? 1 : 0;
      const auto order = sorted_slots(in ? net.in_edges(v) : net.out_edges(v), which);
      const SubmodularOracle& rho = in ? net.rho_in(v) : net.rho_out(v);
      auto& tree = in ? red.in_tree[v] : red.out_tree[v];
      for (std::size_t j = 0; j < order.size(); ++j) {
        tree.push_back(red.nodes.size());
        red.nodes.push_back({in ? HNodeRole::InTree : HNodeRole::OutTree, v, order[j], j + 1});
      }
      Mask s = 0;
      EdgeSet set;
      for (std::size_t j = 0; j < order.size(); ++j) {
        const std::size_t e = order[j];
        s |= Mask{1} << net.end(e, which).slot;
        set.push_back(e);
        const double here = metric.split[e][which];
        const double next = j + 1 < order.size() ? metric.split[order[j + 1]][which] : 0.0;
        HArc path;
        path.length = here - next;
        path.cost = rho.eval_unchecked(s);
        path.role = in ? HArcRole::InPath : HArcRole::OutPath;
        path.owner = v;
        path.depth = j + 1;
        path.set = set;
        std::sort(path.set.begin(), path.set.end());
        const std::size_t node_j = tree[j];
        const std::size_t node_next = j + 1 < order.size() ? tree[j + 1] : v;
        if (in) {
          path.from = node_j;
          path.to = node_next;
        } else {
          path.from = node_next;
          path.to = node_j;
        }
        red.arcs.push_back(std::move(path));
        HArc conn;
        conn.length = 0.0;
        conn.cost = 0.0;
        conn.infinite = true;
        conn.role = HArcRole::Connector;
        conn.owner = v;
        conn.depth = j + 1;
        conn.from = in ? red.gamma[e] : node_j;
        conn.to = in ? node_j : red.gamma[e];
        red.arcs.push_back(std::move(conn));
      }
    }
  }
  return red;
}

// Original-node pairs (a, b) with no a -> b path in H minus `cut`;
// sep[a][b] = true when separated.
inline std::vector<std::vector<bool>> reduced_separation(const ReducedNetwork& red,
                                                         const std::vector<std::size_t>& cut) {
  std::vector<bool> removed(red.arcs.size(), false);
  for (std::size_t a : cut) removed.at(a) = true;
  const Digraph g = red.graph();
  std::vector<std::vector<bool>> sep(red.original_nodes);
  for (std::size_t a = 0; a < red.original_nodes; ++a) {
    const auto reach = g.reachable(a, [&](std::size_t arc) { return !removed[arc]; });
    sep[a].resize(red.original_nodes);
    for (std::size_t b = 0; b < red.original_nodes; ++b) sep[a][b] = !reach[b];
  }
  return sep;
}

// Same relation in G minus F.
inline std::vector<std::vector<bool>> original_separation(const PolymatroidalNetwork& net,
                                                          const EdgeSet& f) {
  const std::vector<bool> removed = edge_indicator(net, f);
  const Digraph g = net.arc_graph();
  std::vector<std::vector<bool>> sep(net.num_nodes());
  for (std::size_t a = 0; a < net.num_nodes(); ++a) {
    const auto reach = g.reachable(a, [&](std::size_t arc) { return !removed[g.arc(arc).tag]; });
    sep[a].resize(net.num_nodes());
    for (std::size_t b = 0; b < net.num_nodes(); ++b) sep[a][b] = !reach[b];
  }
  return sep;
}

struct MappedCut {
  EdgeSet edges;                         // F, sorted
  std::vector<std::size_t> assignment;   // g(F[k])
  double cost = 0.0;                     // nu_g(F)
  std::vector<std::size_t> minimal_cut;  // minimalized F'
  double reduced_cost = 0.0;             // c(F') before minimalization
  double minimal_reduced_cost = 0.0;     // c of the minimalized F'
};

// Minimalizes F' and maps each remaining path arc of depth j in v's tree to
// the set S_j assigned to v. An edge reached from two trees keeps the first
// assignment in arc order.
inline MappedCut map_cut_back(const PolymatroidalNetwork& net, const ReducedNetwork& red,
                              std::vector<std::size_t> cut) {
  std::sort(cut.begin(), cut.end());
  cut.erase(std::unique(cut.begin(), cut.end()), cut.end());
  MappedCut out;
  out.reduced_cost = red.cut_cost(cut);

  // Within one tree only the arc nearest the root matters.
  std::vector<std::size_t> kept;
  for (std::size_t a : cut) {
    const HArc& arc = red.arcs[a];
    bool dominated = false;
    for (std::size_t b : cut) {
      const HArc& other = red.arcs[b];
      if (b != a && other.role == arc.role && other.owner == arc.owner && other.depth > arc.depth) {
        dominated = true;
      }
    }
    if (!dominated) kept.push_back(a);
  }
  const auto target = reduced_separation(red, kept);
  for (std::size_t i = 0; i < kept.size();) {
    std::vector<std::size_t> trial = kept;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (reduced_separation(red, trial) == target) {
      kept = std::move(trial);
    } else {
      ++i;
    }
  }
  out.minimal_cut = kept;
  out.minimal_reduced_cost = red.cut_cost(kept);

  std::vector<std::size_t> owner(net.num_edges(), static_cast<std::size_t>(-1));
  for (std::size_t a : kept) {
    const HArc& arc = red.arcs[a];
    for (std::size_t e : arc.set) {
      if (owner[e] == static_cast<std::size_t>(-1)) owner[e] = arc.owner;
    }
  }
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    if (owner[e] != static_cast<std::size_t>(-1)) {
      out.edges.push_back(e);
      out.assignment.push_back(owner[e]);
    }
  }
  out.cost = assignment_cost(net, out.edges, out.assignment);
  return out;
}

}  // namespace polyflow
