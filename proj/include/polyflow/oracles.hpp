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

// Exhaustive ground truth for small instances, and seeded random instances.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polyflow/error.hpp"
#include "polyflow/graph.hpp"
#include "polyflow/network.hpp"
#include "polyflow/rng.hpp"
#include "polyflow/submodular.hpp"

namespace polyflow {

inline constexpr std::size_t kMaxBruteEdges = 16;
inline constexpr std::size_t kMaxBruteNodes = 16;

namespace detail {

inline EdgeSet edges_of(std::uint32_t mask) {
  EdgeSet f;
  for (std::size_t e = 0; mask >> e; ++e) {
    if (mask >> e & 1) f.push_back(e);
  }
  return f;
}

inline void require_brute_edges(const PolymatroidalNetwork& net) {
  if (net.num_edges() > kMaxBruteEdges) {
    throw CapabilityError("brute force enumerates 2^|E| edge sets; |E| = " +
                              std::to_string(net.num_edges()),
                          kMaxBruteEdges);
  }
}

// Replace `best` by `cand` if strictly better, or equal and lexicographically
// smaller in the edge list.
inline bool improves(double cand, const EdgeSet& cand_edges, double best,
                     const EdgeSet& best_edges) {
  if (cand < best - 1e-12) return true;
  if (cand > best + 1e-12) return false;
  return cand_edges < best_edges;
}

}  // namespace detail

// Cheapest multicut. Only inclusion-minimal multicuts are priced: any other
// multicut contains one, and nu is monotone.
inline CutSolution brute_min_multicut(const PolymatroidalNetwork& net, const DemandSet& demands,
                                      const CutOptions& opts = {}) {
  detail::require_brute_edges(net);
  validate_demands(net, demands);
  const std::size_t m = net.num_edges();
  const std::uint32_t total = std::uint32_t{1} << m;
  std::vector<bool> multicut(total);
  for (std::uint32_t f = 0; f < total; ++f) {
    multicut[f] = separated_pairs(net, detail::edges_of(f), demands).all_cut();
  }
  CutSolution best;
  double best_cost = kInfinity;
  for (std::uint32_t f = 0; f < total; ++f) {
    if (!multicut[f]) continue;
    bool minimal = true;
    for (std::size_t e = 0; e < m && minimal; ++e) {
      if (f >> e & 1 && multicut[f & ~(std::uint32_t{1} << e)]) minimal = false;
    }
    if (!minimal) continue;
    CutSolution sol = evaluate_cut(net, detail::edges_of(f), demands, opts);
    if (detail::improves(sol.cost, sol.edges, best_cost, best.edges)) {
      best_cost = sol.cost;
      best = std::move(sol);
    }
  }
  return best;
}

// Sparsest edge set. An F is priced only if dropping any one edge lowers
// D(F); otherwise the smaller set is at least as sparse.
inline CutSolution brute_sparsest_cut(const PolymatroidalNetwork& net, const DemandSet& demands,
                                      const CutOptions& opts = {}) {
  detail::require_brute_edges(net);
  validate_demands(net, demands);
  const std::size_t m = net.num_edges();
  const std::uint32_t total = std::uint32_t{1} << m;
  std::vector<double> sep(total);
  for (std::uint32_t f = 0; f < total; ++f) {
    sep[f] = separated_pairs(net, detail::edges_of(f), demands).demand;
  }
  CutSolution best;
  double best_sparsity = kInfinity;
  for (std::uint32_t f = 0; f < total; ++f) {
    if (!(sep[f] > 0.0)) continue;
    bool needed = true;
    for (std::size_t e = 0; e < m && needed; ++e) {
      if (f >> e & 1 && sep[f & ~(std::uint32_t{1} << e)] >= sep[f]) needed = false;
    }
    if (!needed) continue;
    CutSolution sol = evaluate_cut(net, detail::edges_of(f), demands, opts);
    const double sp = sol.cost / sol.separation.demand;
    if (detail::improves(sp, sol.edges, best_sparsity, best.edges)) {
      best_sparsity = sp;
      best = std::move(sol);
    }
  }
  if (!std::isfinite(best_sparsity)) throw UndefinedSparsityError("no edge set separates demand");
  return best;
}

struct PartitionCut {
  std::vector<bool> side;  // S; always contains node 0
  CutSolution cut;         // delta(S)
  double crossing = 0.0;   // demand across S

  double sparsity() const { return cut.cost / crossing; }
};

// Node set S minimizing nu(delta(S)) over the demand crossing S.
inline PartitionCut brute_bipartition_sparsest(const PolymatroidalNetwork& net,
                                               const DemandSet& demands,
                                               const CutOptions& opts = {}) {
  if (net.directed()) throw InputError("bi-partition cuts are defined on undirected networks");
  const std::size_t n = net.num_nodes();
  if (n > kMaxBruteNodes) {
    throw CapabilityError("bi-partition search enumerates 2^|V| node sets; |V| = " +
                              std::to_string(n),
                          kMaxBruteNodes);
  }
  validate_demands(net, demands);
  PartitionCut best;
  double best_sparsity = kInfinity;
  if (n < 2) throw UndefinedSparsityError("no proper node subset");
  // S contains node 0; delta(S) = delta(V - S).
  for (std::uint32_t bits = 0; bits + 1 < (std::uint32_t{1} << (n - 1)); ++bits) {
    std::vector<bool> side(n, false);
    side[0] = true;
    for (std::size_t v = 1; v < n; ++v) side[v] = bits >> (v - 1) & 1;
    EdgeSet f;
    for (std::size_t e = 0; e < net.num_edges(); ++e) {
      if (side[net.edge(e).u] != side[net.edge(e).v]) f.push_back(e);
    }
    const double crossing = crossing_demand(side, demands);
    if (!(crossing > 0.0)) continue;
    CutSolution sol = evaluate_cut(net, f, demands, opts);
    const double sp = sol.cost / crossing;
    if (detail::improves(sp, sol.edges, best_sparsity, best.cut.edges)) {
      best_sparsity = sp;
      best = {std::move(side), std::move(sol), crossing};
    }
  }
  if (!std::isfinite(best_sparsity)) throw UndefinedSparsityError("no bi-partition separates demand");
  return best;
}

// ---------------------------------------------------------------------------
// Instances

struct Instance {
  PolymatroidalNetwork network;
  DemandSet demands;
};

// Relative weights of the oracle families drawn per capacity.
struct FamilyMix {
  double modular = 1.0;
  double uniform = 1.0;
  double partition = 1.0;
  double concave = 1.0;
  double table = 1.0;  // coverage tables, only for at most kMaxTableSlots slots

  static FamilyMix modular_only() { return {1.0, 0.0, 0.0, 0.0, 0.0}; }
};

inline constexpr std::size_t kMaxTableSlots = 6;

struct InstanceGenParams {
  std::size_t nodes = 6;
  std::size_t edges = 9;
  Orientation orientation = Orientation::Undirected;
  FamilyMix mix;
  std::size_t pairs = 3;
  bool symmetric = false;
  bool connected = true;        // spanning tree first (weakly connected if directed)
  bool unit_demands = false;    // otherwise demands in {1, 2, 3}
  int max_weight = 4;           // integer capacity parameters are drawn from [1, max_weight]
  std::uint64_t seed = 1;
};

namespace detail {

inline OracleFamily random_family(std::size_t slots, const FamilyMix& mix, int max_w,
                                  CounterRng& rng) {
  const double w[5] = {mix.modular, mix.uniform, mix.partition, mix.concave,
                       slots <= kMaxTableSlots ? mix.table : 0.0};
  double sum = 0.0;
  for (double x : w) sum += x;
  if (!(sum > 0.0)) throw InputError("oracle family mix has no usable family");
  double pick = rng.uniform01() * sum;
  int kind = -1;
  for (int i = 0; i < 5; ++i) {
    if (w[i] <= 0.0) continue;
    kind = i;
    if (pick < w[i]) break;
    pick -= w[i];
  }
  auto draw = [&] { return static_cast<double>(rng.uniform_int(1, max_w)); };
  switch (kind) {
    case 0: {
      Modular f;
      for (std::size_t i = 0; i < slots; ++i) f.weights.push_back(draw());
      return f;
    }
    case 1: {
      UniformRankCap f{draw() + static_cast<double>(rng.uniform_int(0, max_w))};
      if (rng.bernoulli(0.5)) f.per_element = draw();
      return f;
    }
    case 2: {
      PartitionRankCap f;
      const std::size_t blocks = slots < 2 ? 1 : 1 + rng.index(std::min<std::size_t>(slots, 3));
      f.blocks.resize(blocks);
      for (std::size_t i = 0; i < slots; ++i) {
        f.blocks[i < blocks ? i : rng.index(blocks)].elements.push_back(i);
      }
      for (auto& b : f.blocks) {
        b.cap = draw();
        if (rng.bernoulli(0.3)) b.per_element = draw();
      }
      return f;
    }
    case 3: {
      ConcaveOfWeight f;
      for (std::size_t i = 0; i < slots; ++i) f.weights.push_back(draw());
      // Decreasing non-negative slopes give a concave, non-decreasing phi.
      double x = 0.0, y = 0.0, slope = 1.0 + rng.uniform_int(0, 2);
      const std::size_t pieces = 1 + rng.index(3);
      for (std::size_t i = 0; i < pieces; ++i) {
        const double len = draw();
        x += len;
        y += slope * len;
        f.breakpoints.emplace_back(x, y);
        slope = std::floor(slope * rng.uniform01() * 2.0) / 2.0;
      }
      return f;
    }
    default: {
      // Weighted coverage plus a modular term.
      const std::size_t universe = 5;
      std::vector<double> item(universe);
      for (double& v : item) v = draw();
      std::vector<std::uint32_t> covers(slots);
      std::vector<double> extra(slots, 0.0);
      for (std::size_t i = 0; i < slots; ++i) {
        covers[i] = static_cast<std::uint32_t>(rng.uniform_int(1, (1 << universe) - 1));
        if (rng.bernoulli(0.3)) extra[i] = static_cast<double>(rng.uniform_int(0, 2));
      }
      ExplicitTable f;
      f.values.assign(std::size_t{1} << slots, 0.0);
      for (std::size_t s = 1; s < f.values.size(); ++s) {
        std::uint32_t u = 0;
        double v = 0.0;
        for (std::size_t i = 0; i < slots; ++i) {
          if (s >> i & 1) {
            u |= covers[i];
            v += extra[i];
          }
        }
        for (std::size_t j = 0; j < universe; ++j) {
          if (u >> j & 1) v += item[j];
        }
        f.values[s] = v;
      }
      return f;
    }
  }
}

}  // namespace detail

inline Instance generate_instance(const InstanceGenParams& p) {
  const bool dir = p.orientation == Orientation::Directed;
  const std::size_t n = p.nodes;
  if (n < 2) throw InputError("instances need at least 2 nodes");
  if (p.max_weight < 1) throw InputError("max_weight must be at least 1");
  const std::size_t max_edges = dir ? n * (n - 1) : n * (n - 1) / 2;
  if (p.edges > max_edges) throw InputError("too many edges for a simple graph");
  if (p.connected && p.edges + 1 < n) throw InputError("a connected instance needs n - 1 edges");
  const std::size_t max_pairs = dir && !p.symmetric ? n * (n - 1) : n * (n - 1) / 2;
  if (p.pairs > max_pairs) throw InputError("more demand pairs than node pairs");

  const CounterRng root = CounterRng(p.seed).split("instance");
  CounterRng rng_g = root.split("graph");
  CounterRng rng_c = root.split("capacity");
  CounterRng rng_d = root.split("demand");

  NetworkBuilder b(p.orientation);
  for (std::size_t v = 0; v < n; ++v) b.add_node("v" + std::to_string(v));
  std::set<std::pair<std::size_t, std::size_t>> used;
  auto key = [&](std::size_t u, std::size_t v) {
    return dir ? std::make_pair(u, v) : std::make_pair(std::min(u, v), std::max(u, v));
  };
  std::vector<std::pair<std::size_t, std::size_t>> list;
  if (p.connected) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng_g.index(i + 1)]);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t u = order[rng_g.index(i)], v = order[i];
      if (rng_g.bernoulli(0.5)) std::swap(u, v);
      used.insert(key(u, v));
      list.emplace_back(u, v);
    }
  }
  while (list.size() < p.edges) {
    const std::size_t u = rng_g.index(n), v = rng_g.index(n);
    if (u == v || used.count(key(u, v))) continue;
    used.insert(key(u, v));
    list.emplace_back(u, v);
  }
  for (std::size_t e = 0; e < list.size(); ++e) {
    b.add_edge("e" + std::to_string(e), list[e].first, list[e].second);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (dir) {
      b.set_in_capacity(v, detail::random_family(b.in_degree(v), p.mix, p.max_weight, rng_c));
      b.set_out_capacity(v, detail::random_family(b.out_degree(v), p.mix, p.max_weight, rng_c));
    } else {
      b.set_capacity(v, detail::random_family(b.degree(v), p.mix, p.max_weight, rng_c));
    }
  }

  Instance inst{b.build(), {}};
  inst.demands.symmetric = p.symmetric;
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  const bool ordered = dir && !p.symmetric;
  while (inst.demands.pairs.size() < p.pairs) {
    const std::size_t s = rng_d.index(n), t = rng_d.index(n);
    if (s == t) continue;
    const auto k = ordered ? std::make_pair(s, t) : std::make_pair(std::min(s, t), std::max(s, t));
    if (!pairs.insert(k).second) continue;
    const double d = p.unit_demands ? 1.0 : static_cast<double>(rng_d.uniform_int(1, 3));
    inst.demands.pairs.push_back({s, t, d});
  }
  return inst;
}

// Star K_{1,n-1} with unit demand between every pair of nodes. The center
// caps every non-empty set of its edges at 1; each leaf is Modular with
// weight `leaf_weight`.
inline Instance star_instance(std::size_t n, double leaf_weight = 10.0) {
  if (n < 3) throw InputError("star instance needs n >= 3");
  NetworkBuilder b(Orientation::Undirected);
  b.add_node("c");
  for (std::size_t i = 1; i < n; ++i) b.add_node("l" + std::to_string(i));
  for (std::size_t i = 1; i < n; ++i) b.add_edge("e" + std::to_string(i), 0, i);
  b.set_capacity(0, UniformRankCap{1.0});
  for (std::size_t i = 1; i < n; ++i) b.set_capacity(i, Modular{{leaf_weight}});
  Instance inst{b.build(), {}};
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n; ++t) inst.demands.pairs.push_back({s, t, 1.0});
  }
  return inst;
}

}  // namespace polyflow
