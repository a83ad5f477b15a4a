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

// Helpers shared by the unit tests and the acceptance binary. Everything here
// is written independently of the library code it is used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "polyflow/lp.hpp"
#include "polyflow/network.hpp"
#include "polyflow/oracles.hpp"
#include "polyflow/relaxations.hpp"
#include "polyflow/rng.hpp"
#include "polyflow/submodular.hpp"

namespace polyflow::testing {

// Weighted coverage function plus a non-negative modular term: each element
// covers a random subset of `universe` items; rho(S) = weight of the union.
// Coverage functions are polymatroids, so the table is one too.
inline std::vector<double> coverage_table(std::size_t n, CounterRng& rng,
                                          std::size_t universe = 6) {
  std::vector<double> item_weight(universe);
  for (double& w : item_weight) w = static_cast<double>(rng.uniform_int(1, 4));
  std::vector<std::uint32_t> covers(n);
  std::vector<double> modular(n);
  for (std::size_t i = 0; i < n; ++i) {
    covers[i] = static_cast<std::uint32_t>(rng.uniform_int(1, (1 << universe) - 1));
    modular[i] = rng.bernoulli(0.3) ? static_cast<double>(rng.uniform_int(0, 2)) : 0.0;
  }
  std::vector<double> table(std::size_t{1} << n, 0.0);
  for (std::size_t s = 1; s < table.size(); ++s) {
    std::uint32_t u = 0;
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (s >> i & 1) {
        u |= covers[i];
        v += modular[i];
      }
    }
    for (std::size_t j = 0; j < universe; ++j) {
      if (u >> j & 1) v += item_weight[j];
    }
    table[s] = v;
  }
  return table;
}

inline SubmodularOracle coverage_oracle(std::size_t n, CounterRng& rng) {
  return SubmodularOracle(GroundSet::indexed(n), ExplicitTable{coverage_table(n, rng)});
}

inline std::vector<double> random_unit_vector(std::size_t n, CounterRng& rng) {
  std::vector<double> x(n);
  for (double& v : x) {
    // Mix exact ties, zeros and ones in with generic values.
    const int kind = static_cast<int>(rng.uniform_int(0, 5));
    v = kind == 0 ? 0.0 : kind == 1 ? 1.0 : kind == 2 ? 0.5 : rng.uniform01();
  }
  return x;
}

// Minimum of nu_g(F) over all 2^|F| assignments, evaluated from scratch.
inline double exhaustive_cut_cost(const PolymatroidalNetwork& net, const EdgeSet& f) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t choice = 0; choice < (std::size_t{1} << f.size()); ++choice) {
    std::vector<Mask> groups(net.num_oracles(), 0);
    for (std::size_t k = 0; k < f.size(); ++k) {
      const Edge& e = net.edge(f[k]);
      const std::size_t node = (choice >> k & 1) ? e.v : e.u;
      // Locate the oracle and slot from scratch rather than via EdgeEnd.
      std::size_t oracle;
      if (net.directed()) {
        oracle = node == e.v ? 2 * node : 2 * node + 1;
      } else {
        oracle = node;
      }
      const auto& slots = net.oracle_edges(oracle);
      const std::size_t slot =
          static_cast<std::size_t>(std::find(slots.begin(), slots.end(), f[k]) - slots.begin());
      groups[oracle] |= Mask{1} << slot;
    }
    double c = 0.0;
    for (std::size_t o = 0; o < groups.size(); ++o) c += net.oracle(o).eval_mask(groups[o]);
    best = std::min(best, c);
  }
  return best;
}

// Floyd-Warshall over the arc view of the network.
inline std::vector<std::vector<double>> floyd_warshall(std::size_t n,
                                                       const std::vector<Arc>& arcs) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0.0;
  for (const Arc& a : arcs) d[a.from][a.to] = std::min(d[a.from][a.to], a.length);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  return d;
}

// Classical edge-capacitated multicommodity flow for an all-Modular network:
// edge e carries at most min(w at u, w at v) in total. One variable per
// commodity and traversal direction, conservation at every node including the
// sink. Returns the throughput, or lambda when `concurrent`. Non-symmetric
// demands only.
inline double classical_multicommodity(const PolymatroidalNetwork& net, const DemandSet& d,
                                       bool concurrent) {
  lp::LinearProgram prog(lp::Sense::Maximize);
  const std::size_t m = net.num_edges(), n = net.num_nodes();
  std::vector<double> cap(m);
  for (std::size_t e = 0; e < m; ++e) {
    double c = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 2; ++k) {
      const EdgeEnd& end = net.end(e, k);
      c = std::min(c, std::get<Modular>(net.oracle(end.oracle).family()).weights[end.slot]);
    }
    cap[e] = c;
  }
  const std::size_t dirs = net.directed() ? 1 : 2;
  const std::size_t lambda = concurrent ? prog.add_variable(0.0, lp::kInf, 1.0) : 0;
  std::vector<std::vector<lp::Term>> usage(m);
  for (const DemandPair& p : d.pairs) {
    if (concurrent && !(p.demand > 0.0)) continue;
    std::vector<std::vector<lp::Term>> balance(n);
    for (std::size_t e = 0; e < m; ++e) {
      for (std::size_t k = 0; k < dirs; ++k) {
        const std::size_t x = prog.add_variable(0.0, lp::kInf, 0.0);
        const std::size_t from = k == 0 ? net.edge(e).u : net.edge(e).v;
        const std::size_t to = k == 0 ? net.edge(e).v : net.edge(e).u;
        balance[from].push_back({x, 1.0});
        balance[to].push_back({x, -1.0});
        usage[e].push_back({x, 1.0});
      }
    }
    std::size_t rate = 0;
    if (!concurrent) rate = prog.add_variable(0.0, lp::kInf, 1.0);
    for (std::size_t v = 0; v < n; ++v) {
      auto row = balance[v];
      if (v == p.s || v == p.t) {
        const double sign = v == p.s ? -1.0 : 1.0;
        if (concurrent) {
          row.push_back({lambda, sign * p.demand});
        } else {
          row.push_back({rate, sign});
        }
      }
      if (!row.empty()) prog.add_constraint(row, lp::Relation::Equal, 0.0);
    }
  }
  for (std::size_t e = 0; e < m; ++e) {
    if (!usage[e].empty()) prog.add_constraint(usage[e], lp::Relation::LessEqual, cap[e]);
  }
  const lp::LpSolution sol = lp::solve_lp(prog);
  if (sol.status != lp::LpStatus::Optimal) return std::numeric_limits<double>::infinity();
  return sol.objective;
}

// Line-key assignment cost at threshold theta, from the definition: an edge
// whose endpoints fall on different sides of theta (low side g <= theta) goes
// to its low endpoint x iff theta < g(x) + (l(e,x)/l(e)) (g(y) - g(x)).
// With `leaving`, only edges directed from the low to the high side count.
inline double line_key_cost(const PolymatroidalNetwork& net, const FractionalCutMetric& m,
                            const std::vector<double>& g, double theta,
                            const std::vector<bool>& edge_on, bool leaving = false) {
  std::vector<std::vector<std::size_t>> groups(net.num_oracles());
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    if (!edge_on.empty() && !edge_on[e]) continue;
    const Edge& ed = net.edge(e);
    std::size_t x = ed.u, y = ed.v;
    if (g[y] < g[x]) {
      if (leaving) continue;
      std::swap(x, y);
    }
    if (!(g[x] <= theta && theta < g[y])) continue;
    const double frac = m.length[e] > 0.0 ? m.split_at(net, e, x) / m.length[e] : 0.5;
    const std::size_t owner = theta < g[x] + frac * (g[y] - g[x]) ? x : y;
    std::size_t oracle;
    if (net.directed()) {
      oracle = owner == ed.v ? 2 * owner : 2 * owner + 1;
    } else {
      oracle = owner;
    }
    const auto& slots = net.oracle_edges(oracle);
    groups[oracle].push_back(
        static_cast<std::size_t>(std::find(slots.begin(), slots.end(), e) - slots.begin()));
  }
  double c = 0.0;
  for (std::size_t o = 0; o < groups.size(); ++o) {
    if (!groups[o].empty()) c += net.oracle(o).eval(groups[o]);
  }
  return c;
}

// Both sides of the region-growing inequality for the ball of radius r around
// s in the subgraph of live nodes and edges, recomputed from scratch.
struct BallCheck {
  std::vector<std::size_t> ball;
  double lhs = 0.0;
  double rhs = 0.0;
};

inline BallCheck check_ball(const PolymatroidalNetwork& net, const FractionalCutMetric& m,
                            std::size_t s, double r, double delta, double k_eff,
                            const std::vector<bool>& node_on, const std::vector<bool>& edge_on_in,
                            double a = 28.0) {
  const std::size_t n = net.num_nodes();
  std::vector<bool> edge_on(net.num_edges());
  std::vector<Arc> arcs;
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    const Edge& ed = net.edge(e);
    edge_on[e] = edge_on_in[e] && node_on[ed.u] && node_on[ed.v];
    if (!edge_on[e]) continue;
    arcs.push_back({ed.u, ed.v, m.length[e], e});
    arcs.push_back({ed.v, ed.u, m.length[e], e});
  }
  const std::vector<double> g = floyd_warshall(n, arcs)[s];
  BallCheck out;
  double vol_ball = 0.0, vol_all = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!node_on[v]) continue;
    const auto& slots = net.oracle_edges(v);
    std::vector<double> x(slots.size(), 0.0);
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (edge_on[slots[i]]) x[i] = m.split_at(net, slots[i], v);
    }
    const double vol = lovasz_extension_nonneg(net.oracle(v), x);
    vol_all += vol;
    if (g[v] <= r) {
      vol_ball += vol;
      out.ball.push_back(v);
    }
  }
  out.lhs = line_key_cost(net, m, g, r, edge_on);
  out.rhs = a * std::log2(k_eff) / delta * (vol_ball + vol_all / k_eff);
  return out;
}

// Long cycle with a spread-out feasible multicut metric, so that region growing
// has work to do: relaxation optima on small graphs put whole units of length
// on a few edges, and F_0 alone then separates everything. Pairs are at least
// n/3 hops apart; every edge gets length 1/h for the smallest pair hop count h
// and a random split.
struct SpreadCase {
  PolymatroidalNetwork network;
  DemandSet demands;
  FractionalCutMetric metric;
};

inline SpreadCase spread_cycle(std::size_t n, std::size_t k, std::uint64_t seed) {
  CounterRng rng = CounterRng(seed).split("spread-cycle");
  NetworkBuilder b(Orientation::Undirected);
  for (std::size_t v = 0; v < n; ++v) b.add_node("v" + std::to_string(v));
  for (std::size_t v = 0; v < n; ++v) b.add_edge("e" + std::to_string(v), v, (v + 1) % n);
  for (std::size_t v = 0; v < n; ++v) b.set_capacity(v, detail::random_family(2, FamilyMix{}, 4, rng));
  DemandSet d;
  std::size_t h = n;
  while (d.pairs.size() < k) {
    const std::size_t s = rng.index(n), t = rng.index(n);
    const std::size_t hops = std::min((s + n - t) % n, (t + n - s) % n);
    if (3 * hops < n) continue;
    bool dup = false;
    for (const auto& p : d.pairs) dup = dup || (p.s == s && p.t == t) || (p.s == t && p.t == s);
    if (dup) continue;
    d.pairs.push_back({s, t, 1.0});
    h = std::min(h, hops);
  }
  PolymatroidalNetwork net = b.build();
  FractionalCutMetric m;
  for (std::size_t e = 0; e < n; ++e) {
    const double l = 1.0 / static_cast<double>(h);
    const double r = rng.uniform01();
    m.length.push_back(l);
    m.split.push_back({r * l, l - r * l});
  }
  m.objective = metric_objective(net, m);
  return {std::move(net), std::move(d), std::move(m)};
}

}  // namespace polyflow::testing
