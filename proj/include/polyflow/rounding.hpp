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

// Rounding of fractional cut metrics on undirected networks: threshold cuts
// of line embeddings for sparsest cut, region growing for multicut, and the
// conversion of an arbitrary edge cut into a bi-partition cut.
//
// All three price a threshold cut with the "line-key" assignment. For an
// edge e = uv cut at threshold theta with g(u) < g(v), let
// r = l(e,u) / l(e) and key = g(u) + r * (g(v) - g(u)); e goes to u when
// theta < key and to v otherwise. Integrated over theta, the cost of this
// assignment is at most twice the metric's objective.
//
// log means log2 throughout.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyflow/error.hpp"
#include "polyflow/graph.hpp"
#include "polyflow/network.hpp"
#include "polyflow/relaxations.hpp"
#include "polyflow/rng.hpp"
#include "polyflow/submodular.hpp"

namespace polyflow {

inline constexpr double kRegionGrowingA = 28.0;
inline constexpr std::size_t kNoNode = static_cast<std::size_t>(-1);

// Subgraph of still-present nodes and edges. An empty mask means "all".
struct ActiveSubgraph {
  std::vector<bool> nodes;
  std::vector<bool> edges;

  static ActiveSubgraph all(const PolymatroidalNetwork& net) {
    return {std::vector<bool>(net.num_nodes(), true), std::vector<bool>(net.num_edges(), true)};
  }
  bool node(std::size_t v) const { return nodes.empty() || nodes[v]; }
  bool edge(std::size_t e) const { return edges.empty() || edges[e]; }
};

// ---------------------------------------------------------------------------
// Line-key assignment

enum class CutSense {
  Both,     // undirected: edges with one endpoint on each side
  Leaving,  // directed: arcs from {g <= theta} to {g > theta}
};

// Endpoint receiving e at threshold theta, or kNoNode when e is not cut.
// Sides are {g <= theta} and {g > theta}.
inline std::size_t line_key_owner(const PolymatroidalNetwork& net, const FractionalCutMetric& m,
                                  const std::vector<double>& g, std::size_t e, double theta,
                                  CutSense sense = CutSense::Both) {
  const Edge& ed = net.edge(e);
  std::size_t lo = ed.u, hi = ed.v;
  int lo_end = 0;
  if (g[hi] < g[lo]) {
    if (sense == CutSense::Leaving) return kNoNode;
    std::swap(lo, hi);
    lo_end = 1;
  }
  if (!(g[lo] <= theta && theta < g[hi])) return kNoNode;
  const double len = m.length[e];
  const double r = len > 0.0 ? m.split[e][lo_end] / len : 0.5;
  const double key = g[lo] + r * (g[hi] - g[lo]);
  return theta < key ? lo : hi;
}

struct AssignedCut {
  EdgeSet edges;
  std::vector<std::size_t> owners;
  double cost = 0.0;
};

inline AssignedCut line_key_cut(const PolymatroidalNetwork& net, const FractionalCutMetric& m,
                                const std::vector<double>& g, double theta,
                                CutSense sense = CutSense::Both,
                                const ActiveSubgraph& active = {}) {
  AssignedCut out;
  std::vector<Mask> groups(net.num_oracles(), 0);
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    if (!active.edge(e)) continue;
    const std::size_t owner = line_key_owner(net, m, g, e, theta, sense);
    if (owner == kNoNode) continue;
    out.edges.push_back(e);
    out.owners.push_back(owner);
    const EdgeEnd& end = net.end_at(e, owner);
    groups[end.oracle] |= Mask{1} << end.slot;
  }
  for (std::size_t o = 0; o < groups.size(); ++o) {
    if (groups[o]) out.cost += net.oracle(o).eval_unchecked(groups[o]);
  }
  return out;
}

// Thresholds where the line-key cut can change: node coordinates and keys.
inline std::vector<double> line_key_breakpoints(const PolymatroidalNetwork& net,
                                                const FractionalCutMetric& m,
                                                const std::vector<double>& g,
                                                const ActiveSubgraph& active = {}) {
  std::vector<double> pts;
  for (std::size_t v = 0; v < net.num_nodes(); ++v) {
    if (active.node(v) && std::isfinite(g[v])) pts.push_back(g[v]);
  }
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    if (!active.edge(e)) continue;
    const Edge& ed = net.edge(e);
    if (!std::isfinite(g[ed.u]) || !std::isfinite(g[ed.v]) || g[ed.u] == g[ed.v]) continue;
    const bool u_low = g[ed.u] < g[ed.v];
    const double glo = u_low ? g[ed.u] : g[ed.v], ghi = u_low ? g[ed.v] : g[ed.u];
    const double len = m.length[e];
    const double r = len > 0.0 ? m.split[e][u_low ? 0 : 1] / len : 0.5;
    pts.push_back(glo + r * (ghi - glo));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Exact integral over [a, b] of the line-key cut cost; the integrand is
// piecewise constant between breakpoints, so each piece is evaluated once.
inline double line_key_integral(const PolymatroidalNetwork& net, const FractionalCutMetric& m,
                                const std::vector<double>& g, double a, double b,
                                CutSense sense = CutSense::Both,
                                const ActiveSubgraph& active = {}) {
  if (!(a <= b)) throw InputError("integration interval is empty");
  std::vector<double> pts{a, b};
  for (double p : line_key_breakpoints(net, m, g, active)) {
    if (p > a && p < b) pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double w = pts[i + 1] - pts[i];
    if (w <= 0.0) continue;
    total += w * line_key_cut(net, m, g, 0.5 * (pts[i] + pts[i + 1]), sense, active).cost;
  }
  return total;
}

// Right-hand side of the refined bound: twice the volume of the nodes whose
// coordinate lies in [a0, b0], the hull of [a, b] and every endpoint of an
// edge cut somewhere in [a, b].
struct RefinedBound {
  double a0 = 0.0;
  double b0 = 0.0;
  double bound = 0.0;
};

inline RefinedBound line_key_refined_bound(const PolymatroidalNetwork& net,
                                           const FractionalCutMetric& m,
                                           const std::vector<double>& g, double a, double b) {
  RefinedBound r{a, b, 0.0};
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    const Edge& ed = net.edge(e);
    const double lo = std::min(g[ed.u], g[ed.v]), hi = std::max(g[ed.u], g[ed.v]);
    if (lo < hi && lo <= b && hi >= a) {
      r.a0 = std::min(r.a0, lo);
      r.b0 = std::max(r.b0, hi);
    }
  }
  for (std::size_t v = 0; v < net.num_nodes(); ++v) {
    if (g[v] >= r.a0 && g[v] <= r.b0) r.bound += 2.0 * node_volume(net, m, v);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Line embeddings

struct WeightedPair {
  std::size_t u;
  std::size_t v;
  double weight;
};

// Demand pairs as embedding weights; symmetric pairs count once per direction.
inline std::vector<WeightedPair> demand_weights(const DemandSet& d) {
  std::vector<WeightedPair> w;
  for (const Commodity& c : commodities(d)) {
    if (c.demand > 0.0) w.push_back({c.s, c.t, c.demand});
  }
  return w;
}

struct LineEmbedding {
  std::vector<double> g;  // coordinates in [0, beta]
  double beta = 0.0;
  double avgd = kInfinity;  // sum w d / sum w |g(u) - g(v)|
  std::string source;       // "frechet" (random anchor set) or "terminal"
  std::size_t anchor_size = 0;
  std::uint64_t seed = 0;
  std::size_t candidates = 0;
};

inline double average_distortion(const std::vector<std::vector<double>>& dist,
                                 const std::vector<WeightedPair>& pairs,
                                 const std::vector<double>& g) {
  double num = 0.0, den = 0.0;
  for (const auto& p : pairs) {
    num += p.weight * dist[p.u][p.v];
    den += p.weight * std::abs(g[p.u] - g[p.v]);
  }
  return den > 0.0 ? num / den : kInfinity;
}

inline bool is_contraction(const std::vector<std::vector<double>>& dist,
                           const std::vector<double>& g, double tol = 1e-9) {
  for (std::size_t u = 0; u < g.size(); ++u) {
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (std::abs(g[u] - g[v]) > dist[u][v] + tol * (1.0 + dist[u][v])) return false;
    }
  }
  return true;
}

// Best contraction among distance-to-anchor-set coordinates (anchor sizes
// 2^j for j = 0..ceil(log n), `trials` random sets per size) and
// distance-from-terminal coordinates. Infinite distances are capped at one
// plus twice the largest finite distance, which keeps the metric a metric.
inline LineEmbedding line_embed(std::vector<std::vector<double>> dist,
                                const std::vector<WeightedPair>& pairs, std::size_t trials,
                                std::uint64_t seed) {
  const std::size_t n = dist.size();
  for (const auto& row : dist) {
    if (row.size() != n) throw InputError("distance matrix must be square");
  }
  double max_finite = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (std::isnan(dist[u][v]) || dist[u][v] < 0.0) {
        throw InputError("distances must be non-negative");
      }
      if (std::abs(dist[u][v] - dist[v][u]) > 1e-9 * (1.0 + std::abs(dist[u][v])) &&
          std::isfinite(dist[u][v])) {
        throw InputError("distances must be symmetric");
      }
      if (std::isfinite(dist[u][v])) max_finite = std::max(max_finite, dist[u][v]);
    }
  }
  const double cap = 1.0 + 2.0 * max_finite;
  for (auto& row : dist) {
    for (double& x : row) x = std::min(x, cap);
  }
  double weighted = 0.0;
  for (const auto& p : pairs) {
    if (p.u >= n || p.v >= n || !(p.weight >= 0.0)) throw InputError("bad weighted pair");
    weighted += p.weight * dist[p.u][p.v];
  }
  if (!(weighted > 0.0)) throw InputError("pairs carry zero total weighted distance");

  LineEmbedding best;
  best.seed = seed;
  auto consider = [&](std::vector<double> g, const char* source, std::size_t anchors) {
    ++best.candidates;
    const double a = average_distortion(dist, pairs, g);
    if (a < best.avgd) {
      best.avgd = a;
      best.g = std::move(g);
      best.source = source;
      best.anchor_size = anchors;
    }
  };
  const CounterRng root = CounterRng(seed).split("line_embed");
  std::size_t levels = 0;
  while ((std::size_t{1} << levels) < n) ++levels;
  for (std::size_t j = 0; j <= levels; ++j) {
    const std::size_t size = std::min(n, std::size_t{1} << j);
    for (std::size_t t = 0; t < trials; ++t) {
      CounterRng rng = root.split(j).split(t);
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      for (std::size_t i = 0; i < size; ++i) std::swap(perm[i], perm[i + rng.index(n - i)]);
      std::vector<double> g(n, kInfinity);
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t i = 0; i < size; ++i) g[u] = std::min(g[u], dist[u][perm[i]]);
      }
      consider(std::move(g), "frechet", size);
    }
  }
  std::vector<std::size_t> terminals;
  for (const auto& p : pairs) {
    if (p.weight > 0.0) {
      terminals.push_back(p.u);
      terminals.push_back(p.v);
    }
  }
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  for (std::size_t s : terminals) consider(dist[s], "terminal", 1);

  if (best.g.empty()) throw InputError("no embedding separates any weighted pair");
  const double lo = *std::min_element(best.g.begin(), best.g.end());
  for (double& x : best.g) x -= lo;
  best.beta = *std::max_element(best.g.begin(), best.g.end());
  return best;
}

// ---------------------------------------------------------------------------
// Sweep over threshold cuts

struct RoundingOptions {
  CutOptions cut;  // exact nu for cuts up to cut.max_edges edges
};

struct SweepCandidate {
  double theta = 0.0;
  std::size_t cut_edges = 0;
  double cost = 0.0;
  bool exact = false;     // true nu; otherwise the best line-key assignment
  double crossing = 0.0;  // demand across S_theta
};

struct SweepResult {
  CutSolution cut;         // delta(S), with its full separation record
  std::vector<bool> side;  // S = {g <= theta}
  double theta = 0.0;
  bool exact = false;
  double crossing = 0.0;
  std::vector<SweepCandidate> candidates;

  // nu(delta(S)) over the demand crossing S. At least cut.sparsity().
  double sparsity() const { return cut.cost / crossing; }
};

inline SweepResult sweep_sparsest_cut(const PolymatroidalNetwork& net,
                                      const FractionalCutMetric& metric, const DemandSet& demands,
                                      const LineEmbedding& emb, const RoundingOptions& opts = {}) {
  if (net.directed()) throw InputError("sweep rounding applies to undirected networks");
  validate_demands(net, demands);
  const std::vector<double>& g = emb.g;
  if (g.size() != net.num_nodes()) throw InputError("embedding does not match network");
  std::vector<double> levels(g);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  SweepResult best;
  double best_sparsity = kInfinity;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const double theta = 0.5 * (levels[i] + levels[i + 1]);
    std::vector<bool> side(net.num_nodes());
    for (std::size_t v = 0; v < net.num_nodes(); ++v) side[v] = g[v] <= theta;
    EdgeSet f;
    for (std::size_t e = 0; e < net.num_edges(); ++e) {
      if (side[net.edge(e).u] != side[net.edge(e).v]) f.push_back(e);
    }
    SweepCandidate cand;
    cand.theta = theta;
    cand.cut_edges = f.size();
    CutSolution sol;
    if (f.size() <= opts.cut.max_edges) {
      sol = evaluate_cut(net, f, demands, opts.cut);
      cand.exact = true;
    } else {
      // Same cut on the whole open interval; the assignment varies with
      // theta, so take the cheapest piece.
      std::vector<double> pts{levels[i], levels[i + 1]};
      for (double p : line_key_breakpoints(net, metric, g)) {
        if (p > levels[i] && p < levels[i + 1]) pts.push_back(p);
      }
      std::sort(pts.begin(), pts.end());
      AssignedCut cheapest;
      cheapest.cost = kInfinity;
      for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
        AssignedCut c = line_key_cut(net, metric, g, 0.5 * (pts[j] + pts[j + 1]));
        if (c.cost < cheapest.cost) cheapest = std::move(c);
      }
      sol = evaluate_assigned_cut(net, cheapest.edges, cheapest.owners, demands);
    }
    cand.cost = sol.cost;
    cand.crossing = crossing_demand(side, demands);
    best.candidates.push_back(cand);
    if (cand.crossing > 0.0 && cand.cost / cand.crossing < best_sparsity) {
      best_sparsity = cand.cost / cand.crossing;
      best.cut = std::move(sol);
      best.side = side;
      best.theta = theta;
      best.exact = cand.exact;
      best.crossing = cand.crossing;
    }
  }
  if (!std::isfinite(best_sparsity)) {
    throw UndefinedSparsityError("no threshold cut separates positive demand");
  }
  return best;
}

// ---------------------------------------------------------------------------
// Region growing

// Shortest-path distances from s inside the active subgraph.
inline std::vector<double> active_distances(const PolymatroidalNetwork& net,
                                            const std::vector<double>& length, std::size_t s,
                                            const ActiveSubgraph& active) {
  const Digraph arcs = net.arc_graph(&length);
  return arcs.distances(s, [&](std::size_t a) {
    const std::size_t e = arcs.arc(a).tag;
    const Edge& ed = net.edge(e);
    return active.edge(e) && active.node(ed.u) && active.node(ed.v);
  });
}

// vol of v in the active subgraph: the extension of v's split vector with
// inactive edges zeroed.
inline double active_volume(const PolymatroidalNetwork& net, const FractionalCutMetric& m,
                            std::size_t v, const ActiveSubgraph& active) {
  const std::size_t o = net.node_oracle(v);
  std::vector<double> x = split_vector(net, m, o);
  const auto& slots = net.oracle_edges(o);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Edge& ed = net.edge(slots[i]);
    if (!active.edge(slots[i]) || !active.node(ed.u) || !active.node(ed.v)) x[i] = 0.0;
  }
  return lovasz_extension_nonneg(net.oracle(o), x);
}

struct BallResult {
  double radius = 0.0;
  std::vector<std::size_t> ball;          // nodes within radius, ascending
  EdgeSet cut;                            // active edges leaving the ball
  std::vector<std::size_t> owners;        // line-key assignment of `cut`
  double cost_bound = 0.0;                // nu_g of that assignment
  double ball_volume = 0.0;
  double total_volume = 0.0;              // vol of the whole active subgraph
  double rhs = 0.0;                       // a log(k) / delta (vol(B) + vol(V')/k)
  std::size_t shell = 0;                  // shell index used; 0 after a full scan
};

// Finds r in [0, delta) with
//   nu_g(delta(B(s, r))) <= a log(k) / delta * (vol(B(s, r)) + vol(V') / k),
// a = 28, where nu_g is the line-key assignment for g = dist(s, .). Requires
// every active edge to be shorter than delta / (2 log k).
inline BallResult region_grow_ball(const PolymatroidalNetwork& net, const FractionalCutMetric& m,
                                   std::size_t s, double delta, double k_eff,
                                   const ActiveSubgraph& active = {}) {
  if (net.directed()) throw InputError("region growing applies to undirected networks");
  if (!(k_eff >= 2.0)) throw ContractError("region growing needs k >= 2");
  if (!(delta > 0.0 && delta < 1.0)) throw ContractError("region growing needs 0 < delta < 1");
  if (s >= net.num_nodes() || !active.node(s)) throw ContractError("source is not active");
  const double log_k = std::log2(k_eff);
  const double step = delta / (2.0 * log_k);
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    const Edge& ed = net.edge(e);
    if (active.edge(e) && active.node(ed.u) && active.node(ed.v) && !(m.length[e] < step)) {
      throw ContractError("edge " + ed.id + " is not shorter than delta / (2 log k)");
    }
  }
  const std::vector<double> g = active_distances(net, m.length, s, active);
  std::vector<double> vol(net.num_nodes(), 0.0);
  double total = 0.0;
  for (std::size_t v = 0; v < net.num_nodes(); ++v) {
    if (!active.node(v)) continue;
    vol[v] = active_volume(net, m, v, active);
    total += vol[v];
  }
  auto ball_volume = [&](double r) {
    double z = 0.0;
    for (std::size_t v = 0; v < net.num_nodes(); ++v) {
      if (active.node(v) && g[v] <= r) z += vol[v];
    }
    return z;
  };
  const double alpha0 = total / k_eff;
  auto alpha = [&](long i) { return i <= 0 ? alpha0 : alpha0 + ball_volume(i * step); };
  const double factor = kRegionGrowingA * log_k / delta;
  const std::vector<double> breaks = line_key_breakpoints(net, m, g, active);

  auto attempt = [&](double r, BallResult& out) {
    const AssignedCut c = line_key_cut(net, m, g, r, CutSense::Both, active);
    const double vb = ball_volume(r);
    const double rhs = factor * (vb + alpha0);
    if (c.cost > rhs * (1.0 + 1e-9) + 1e-12) return false;
    out.radius = r;
    out.ball.clear();
    for (std::size_t v = 0; v < net.num_nodes(); ++v) {
      if (active.node(v) && g[v] <= r) out.ball.push_back(v);
    }
    out.cut = c.edges;
    out.owners = c.owners;
    out.cost_bound = c.cost;
    out.ball_volume = vb;
    out.total_volume = total;
    out.rhs = rhs;
    return true;
  };
  auto scan = [&](double lo, double hi, bool hi_inclusive, BallResult& out) {
    if (attempt(lo, out)) return true;
    for (double b : breaks) {
      if (b > lo && (b < hi || (hi_inclusive && b == hi)) && attempt(b, out)) return true;
    }
    return false;
  };

  BallResult out;
  for (long j = 1; static_cast<double>(j) * step < delta; ++j) {
    if (alpha(j + 1) > 8.0 * alpha(j - 2)) continue;
    if (scan(static_cast<double>(j - 1) * step, static_cast<double>(j) * step, true, out)) {
      out.shell = static_cast<std::size_t>(j);
      return out;
    }
  }
  if (scan(0.0, delta, false, out)) {
    out.shell = 0;
    return out;
  }
  throw InternalError("region growing found no admissible radius");
}

// ---------------------------------------------------------------------------
// Multicut rounding

struct BallStep {
  std::size_t pair = 0;
  std::size_t source = 0;
  ActiveSubgraph before;  // subgraph the ball was grown in
  BallResult ball;
};

struct MulticutRounding {
  CutSolution cut;
  EdgeSet initial;                       // F_0: edges with l(e) >= 1 / (4 log k)
  std::vector<std::size_t> initial_owners;
  double initial_cost = 0.0;             // nu_g(F_0) under the larger-split assignment
  std::vector<BallStep> steps;
  double k_eff = 2.0;
  double log_k = 1.0;
  double scale = 1.0;      // factor applied to the metric before rounding
  double objective = 0.0;  // objective of the scaled metric
  double bound = 0.0;      // (8 + 4a) log(k) * objective
  bool exact = false;       // cut.cost is nu(F) rather than an assignment cost
};

// Scales the metric by `f`: splits, lengths and subset weights all scale, so
// the objective scales too.
inline FractionalCutMetric scaled_metric(const FractionalCutMetric& m, double f) {
  FractionalCutMetric s = m;
  for (double& l : s.length) l *= f;
  for (auto& sp : s.split) {
    sp[0] *= f;
    sp[1] *= f;
  }
  for (auto& w : s.subset_weights) {
    for (double& x : w) x *= f;
  }
  s.objective *= f;
  s.lp_objective *= f;
  return s;
}

inline MulticutRounding round_multicut(const PolymatroidalNetwork& net,
                                       const FractionalCutMetric& metric_in,
                                       const DemandSet& demands, const RoundingOptions& opts = {}) {
  if (net.directed()) throw InputError("region-growing multicut applies to undirected networks");
  validate_demands(net, demands);
  MulticutRounding out;
  const std::size_t k = demands.size();
  out.k_eff = std::max<double>(static_cast<double>(k), 2.0);
  out.log_k = std::log2(out.k_eff);
  if (k == 0) {
    out.cut = evaluate_cut(net, {}, demands, opts.cut);
    out.exact = true;
    return out;
  }

  // Pair distances must reach 1 (1/2 for symmetric demands, whose relaxation
  // only asks dist + dist' >= 1). Rounding noise just below that is scaled away.
  const auto dist = shortest_distances(net, metric_in.length);
  double min_pair = kInfinity;
  for (const auto& p : demands.pairs) min_pair = std::min(min_pair, dist[p.s][p.t]);
  const double need = demands.symmetric ? 0.5 : 1.0;
  if (min_pair < need * (1.0 - 1e-6)) {
    throw ContractError("metric leaves a demand pair closer than the relaxation allows");
  }
  out.scale = std::isfinite(min_pair) && min_pair < 1.0 ? 1.0 / min_pair : 1.0;
  const FractionalCutMetric m = out.scale == 1.0 ? metric_in : scaled_metric(metric_in, out.scale);
  out.objective = metric_objective(net, m);
  out.bound = (8.0 + 4.0 * kRegionGrowingA) * out.log_k * out.objective;

  ActiveSubgraph g1 = ActiveSubgraph::all(net);
  std::vector<std::size_t> owner(net.num_edges(), kNoNode);
  const double threshold = 1.0 / (4.0 * out.log_k);
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    if (m.length[e] >= threshold) {
      out.initial.push_back(e);
      const Edge& ed = net.edge(e);
      owner[e] = m.split[e][1] > m.split[e][0] ? ed.v : ed.u;
      out.initial_owners.push_back(owner[e]);
      g1.edges[e] = false;
    }
  }
  out.initial_cost = assignment_cost(net, out.initial, out.initial_owners);

  const double delta = 0.5;
  for (;;) {
    DisjointSets comps(net.num_nodes());
    for (std::size_t e = 0; e < net.num_edges(); ++e) {
      const Edge& ed = net.edge(e);
      if (g1.edges[e] && g1.nodes[ed.u] && g1.nodes[ed.v]) comps.unite(ed.u, ed.v);
    }
    std::size_t pick = kNoNode;
    for (std::size_t i = 0; i < k && pick == kNoNode; ++i) {
      const auto& p = demands.pairs[i];
      if (g1.nodes[p.s] && g1.nodes[p.t] && comps.find(p.s) == comps.find(p.t)) pick = i;
    }
    if (pick == kNoNode) break;
    BallStep step;
    step.pair = pick;
    step.source = demands.pairs[pick].s;
    step.before = g1;
    step.ball = region_grow_ball(net, m, step.source, delta, out.k_eff, g1);
    for (std::size_t i = 0; i < step.ball.cut.size(); ++i) {
      owner[step.ball.cut[i]] = step.ball.owners[i];
    }
    for (std::size_t v : step.ball.ball) {
      g1.nodes[v] = false;
      for (std::size_t e : net.incident_edges(v)) g1.edges[e] = false;
    }
    out.steps.push_back(std::move(step));
  }

  EdgeSet f;
  std::vector<std::size_t> owners;
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    if (owner[e] != kNoNode) {
      f.push_back(e);
      owners.push_back(owner[e]);
    }
  }
  if (f.size() <= opts.cut.max_edges) {
    out.cut = evaluate_cut(net, f, demands, opts.cut);
    out.exact = true;
  } else {
    out.cut = evaluate_assigned_cut(net, f, owners, demands);
  }
  if (!out.cut.separation.all_cut()) throw InternalError("region growing left a pair connected");
  return out;
}

// ---------------------------------------------------------------------------
// Bi-partition cuts

struct BipartitionResult {
  std::vector<bool> side;  // S
  CutSolution cut;         // delta(S)
  std::size_t components = 0;
  double separated = 0.0;  // D(F)
  double crossing = 0.0;   // demand across S
  std::string method;      // "exhaustive_sparsity", "exhaustive_max_cut" or "local_search"

  double sparsity() const { return cut.cost / crossing; }
};

inline std::size_t kBipartitionSparsityLimit = 12;
inline std::size_t kBipartitionMaxCutLimit = 20;

// Groups the components of G - F into two sides so that at least half of
// D(F) crosses, and returns S = union of one side. delta(S) is a subset of F
// and at least D(F)/2 crosses S, so nu(delta(S)) / crossing is at most twice
// the sparsity of F.
inline BipartitionResult to_bipartition_cut(const PolymatroidalNetwork& net, EdgeSet f,
                                            const DemandSet& demands,
                                            const RoundingOptions& opts = {}) {
  if (net.directed()) throw InputError("bi-partition cuts are defined on undirected networks");
  validate_demands(net, demands);
  f = normalize_edges(net, std::move(f));
  const std::vector<bool> removed = edge_indicator(net, f);
  DisjointSets ds(net.num_nodes());
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    if (!removed[e]) ds.unite(net.edge(e).u, net.edge(e).v);
  }
  std::vector<std::size_t> comp(net.num_nodes());
  std::vector<std::size_t> root_to_comp(net.num_nodes(), kNoNode);
  std::size_t h = 0;
  for (std::size_t v = 0; v < net.num_nodes(); ++v) {
    const std::size_t r = ds.find(v);
    if (root_to_comp[r] == kNoNode) root_to_comp[r] = h++;
    comp[v] = root_to_comp[r];
  }
  std::vector<std::vector<double>> w(h, std::vector<double>(h, 0.0));
  double total = 0.0;
  for (const Commodity& c : commodities(demands)) {
    const std::size_t a = comp[c.s], b = comp[c.t];
    if (a == b || !(c.demand > 0.0)) continue;
    w[a][b] += c.demand;
    w[b][a] += c.demand;
    total += c.demand;
  }
  if (!(total > 0.0)) throw InputError("edge set separates no demand");

  auto crossing = [&](const std::vector<bool>& in_a) {
    double z = 0.0;
    for (std::size_t a = 0; a < h; ++a) {
      for (std::size_t b = a + 1; b < h; ++b) {
        if (in_a[a] != in_a[b]) z += w[a][b];
      }
    }
    return z;
  };
  auto from_bits = [&](std::uint64_t bits) {
    std::vector<bool> in_a(h, false);
    in_a[0] = true;
    for (std::size_t c = 1; c < h; ++c) in_a[c] = bits >> (c - 1) & 1;
    return in_a;
  };
  auto realize = [&](const std::vector<bool>& in_a) {
    BipartitionResult r;
    r.side.resize(net.num_nodes());
    for (std::size_t v = 0; v < net.num_nodes(); ++v) r.side[v] = in_a[comp[v]];
    EdgeSet cut;
    for (std::size_t e = 0; e < net.num_edges(); ++e) {
      if (r.side[net.edge(e).u] != r.side[net.edge(e).v]) cut.push_back(e);
    }
    r.cut = evaluate_cut(net, cut, demands, opts.cut);
    r.crossing = crossing(in_a);
    return r;
  };

  BipartitionResult best;
  const double half = 0.5 * total * (1.0 - 1e-12);
  if (h <= kBipartitionSparsityLimit) {
    double best_sparsity = kInfinity;
    for (std::uint64_t bits = 0; bits + 1 < (std::uint64_t{1} << (h - 1)); ++bits) {
      const auto in_a = from_bits(bits);
      if (crossing(in_a) < half) continue;
      BipartitionResult r = realize(in_a);
      const double sp = r.sparsity();
      if (sp < best_sparsity) {
        best_sparsity = sp;
        best = std::move(r);
      }
    }
    best.method = "exhaustive_sparsity";
  } else if (h <= kBipartitionMaxCutLimit) {
    std::uint64_t best_bits = 0;
    double best_w = -1.0;
    for (std::uint64_t bits = 0; bits + 1 < (std::uint64_t{1} << (h - 1)); ++bits) {
      const double z = crossing(from_bits(bits));
      if (z > best_w) {
        best_w = z;
        best_bits = bits;
      }
    }
    best = realize(from_bits(best_bits));
    best.method = "exhaustive_max_cut";
  } else {
    // Greedy placement, then single flips until none improves: a local
    // optimum of max-cut carries at least half the weight.
    std::vector<bool> in_a(h, false);
    in_a[0] = true;
    for (std::size_t c = 1; c < h; ++c) {
      double to_a = 0.0, to_b = 0.0;
      for (std::size_t d = 0; d < c; ++d) (in_a[d] ? to_a : to_b) += w[c][d];
      in_a[c] = to_b > to_a;  // join the side it has less demand with
    }
    for (bool improved = true; improved;) {
      improved = false;
      for (std::size_t c = 0; c < h; ++c) {
        double same = 0.0, other = 0.0;
        for (std::size_t d = 0; d < h; ++d) {
          if (d != c) (in_a[d] == in_a[c] ? same : other) += w[c][d];
        }
        if (same > other + 1e-15 * total) {
          in_a[c] = !in_a[c];
          improved = true;
        }
      }
    }
    best = realize(in_a);
    best.method = "local_search";
  }
  best.components = h;
  best.separated = total;
  if (best.crossing < half) throw InternalError("bi-partition search missed the half bound");
  return best;
}

}  // namespace polyflow
