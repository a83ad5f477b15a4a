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

// Lovász-extension relaxations of multicut and sparsest cut.
//
// Each node oracle o gets a variable d_o(S) >= 0 per non-empty slot subset,
// priced at rho_o(S). The split of edge e at endpoint x is the total weight of
// the subsets of x's oracle that contain e, and the edge length is the sum of
// its two splits. Distances are encoded with one potential vector per
// commodity, pinned to 0 at the commodity's source.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "polyflow/error.hpp"
#include "polyflow/flows.hpp"
#include "polyflow/lp.hpp"
#include "polyflow/network.hpp"
#include "polyflow/submodular.hpp"

namespace polyflow {

enum class RelaxationKind { Multicut, Sparsest, FlowDual };

inline const char* to_string(RelaxationKind k) {
  switch (k) {
    case RelaxationKind::Multicut: return "multicut";
    case RelaxationKind::Sparsest: return "sparsest";
    default: return "flow_dual";
  }
}

struct FractionalCutMetric {
  RelaxationKind kind = RelaxationKind::Multicut;
  std::vector<double> length;               // l(e)
  std::vector<std::array<double, 2>> split;  // l(e,u), l(e,v); u is the tail when directed
  double objective = 0.0;     // sum of extensions of the per-oracle split vectors
  double lp_objective = 0.0;  // value of the linearized LP
  std::vector<std::vector<double>> subset_weights;  // d_o(S), indexed [o][mask]
  lp::LpCertificate certificate;
  std::size_t lp_rows = 0;
  std::size_t lp_columns = 0;

  double split_at(const PolymatroidalNetwork& net, std::size_t e, std::size_t node) const {
    return net.edge(e).u == node ? split[e][0] : split[e][1];
  }
};

// Split vector of oracle o, in slot order.
inline std::vector<double> split_vector(const PolymatroidalNetwork& net,
                                        const FractionalCutMetric& metric, std::size_t o) {
  const auto& slots = net.oracle_edges(o);
  std::vector<double> x(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const std::size_t e = slots[i];
    x[i] = net.end(e, 0).oracle == o ? metric.split[e][0] : metric.split[e][1];
  }
  return x;
}

inline double oracle_volume(const PolymatroidalNetwork& net, const FractionalCutMetric& metric,
                            std::size_t o) {
  return lovasz_extension_nonneg(net.oracle(o), split_vector(net, metric, o));
}

// vol(v): extension value of v's split vectors (both sides when directed).
inline double node_volume(const PolymatroidalNetwork& net, const FractionalCutMetric& metric,
                          std::size_t v) {
  if (net.directed()) {
    return oracle_volume(net, metric, net.in_oracle(v)) +
           oracle_volume(net, metric, net.out_oracle(v));
  }
  return oracle_volume(net, metric, net.node_oracle(v));
}

inline double metric_objective(const PolymatroidalNetwork& net, const FractionalCutMetric& metric) {
  double z = 0.0;
  for (std::size_t o = 0; o < net.num_oracles(); ++o) z += oracle_volume(net, metric, o);
  return z;
}

// All-pairs shortest-path distances under edge lengths (arcs follow edge
// direction when directed). Result is [from][to].
inline std::vector<std::vector<double>> shortest_distances(const PolymatroidalNetwork& net,
                                                           const std::vector<double>& length) {
  const Digraph g = net.arc_graph(&length);
  std::vector<std::vector<double>> d(net.num_nodes());
  for (std::size_t v = 0; v < net.num_nodes(); ++v) d[v] = g.distances(v);
  return d;
}

struct RelaxationOptions {
  std::size_t max_degree = 12;
  lp::LpOptions lp;
};

namespace detail {

inline FractionalCutMetric metric_from_subsets(const PolymatroidalNetwork& net,
                                               std::vector<std::vector<double>> weights,
                                               RelaxationKind kind) {
  FractionalCutMetric m;
  m.kind = kind;
  m.subset_weights = std::move(weights);
  m.length.assign(net.num_edges(), 0.0);
  m.split.assign(net.num_edges(), {0.0, 0.0});
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    for (int which = 0; which < 2; ++which) {
      const EdgeEnd& end = net.end(e, which);
      const auto& w = m.subset_weights[end.oracle];
      double s = 0.0;
      for (std::size_t mask = 1; mask < w.size(); ++mask) {
        if (mask >> end.slot & 1) s += w[mask];
      }
      m.split[e][which] = s;
    }
    m.length[e] = m.split[e][0] + m.split[e][1];
  }
  return m;
}

inline FractionalCutMetric solve_relaxation(const PolymatroidalNetwork& net,
                                            const DemandSet& demands, RelaxationKind kind,
                                            const RelaxationOptions& opts) {
  validate_demands(net, demands);
  require_degree(net, opts.max_degree);
  const bool sparsest = kind == RelaxationKind::Sparsest;
  std::vector<Commodity> coms = commodities(demands);
  if (sparsest) {
    double total = 0.0;
    for (const auto& c : coms) total += c.demand;
    if (!(total > 0.0)) throw InputError("sparsest cut relaxation needs positive total demand");
  }

  std::vector<std::vector<double>> weights(net.num_oracles());
  for (std::size_t o = 0; o < net.num_oracles(); ++o) {
    weights[o].assign(std::size_t{1} << net.oracle(o).size(), 0.0);
  }
  if (coms.empty()) {
    FractionalCutMetric m = metric_from_subsets(net, std::move(weights), kind);
    return m;
  }

  lp::LinearProgram prog(lp::Sense::Minimize);
  // d_o(S) variables.
  std::vector<std::vector<std::size_t>> dvar(net.num_oracles());
  for (std::size_t o = 0; o < net.num_oracles(); ++o) {
    const std::size_t full = weights[o].size();
    dvar[o].assign(full, 0);
    for (std::size_t s = 1; s < full; ++s) {
      dvar[o][s] = prog.add_variable(0.0, lp::kInf, net.oracle(o).eval_unchecked(s));
    }
  }
  // The terms sum_{S contains e} d(S) over both endpoints of e.
  std::vector<std::vector<lp::Term>> length_terms(net.num_edges());
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    for (int which = 0; which < 2; ++which) {
      const EdgeEnd& end = net.end(e, which);
      for (std::size_t s = 1; s < dvar[end.oracle].size(); ++s) {
        if (s >> end.slot & 1) length_terms[e].push_back({dvar[end.oracle][s], 1.0});
      }
    }
  }
  // Multicut keeps l(e) <= 1 as its own variable with l(e) <= sum d.
  std::vector<std::size_t> lvar;
  if (!sparsest) {
    for (std::size_t e = 0; e < net.num_edges(); ++e) {
      lvar.push_back(prog.add_variable(0.0, 1.0, 0.0));
      std::vector<lp::Term> row{{lvar.back(), 1.0}};
      for (const auto& t : length_terms[e]) row.push_back({t.var, -1.0});
      prog.add_constraint(std::move(row), lp::Relation::LessEqual, 0.0);
    }
  }

  if (sparsest) {
    coms.erase(std::remove_if(coms.begin(), coms.end(),
                              [](const Commodity& c) { return !(c.demand > 0.0); }),
               coms.end());
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> phi(coms.size());
  for (std::size_t c = 0; c < coms.size(); ++c) {
    phi[c].assign(net.num_nodes(), kNone);
    for (std::size_t w = 0; w < net.num_nodes(); ++w) {
      if (w != coms[c].s) phi[c][w] = prog.add_variable(0.0, lp::kInf, 0.0);
    }
    // phi(y) - phi(x) <= l(e) for every arc x -> y of edge e.
    for (std::size_t e = 0; e < net.num_edges(); ++e) {
      const Edge& ed = net.edge(e);
      for (int dir = 0; dir < (net.directed() ? 1 : 2); ++dir) {
        const std::size_t x = dir == 0 ? ed.u : ed.v;
        const std::size_t y = dir == 0 ? ed.v : ed.u;
        std::vector<lp::Term> row;
        if (phi[c][y] != kNone) row.push_back({phi[c][y], 1.0});
        if (phi[c][x] != kNone) row.push_back({phi[c][x], -1.0});
        if (sparsest) {
          for (const auto& t : length_terms[e]) row.push_back({t.var, -1.0});
        } else {
          row.push_back({lvar[e], -1.0});
        }
        prog.add_constraint(std::move(row), lp::Relation::LessEqual, 0.0);
      }
    }
  }
  if (sparsest) {
    std::vector<lp::Term> row;
    for (std::size_t c = 0; c < coms.size(); ++c) row.push_back({phi[c][coms[c].t], coms[c].demand});
    prog.add_constraint(std::move(row), lp::Relation::Equal, 1.0);
  } else if (demands.symmetric) {
    for (std::size_t c = 0; c + 1 < coms.size(); c += 2) {
      prog.add_constraint({{phi[c][coms[c].t], 1.0}, {phi[c + 1][coms[c + 1].t], 1.0}},
                          lp::Relation::GreaterEqual, 1.0);
    }
  } else {
    for (std::size_t c = 0; c < coms.size(); ++c) {
      prog.add_constraint({{phi[c][coms[c].t], 1.0}}, lp::Relation::GreaterEqual, 1.0);
    }
  }

  const lp::LpSolution sol = lp::solve_lp(prog, opts.lp);
  if (sol.status != lp::LpStatus::Optimal) {
    throw SolverError(std::string("relaxation LP ended ") +
                          (sol.status == lp::LpStatus::Unbounded ? "unbounded" : "infeasible"),
                      {});
  }
  for (std::size_t o = 0; o < net.num_oracles(); ++o) {
    for (std::size_t s = 1; s < dvar[o].size(); ++s) {
      weights[o][s] = std::max(0.0, sol.primal[dvar[o][s]]);
    }
  }
  FractionalCutMetric m = metric_from_subsets(net, std::move(weights), kind);
  if (!sparsest) {
    // Lengths beyond 1 never help a multicut; shrink both splits together.
    for (std::size_t e = 0; e < net.num_edges(); ++e) {
      if (m.length[e] > 1.0) {
        const double f = 1.0 / m.length[e];
        m.split[e][0] *= f;
        m.split[e][1] *= f;
        m.length[e] = m.split[e][0] + m.split[e][1];
      }
    }
  }
  m.lp_objective = sol.objective;
  m.objective = metric_objective(net, m);
  m.certificate = lp::certify(prog, sol);
  m.lp_rows = prog.num_constraints();
  m.lp_columns = prog.num_variables();
  return m;
}

}  // namespace detail

// min sum_v ext(d_v) subject to dist(s_i, t_i) >= 1 for every pair, or
// dist(s_i,t_i) + dist(t_i,s_i) >= 1 when demands are symmetric.
inline FractionalCutMetric solve_multicut_relaxation(const PolymatroidalNetwork& net,
                                                     const DemandSet& demands,
                                                     const RelaxationOptions& opts = {}) {
  return detail::solve_relaxation(net, demands, RelaxationKind::Multicut, opts);
}

// min sum_v ext(d_v) subject to sum_i D_i dist(s_i, t_i) = 1, both directions
// counted when symmetric.
inline FractionalCutMetric solve_sparsest_relaxation(const PolymatroidalNetwork& net,
                                                     const DemandSet& demands,
                                                     const RelaxationOptions& opts = {}) {
  return detail::solve_relaxation(net, demands, RelaxationKind::Sparsest, opts);
}

// Metric read off the capacity-row duals of a flow LP. For throughput flow
// each commodity with positive rate ends up at distance at least 1 (2 summed
// over both directions for symmetric demands), and sum rho(S) d(S) equals the
// flow value.
inline FractionalCutMetric metric_from_flow_duals(const PolymatroidalNetwork& net,
                                                  const FlowSolution& flow) {
  FractionalCutMetric m =
      detail::metric_from_subsets(net, flow.capacity_duals, RelaxationKind::FlowDual);
  double z = 0.0;
  for (std::size_t o = 0; o < net.num_oracles(); ++o) {
    for (std::size_t s = 1; s < m.subset_weights[o].size(); ++s) {
      z += m.subset_weights[o][s] * net.oracle(o).eval_unchecked(s);
    }
  }
  m.lp_objective = z;
  m.objective = metric_objective(net, m);
  return m;
}

struct MetricCheck {
  double split_residual = 0.0;     // max |l(e,u) + l(e,v) - l(e)|
  double negativity = 0.0;         // max negative part of any split
  double constraint_violation = 0.0;  // worst distance-constraint shortfall
  double objective_residual = 0.0;    // |objective - recomputed extension sum|
};

inline MetricCheck check_metric(const PolymatroidalNetwork& net, const FractionalCutMetric& m,
                                const DemandSet& demands) {
  MetricCheck c;
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    c.split_residual = std::max(c.split_residual,
                                std::abs(m.split[e][0] + m.split[e][1] - m.length[e]));
    c.negativity = std::max({c.negativity, -m.split[e][0], -m.split[e][1]});
  }
  const auto dist = shortest_distances(net, m.length);
  if (m.kind == RelaxationKind::Sparsest) {
    double sum = 0.0;
    for (const auto& com : commodities(demands)) {
      if (com.demand > 0.0) sum += com.demand * dist[com.s][com.t];
    }
    c.constraint_violation = std::max(0.0, 1.0 - sum);
  } else {
    for (const auto& p : demands.pairs) {
      double d = dist[p.s][p.t];
      if (demands.symmetric) d += dist[p.t][p.s];
      c.constraint_violation = std::max(c.constraint_violation, 1.0 - d);
    }
  }
  c.objective_residual = std::abs(m.objective - metric_objective(net, m));
  return c;
}

struct DualEquivalence {
  double throughput = 0.0;        // sum of R_i (half the both-direction total when symmetric)
  double multicut_relaxation = 0.0;
  double concurrent = 0.0;
  double sparsest_relaxation = 0.0;
  bool concurrent_defined = true;  // false when no pair has positive demand
  double multicut_residual = 0.0;
  double sparsest_residual = 0.0;
};

// Solves both flow LPs and both relaxations and reports the gaps. With
// symmetric demands the throughput objective counts each pair twice while its
// relaxation constrains dist + dist' >= 1, so the comparison uses half the
// throughput.
inline DualEquivalence verify_dual_equivalence(const PolymatroidalNetwork& net,
                                               const DemandSet& demands,
                                               const RelaxationOptions& opts = {}) {
  DualEquivalence r;
  FlowOptions fo{opts.max_degree, opts.lp};
  const FlowSolution tf = max_throughput_flow(net, demands, fo);
  r.throughput = demands.symmetric ? tf.objective / 2.0 : tf.objective;
  r.multicut_relaxation = solve_multicut_relaxation(net, demands, opts).lp_objective;
  r.multicut_residual = std::abs(r.throughput - r.multicut_relaxation);
  const FlowSolution cf = max_concurrent_flow(net, demands, fo);
  if (cf.unbounded) {
    r.concurrent_defined = false;
    r.concurrent = kInfinity;
    r.sparsest_relaxation = kInfinity;
    return r;
  }
  r.concurrent = cf.objective;
  r.sparsest_relaxation = solve_sparsest_relaxation(net, demands, opts).lp_objective;
  r.sparsest_residual = std::abs(r.concurrent - r.sparsest_relaxation);
  return r;
}

}  // namespace polyflow
