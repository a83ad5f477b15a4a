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

// Multicommodity flow in polymatroidal networks as an edge-based LP.
//
// Every commodity has one flow variable per arc. An undirected edge is two
// opposite arcs whose summed usage occupies the edge's single slot. Capacity
// rows enumerate every non-empty subset of every node's slots, so the node
// degree is bounded (FlowOptions::max_degree).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "polyflow/error.hpp"
#include "polyflow/lp.hpp"
#include "polyflow/network.hpp"

namespace polyflow {

enum class FlowProblem { Throughput, Concurrent };

inline const char* to_string(FlowProblem p) {
  return p == FlowProblem::Throughput ? "throughput" : "concurrent";
}

struct FlowOptions {
  std::size_t max_degree = 12;
  lp::LpOptions lp;
};

struct FlowSolution {
  FlowProblem problem = FlowProblem::Throughput;
  Orientation orientation = Orientation::Directed;
  std::vector<Commodity> commodities;
  // arc_flow[c][a] with arcs laid out as in PolymatroidalNetwork::arc_graph().
  std::vector<std::vector<double>> arc_flow;
  std::vector<double> rates;  // per commodity
  double objective = 0.0;     // sum of rates, or lambda
  bool unbounded = false;     // concurrent flow with no positive demand
  // Dual of the capacity row of subset S at oracle o, indexed [o][mask(S)];
  // non-negative, zero at mask 0.
  std::vector<std::vector<double>> capacity_duals;
  lp::LpCertificate certificate;
  std::size_t lp_rows = 0;
  std::size_t lp_columns = 0;

  // f_c(e): usage of edge e by commodity c, both directions summed.
  double edge_flow(std::size_t c, std::size_t e) const {
    if (orientation == Orientation::Directed) return arc_flow[c][e];
    return arc_flow[c][2 * e] + arc_flow[c][2 * e + 1];
  }

  // f(e) summed over commodities.
  double edge_usage(std::size_t e) const {
    double f = 0.0;
    for (std::size_t c = 0; c < arc_flow.size(); ++c) f += edge_flow(c, e);
    return f;
  }
};

namespace detail {

inline void require_degree(const PolymatroidalNetwork& net, std::size_t bound) {
  if (net.max_oracle_degree() > bound) {
    throw CapabilityError("node degree " + std::to_string(net.max_oracle_degree()) +
                              " exceeds the subset-enumeration bound",
                          bound);
  }
}

inline std::size_t arc_count(const PolymatroidalNetwork& net) {
  return net.directed() ? net.num_edges() : 2 * net.num_edges();
}

inline std::size_t arc_tail(const PolymatroidalNetwork& net, std::size_t a) {
  if (net.directed()) return net.edge(a).u;
  return a % 2 == 0 ? net.edge(a / 2).u : net.edge(a / 2).v;
}

inline std::size_t arc_head(const PolymatroidalNetwork& net, std::size_t a) {
  if (net.directed()) return net.edge(a).v;
  return a % 2 == 0 ? net.edge(a / 2).v : net.edge(a / 2).u;
}

inline FlowSolution solve_flow(const PolymatroidalNetwork& net, const DemandSet& demands,
                               FlowProblem problem, const FlowOptions& opts) {
  validate_demands(net, demands);
  require_degree(net, opts.max_degree);
  FlowSolution out;
  out.problem = problem;
  out.orientation = net.orientation();
  out.commodities = commodities(demands);
  const std::size_t nc = out.commodities.size();
  const std::size_t na = arc_count(net);
  out.arc_flow.assign(nc, std::vector<double>(na, 0.0));
  out.rates.assign(nc, 0.0);
  out.capacity_duals.resize(net.num_oracles());
  for (std::size_t o = 0; o < net.num_oracles(); ++o) {
    out.capacity_duals[o].assign(std::size_t{1} << net.oracle(o).size(), 0.0);
  }

  std::vector<bool> active(nc, true);
  if (problem == FlowProblem::Concurrent) {
    bool any = false;
    for (std::size_t c = 0; c < nc; ++c) {
      active[c] = out.commodities[c].demand > 0.0;
      any = any || active[c];
    }
    if (!any) {
      out.unbounded = true;
      out.objective = kInfinity;
      return out;
    }
  }
  if (nc == 0) return out;

  lp::LinearProgram prog(lp::Sense::Maximize);
  std::vector<std::size_t> fvar(nc * na, 0);
  for (std::size_t c = 0; c < nc; ++c) {
    if (!active[c]) continue;
    for (std::size_t a = 0; a < na; ++a) fvar[c * na + a] = prog.add_variable(0.0, lp::kInf, 0.0);
  }
  std::vector<std::size_t> rvar(nc, 0);
  std::size_t lambda = 0;
  if (problem == FlowProblem::Throughput) {
    for (std::size_t c = 0; c < nc; ++c) rvar[c] = prog.add_variable(0.0, lp::kInf, 1.0);
  } else {
    lambda = prog.add_variable(0.0, lp::kInf, 1.0);
  }

  // Conservation: out - in = rate at s, and 0 at other non-sink nodes. The
  // sink's row is implied by the others and left out.
  for (std::size_t c = 0; c < nc; ++c) {
    if (!active[c]) continue;
    const Commodity& com = out.commodities[c];
    std::vector<std::vector<lp::Term>> rows(net.num_nodes());
    for (std::size_t a = 0; a < na; ++a) {
      rows[arc_tail(net, a)].push_back({fvar[c * na + a], 1.0});
      rows[arc_head(net, a)].push_back({fvar[c * na + a], -1.0});
    }
    for (std::size_t w = 0; w < net.num_nodes(); ++w) {
      if (w == com.t) continue;
      if (w == com.s) {
        if (problem == FlowProblem::Throughput) {
          rows[w].push_back({rvar[c], -1.0});
        } else {
          rows[w].push_back({lambda, -com.demand});
        }
      }
      if (rows[w].empty()) continue;
      prog.add_constraint(std::move(rows[w]), lp::Relation::Equal, 0.0);
    }
  }

  // Capacity rows, remembered so their duals can be read back.
  std::vector<std::pair<std::size_t, Mask>> cap_rows;
  std::vector<std::size_t> cap_row_index;
  for (std::size_t o = 0; o < net.num_oracles(); ++o) {
    const auto& slots = net.oracle_edges(o);
    const SubmodularOracle& rho = net.oracle(o);
    const Mask full = full_mask(slots.size());
    for (Mask s = 1; s <= full && slots.size() > 0; ++s) {
      std::vector<lp::Term> row;
      for (Mask m = s; m; m &= m - 1) {
        const std::size_t e = slots[std::countr_zero(m)];
        for (std::size_t c = 0; c < nc; ++c) {
          if (!active[c]) continue;
          if (net.directed()) {
            row.push_back({fvar[c * na + e], 1.0});
          } else {
            row.push_back({fvar[c * na + 2 * e], 1.0});
            row.push_back({fvar[c * na + 2 * e + 1], 1.0});
          }
        }
      }
      if (row.empty()) continue;
      cap_row_index.push_back(prog.add_constraint(std::move(row), lp::Relation::LessEqual,
                                                  rho.eval_unchecked(s)));
      cap_rows.push_back({o, s});
    }
  }

  if (problem == FlowProblem::Throughput && demands.symmetric) {
    for (std::size_t i = 0; i < demands.pairs.size(); ++i) {
      prog.add_constraint({{rvar[2 * i], 1.0}, {rvar[2 * i + 1], -1.0}}, lp::Relation::Equal, 0.0);
    }
  }

  const lp::LpSolution sol = lp::solve_lp(prog, opts.lp);
  if (sol.status != lp::LpStatus::Optimal) {
    // The zero flow is always feasible and every rate is capped by a finite
    // capacity row, so anything else is a solver fault.
    throw SolverError(std::string("flow LP ended ") +
                          (sol.status == lp::LpStatus::Unbounded ? "unbounded" : "infeasible"),
                      {});
  }
  out.lp_rows = prog.num_constraints();
  out.lp_columns = prog.num_variables();
  out.objective = sol.objective;
  out.certificate = lp::certify(prog, sol);
  for (std::size_t c = 0; c < nc; ++c) {
    if (!active[c]) continue;
    for (std::size_t a = 0; a < na; ++a) {
      out.arc_flow[c][a] = std::max(0.0, sol.primal[fvar[c * na + a]]);
    }
    out.rates[c] = problem == FlowProblem::Throughput
                       ? std::max(0.0, sol.primal[rvar[c]])
                       : out.commodities[c].demand * std::max(0.0, sol.primal[lambda]);
  }
  for (std::size_t r = 0; r < cap_rows.size(); ++r) {
    out.capacity_duals[cap_rows[r].first][cap_rows[r].second] =
        std::max(0.0, sol.dual[cap_row_index[r]]);
  }
  return out;
}

}  // namespace detail

// Maximize the sum of rates (both directions counted when symmetric, with the
// two directions of a pair forced equal).
inline FlowSolution max_throughput_flow(const PolymatroidalNetwork& net, const DemandSet& demands,
                                        const FlowOptions& opts = {}) {
  return detail::solve_flow(net, demands, FlowProblem::Throughput, opts);
}

// Maximize lambda such that every commodity is routed at rate lambda * D.
inline FlowSolution max_concurrent_flow(const PolymatroidalNetwork& net, const DemandSet& demands,
                                        const FlowOptions& opts = {}) {
  return detail::solve_flow(net, demands, FlowProblem::Concurrent, opts);
}

struct FlowFeasibility {
  bool feasible = true;
  double worst_violation = 0.0;
  std::string worst_constraint;  // human-readable location of the worst violation
  double capacity_violation = 0.0;
  double conservation_violation = 0.0;
  double negativity = 0.0;
};

// Checks non-negativity, conservation (net outflow = rate at the source) and
// every subset capacity constraint.
inline FlowFeasibility check_flow_feasibility(const PolymatroidalNetwork& net,
                                              const FlowSolution& flow, double tol = 1e-7,
                                              std::size_t max_degree = 12) {
  detail::require_degree(net, max_degree);
  const std::size_t na = detail::arc_count(net);
  if (flow.arc_flow.size() != flow.commodities.size() || flow.rates.size() != flow.commodities.size()) {
    throw InputError("flow has inconsistent commodity counts");
  }
  FlowFeasibility rep;
  auto note = [&](double viol, const std::string& where, double& bucket) {
    bucket = std::max(bucket, viol);
    if (viol > rep.worst_violation) {
      rep.worst_violation = viol;
      rep.worst_constraint = where;
    }
  };
  for (std::size_t c = 0; c < flow.commodities.size(); ++c) {
    const Commodity& com = flow.commodities[c];
    if (flow.arc_flow[c].size() != na) throw InputError("flow has the wrong number of arcs");
    std::vector<double> balance(net.num_nodes(), 0.0);
    for (std::size_t a = 0; a < na; ++a) {
      const double f = flow.arc_flow[c][a];
      note(-f, "flow on arc " + std::to_string(a) + " of commodity " + std::to_string(c),
           rep.negativity);
      balance[detail::arc_tail(net, a)] += f;
      balance[detail::arc_head(net, a)] -= f;
    }
    note(-flow.rates[c], "rate of commodity " + std::to_string(c), rep.negativity);
    for (std::size_t w = 0; w < net.num_nodes(); ++w) {
      double expect = 0.0;
      if (w == com.s) expect = flow.rates[c];
      if (w == com.t) expect = -flow.rates[c];
      note(std::abs(balance[w] - expect),
           "conservation at node '" + net.node_id(w) + "' for commodity " + std::to_string(c),
           rep.conservation_violation);
    }
  }
  std::vector<double> usage(net.num_edges(), 0.0);
  for (std::size_t e = 0; e < net.num_edges(); ++e) usage[e] = flow.edge_usage(e);
  for (std::size_t o = 0; o < net.num_oracles(); ++o) {
    const auto& slots = net.oracle_edges(o);
    const Mask full = full_mask(slots.size());
    for (Mask s = 1; s <= full && !slots.empty(); ++s) {
      double load = 0.0;
      for (Mask m = s; m; m &= m - 1) load += usage[slots[std::countr_zero(m)]];
      note(load - net.oracle(o).eval_unchecked(s),
           "capacity of subset " + std::to_string(s) + " at node '" +
               net.node_id(net.oracle_node(o)) + "' (" + to_string(net.oracle_side(o)) + ")",
           rep.capacity_violation);
    }
  }
  rep.feasible = rep.worst_violation <= tol;
  return rep;
}

struct PathFlow {
  std::vector<std::size_t> arcs;
  std::vector<std::size_t> nodes;
  double amount = 0.0;
};

struct PathDecomposition {
  std::vector<std::vector<PathFlow>> paths;  // per commodity
  std::vector<double> cycle_flow;            // per commodity: arc flow mass discarded on cycles
};

// Standard flow decomposition: walk positive arcs from s; a repeated node
// closes a cycle, which is cancelled; reaching t yields a path. Flow left on
// cycles after all paths are extracted is reported and discarded.
inline PathDecomposition decompose_to_paths(const PolymatroidalNetwork& net,
                                            const FlowSolution& flow, double tol = 1e-9) {
  const std::size_t na = detail::arc_count(net);
  PathDecomposition out;
  out.paths.resize(flow.commodities.size());
  out.cycle_flow.assign(flow.commodities.size(), 0.0);
  for (std::size_t c = 0; c < flow.commodities.size(); ++c) {
    const Commodity& com = flow.commodities[c];
    std::vector<double> f = flow.arc_flow.at(c);
    std::vector<double> balance(net.num_nodes(), 0.0);
    double scale = 1.0;
    for (std::size_t a = 0; a < na; ++a) {
      if (f[a] < -tol) throw ContractError("negative arc flow");
      f[a] = std::max(f[a], 0.0);
      balance[detail::arc_tail(net, a)] += f[a];
      balance[detail::arc_head(net, a)] -= f[a];
      scale = std::max(scale, f[a]);
    }
    for (std::size_t w = 0; w < net.num_nodes(); ++w) {
      double expect = w == com.s ? flow.rates[c] : w == com.t ? -flow.rates[c] : 0.0;
      if (std::abs(balance[w] - expect) > tol * scale) {
        throw ContractError("flow violates conservation at node '" + net.node_id(w) + "'");
      }
    }
    std::vector<std::vector<std::size_t>> out_arcs(net.num_nodes());
    for (std::size_t a = 0; a < na; ++a) out_arcs[detail::arc_tail(net, a)].push_back(a);
    const double dust = tol * scale * 1e-3;
    auto next_arc = [&](std::size_t v) {
      std::size_t best = na;
      for (std::size_t a : out_arcs[v]) {
        if (f[a] > dust && (best == na || f[a] > f[best])) best = a;
      }
      return best;
    };
    double remaining = flow.rates[c];
    while (remaining > dust) {
      std::vector<std::size_t> walk_nodes{com.s};
      std::vector<std::size_t> walk_arcs;
      std::vector<std::size_t> pos(net.num_nodes(), na);
      pos[com.s] = 0;
      bool done = false;
      while (!done) {
        const std::size_t v = walk_nodes.back();
        if (v == com.t) {
          double amt = remaining;
          for (std::size_t a : walk_arcs) amt = std::min(amt, f[a]);
          for (std::size_t a : walk_arcs) f[a] -= amt;
          out.paths[c].push_back({walk_arcs, walk_nodes, amt});
          remaining -= amt;
          done = true;
          break;
        }
        const std::size_t a = next_arc(v);
        if (a == na) {
          // Only rounding residue can strand a walk after the balance check.
          if (walk_arcs.empty()) {
            remaining = 0.0;
          } else {
            f[walk_arcs.back()] = 0.0;
          }
          done = true;
          break;
        }
        const std::size_t w = detail::arc_head(net, a);
        if (pos[w] != na) {
          // Cycle walk_nodes[pos[w]] ... v -> w. Cancel it and rewind to w.
          double amt = f[a];
          for (std::size_t i = pos[w]; i < walk_arcs.size(); ++i) amt = std::min(amt, f[walk_arcs[i]]);
          f[a] -= amt;
          for (std::size_t i = pos[w]; i < walk_arcs.size(); ++i) f[walk_arcs[i]] -= amt;
          out.cycle_flow[c] += amt * static_cast<double>(walk_arcs.size() - pos[w] + 1);
          for (std::size_t i = pos[w] + 1; i < walk_nodes.size(); ++i) pos[walk_nodes[i]] = na;
          walk_nodes.resize(pos[w] + 1);
          walk_arcs.resize(pos[w]);
          continue;
        }
        pos[w] = walk_nodes.size();
        walk_nodes.push_back(w);
        walk_arcs.push_back(a);
      }
    }
    for (std::size_t a = 0; a < na; ++a) {
      if (f[a] > dust) out.cycle_flow[c] += f[a];
    }
  }
  return out;
}

}  // namespace polyflow
