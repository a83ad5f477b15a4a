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

// Networks whose nodes carry polymatroids over their incident edge slots,
// demand sets, and the cut cost nu(F) of an edge set.
//
// Directed networks have an in-oracle over delta^-(v) and an out-oracle over
// delta^+(v) at every node; undirected networks have one oracle over delta(v).
// Slots are numbered in edge order, so slot i of a node's oracle is the i-th
// incident edge (of the right direction) in the network's edge list.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyflow/error.hpp"
#include "polyflow/graph.hpp"
#include "polyflow/submodular.hpp"

namespace polyflow {

enum class Orientation { Directed, Undirected };
enum class Side { In, Out, Both };

inline const char* to_string(Orientation o) {
  return o == Orientation::Directed ? "directed" : "undirected";
}
inline const char* to_string(Side s) {
  return s == Side::In ? "in" : s == Side::Out ? "out" : "all";
}

struct Edge {
  std::string id;
  std::size_t u;  // tail when directed
  std::size_t v;  // head when directed
};

// One endpoint of an edge as seen by the oracle that prices it.
struct EdgeEnd {
  std::size_t node;
  std::size_t oracle;
  std::size_t slot;
};

inline constexpr std::size_t kMaxCheckedDegree = kMaxCheckGroundSize;

class PolymatroidalNetwork {
 public:
  Orientation orientation() const { return orientation_; }
  bool directed() const { return orientation_ == Orientation::Directed; }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::string& node_id(std::size_t v) const { return nodes_.at(v); }
  const std::vector<std::string>& node_ids() const { return nodes_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<std::size_t> node_index(const std::string& id) const {
    auto it = node_lookup_.find(id);
    if (it == node_lookup_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> edge_index(const std::string& id) const {
    auto it = edge_lookup_.find(id);
    if (it == edge_lookup_.end()) return std::nullopt;
    return it->second;
  }

  // Oracles are indexed 2v (in), 2v+1 (out) when directed, v when undirected.
  std::size_t num_oracles() const { return oracles_.size(); }
  const SubmodularOracle& oracle(std::size_t o) const { return oracles_.at(o); }
  std::size_t oracle_node(std::size_t o) const { return directed() ? o / 2 : o; }
  Side oracle_side(std::size_t o) const {
    return directed() ? (o % 2 == 0 ? Side::In : Side::Out) : Side::Both;
  }
  // Edges of an oracle's ground set, in slot order.
  const std::vector<std::size_t>& oracle_edges(std::size_t o) const { return slots_.at(o); }

  std::size_t in_oracle(std::size_t v) const { return require_directed(), 2 * v; }
  std::size_t out_oracle(std::size_t v) const { return require_directed(), 2 * v + 1; }
  std::size_t node_oracle(std::size_t v) const { return require_undirected(), v; }

  const SubmodularOracle& rho_in(std::size_t v) const { return oracles_[in_oracle(v)]; }
  const SubmodularOracle& rho_out(std::size_t v) const { return oracles_[out_oracle(v)]; }
  const SubmodularOracle& rho(std::size_t v) const { return oracles_[node_oracle(v)]; }

  const std::vector<std::size_t>& in_edges(std::size_t v) const { return slots_[in_oracle(v)]; }
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return slots_[out_oracle(v)]; }
  const std::vector<std::size_t>& incident_edges(std::size_t v) const {
    return slots_[node_oracle(v)];
  }

  // which = 0 is the tail / u end, which = 1 the head / v end.
  const EdgeEnd& end(std::size_t e, int which) const { return ends_.at(e)[which]; }
  const EdgeEnd& end_at(std::size_t e, std::size_t node) const {
    const auto& pair = ends_.at(e);
    if (pair[0].node == node) return pair[0];
    if (pair[1].node == node) return pair[1];
    throw InputError("node " + nodes_.at(node) + " is not an endpoint of edge " + edges_[e].id);
  }

  std::size_t max_oracle_degree() const {
    std::size_t d = 0;
    for (const auto& s : slots_) d = std::max(d, s.size());
    return d;
  }

  // Oracles whose degree exceeded the exhaustive polymatroid check and were
  // accepted on trust.
  std::size_t unchecked_oracles() const { return unchecked_; }

  // Arc view: directed edge e becomes arc e; undirected edge e becomes arcs 2e
  // (u to v) and 2e+1 (v to u). Arc tags hold the edge index.
  Digraph arc_graph(const std::vector<double>* lengths = nullptr) const {
    Digraph g(num_nodes());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const double len = lengths ? (*lengths)[e] : 0.0;
      g.add_arc(edges_[e].u, edges_[e].v, len, e);
      if (!directed()) g.add_arc(edges_[e].v, edges_[e].u, len, e);
    }
    return g;
  }

 private:
  friend class NetworkBuilder;

  void require_directed() const {
    if (!directed()) throw InputError("in/out capacities exist only on directed networks");
  }
  void require_undirected() const {
    if (directed()) throw InputError("single node capacity exists only on undirected networks");
  }

  Orientation orientation_ = Orientation::Directed;
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::map<std::string, std::size_t> node_lookup_;
  std::map<std::string, std::size_t> edge_lookup_;
  std::vector<SubmodularOracle> oracles_;
  std::vector<std::vector<std::size_t>> slots_;
  std::vector<std::array<EdgeEnd, 2>> ends_;
  std::size_t unchecked_ = 0;
};

struct BuildOptions {
  bool check_polymatroids = true;
};

class NetworkBuilder {
 public:
  explicit NetworkBuilder(Orientation orientation) : orientation_(orientation) {}

  std::size_t add_node(std::string id) {
    if (node_lookup_.count(id)) throw InputError("duplicate node id '" + id + "'");
    node_lookup_[id] = nodes_.size();
    nodes_.push_back(std::move(id));
    families_.resize(oracle_count());
    return nodes_.size() - 1;
  }

  std::size_t add_edge(std::string id, std::size_t u, std::size_t v) {
    if (u >= nodes_.size() || v >= nodes_.size()) {
      throw InputError("edge '" + id + "' references an unknown node");
    }
    if (u == v) throw InputError("edge '" + id + "' is a self-loop");
    if (edge_lookup_.count(id)) throw InputError("duplicate edge id '" + id + "'");
    edge_lookup_[id] = edges_.size();
    edges_.push_back({std::move(id), u, v});
    return edges_.size() - 1;
  }

  std::size_t add_edge(std::string id, const std::string& u, const std::string& v) {
    auto iu = node_lookup_.find(u), iv = node_lookup_.find(v);
    if (iu == node_lookup_.end() || iv == node_lookup_.end()) {
      throw InputError("edge '" + id + "' references an unknown node");
    }
    return add_edge(std::move(id), iu->second, iv->second);
  }

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }

  // Slot counts as they stand now; used by generators to size oracles.
  std::size_t in_degree(std::size_t v) const { return count(v, false, true); }
  std::size_t out_degree(std::size_t v) const { return count(v, true, false); }
  std::size_t degree(std::size_t v) const { return count(v, true, true); }

  void set_capacity(std::size_t v, OracleFamily f) {
    if (orientation_ != Orientation::Undirected) {
      throw InputError("use set_in_capacity/set_out_capacity on directed networks");
    }
    families_.at(v) = std::move(f);
  }
  void set_in_capacity(std::size_t v, OracleFamily f) { directed_slot(v, 0) = std::move(f); }
  void set_out_capacity(std::size_t v, OracleFamily f) { directed_slot(v, 1) = std::move(f); }

  PolymatroidalNetwork build(const BuildOptions& opts = {}) const {
    PolymatroidalNetwork net;
    net.orientation_ = orientation_;
    net.nodes_ = nodes_;
    net.edges_ = edges_;
    net.node_lookup_ = node_lookup_;
    net.edge_lookup_ = edge_lookup_;
    const bool dir = orientation_ == Orientation::Directed;
    net.slots_.assign(oracle_count(), {});
    net.ends_.resize(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const std::size_t ou = dir ? 2 * edges_[e].u + 1 : edges_[e].u;
      const std::size_t ov = dir ? 2 * edges_[e].v : edges_[e].v;
      net.ends_[e][0] = {edges_[e].u, ou, net.slots_[ou].size()};
      net.slots_[ou].push_back(e);
      net.ends_[e][1] = {edges_[e].v, ov, net.slots_[ov].size()};
      net.slots_[ov].push_back(e);
    }
    for (std::size_t o = 0; o < oracle_count(); ++o) {
      const std::size_t v = dir ? o / 2 : o;
      const std::string where =
          "node '" + nodes_[v] + "'" + (dir ? (o % 2 ? " (out)" : " (in)") : "");
      std::vector<std::string> labels;
      for (std::size_t e : net.slots_[o]) labels.push_back(edges_[e].id);
      OracleFamily fam = Modular{};
      if (families_[o]) {
        fam = *families_[o];
      } else if (!labels.empty()) {
        throw InputError("missing capacity at " + where);
      }
      try {
        net.oracles_.emplace_back(GroundSet(std::move(labels)), std::move(fam));
      } catch (const InputError& err) {
        throw InputError("capacity at " + where + ": " + err.what());
      }
      const SubmodularOracle& rho = net.oracles_.back();
      if (const auto* m = std::get_if<Modular>(&rho.family())) {
        for (double w : m->weights) {
          if (w < 0.0) throw InputError("capacity at " + where + " has a negative weight");
        }
      }
      if (rho.size() > kMaxCheckedDegree) {
        ++net.unchecked_;
      } else if (opts.check_polymatroids) {
        const PolymatroidReport rep = check_polymatroid(rho);
        if (!rep.ok()) {
          static const char* names[] = {"normalized", "non-negative", "monotone", "submodular"};
          throw InputError("capacity at " + where + " is not " +
                           names[static_cast<int>(rep.violations.front().kind)]);
        }
      }
    }
    return net;
  }

 private:
  std::size_t oracle_count() const {
    return orientation_ == Orientation::Directed ? 2 * nodes_.size() : nodes_.size();
  }

  std::optional<OracleFamily>& directed_slot(std::size_t v, int side) {
    if (orientation_ != Orientation::Directed) {
      throw InputError("use set_capacity on undirected networks");
    }
    return families_.at(2 * v + side);
  }

  std::size_t count(std::size_t v, bool tail, bool head) const {
    std::size_t n = 0;
    for (const Edge& e : edges_) n += (tail && e.u == v) + (head && e.v == v);
    return n;
  }

  Orientation orientation_;
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::map<std::string, std::size_t> node_lookup_;
  std::map<std::string, std::size_t> edge_lookup_;
  std::vector<std::optional<OracleFamily>> families_;
};

// ---------------------------------------------------------------------------
// Demands

struct DemandPair {
  std::size_t s;
  std::size_t t;
  double demand = 1.0;
};

// With `symmetric` set each pair stands for the two ordered pairs (s,t) and
// (t,s) routed at equal rates.
struct DemandSet {
  std::vector<DemandPair> pairs;
  bool symmetric = false;

  std::size_t size() const { return pairs.size(); }
  double total() const {
    double d = 0.0;
    for (const auto& p : pairs) d += p.demand;
    return symmetric ? 2.0 * d : d;
  }
};

// An ordered source-sink pair of the expanded demand set.
struct Commodity {
  std::size_t s;
  std::size_t t;
  double demand;
  std::size_t pair;
  bool reverse;
};

// Pair i expands to commodity i, or to 2i and 2i+1 (reverse) when symmetric.
inline std::vector<Commodity> commodities(const DemandSet& d) {
  std::vector<Commodity> out;
  for (std::size_t i = 0; i < d.pairs.size(); ++i) {
    const auto& p = d.pairs[i];
    out.push_back({p.s, p.t, p.demand, i, false});
    if (d.symmetric) out.push_back({p.t, p.s, p.demand, i, true});
  }
  return out;
}

inline void validate_demands(const PolymatroidalNetwork& net, const DemandSet& d) {
  for (std::size_t i = 0; i < d.pairs.size(); ++i) {
    const auto& p = d.pairs[i];
    const std::string where = "demand pair " + std::to_string(i);
    if (p.s >= net.num_nodes() || p.t >= net.num_nodes()) {
      throw InputError(where + " references an unknown node");
    }
    if (p.s == p.t) throw InputError(where + " has equal source and sink");
    if (!std::isfinite(p.demand) || p.demand < 0.0) {
      throw InputError(where + " needs a finite non-negative demand");
    }
  }
}

// ---------------------------------------------------------------------------
// Cut cost

using EdgeSet = std::vector<std::size_t>;

inline EdgeSet normalize_edges(const PolymatroidalNetwork& net, EdgeSet f) {
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  if (!f.empty() && f.back() >= net.num_edges()) throw InputError("edge index out of range");
  return f;
}

inline std::vector<bool> edge_indicator(const PolymatroidalNetwork& net, const EdgeSet& f) {
  std::vector<bool> in(net.num_edges(), false);
  for (std::size_t e : f) in.at(e) = true;
  return in;
}

struct CutOptions {
  std::size_t max_edges = 24;  // nu(F) enumerates 2^|F| assignments
};

struct CutCost {
  double value = 0.0;
  std::vector<std::size_t> assignment;  // node receiving F[k], F sorted
};

// nu_g(F) for an explicit assignment; assignment[k] must be an endpoint of
// f[k]. Edges assigned twice would be double counted, so f must be distinct.
inline double assignment_cost(const PolymatroidalNetwork& net, const EdgeSet& f,
                              const std::vector<std::size_t>& assignment) {
  if (assignment.size() != f.size()) throw InputError("assignment size does not match edge set");
  std::vector<Mask> groups(net.num_oracles(), 0);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const EdgeEnd& end = net.end_at(f[k], assignment[k]);
    const Mask bit = Mask{1} << end.slot;
    if (groups[end.oracle] & bit) throw InputError("edge assigned twice");
    groups[end.oracle] |= bit;
  }
  double cost = 0.0;
  for (std::size_t o = 0; o < groups.size(); ++o) {
    if (groups[o]) cost += net.oracle(o).eval_unchecked(groups[o]);
  }
  return cost;
}

// Exact nu(F) by depth-first branch and bound over endpoint choices. The
// running sum of marginal costs is a lower bound because oracles are
// monotone; the cheaper endpoint is tried first so the first leaf is the
// greedy assignment.
inline CutCost cut_cost(const PolymatroidalNetwork& net, EdgeSet f, const CutOptions& opts = {}) {
  f = normalize_edges(net, std::move(f));
  if (f.size() > opts.max_edges) {
    throw CapabilityError("cut cost enumerates 2^|F| assignments; |F| = " +
                              std::to_string(f.size()),
                          opts.max_edges);
  }
  CutCost out;
  if (f.empty()) return out;
  const std::size_t m = f.size();
  std::vector<Mask> groups(net.num_oracles(), 0);
  std::vector<int> choice(m, 0), best_choice(m, 0);
  double best = kInfinity;

  auto marginal = [&](std::size_t k, int which) {
    const EdgeEnd& end = net.end(f[k], which);
    const Mask g = groups[end.oracle];
    const SubmodularOracle& rho = net.oracle(end.oracle);
    return rho.eval_unchecked(g | Mask{1} << end.slot) - rho.eval_unchecked(g);
  };
  auto dfs = [&](auto&& self, std::size_t k, double partial) -> void {
    if (partial >= best) return;
    if (k == m) {
      best = partial;
      best_choice = choice;
      return;
    }
    const double c0 = marginal(k, 0), c1 = marginal(k, 1);
    const int first = c1 < c0 ? 1 : 0;
    for (int which : {first, 1 - first}) {
      const EdgeEnd& end = net.end(f[k], which);
      groups[end.oracle] |= Mask{1} << end.slot;
      choice[k] = which;
      self(self, k + 1, partial + std::max(0.0, which ? c1 : c0));
      groups[end.oracle] &= ~(Mask{1} << end.slot);
    }
  };
  dfs(dfs, 0, 0.0);
  out.assignment.resize(m);
  for (std::size_t k = 0; k < m; ++k) out.assignment[k] = net.end(f[k], best_choice[k]).node;
  out.value = assignment_cost(net, f, out.assignment);
  return out;
}

// ---------------------------------------------------------------------------
// Separation

struct Separation {
  std::vector<bool> forward;   // (s_i, t_i) disconnected
  std::vector<bool> backward;  // (t_i, s_i) disconnected; only filled when symmetric
  double demand = 0.0;         // D(F)
  bool symmetric = false;

  // A pair counts as cut if either direction is (symmetric) or its one
  // direction is (otherwise).
  bool pair_cut(std::size_t i) const {
    return forward[i] || (symmetric && backward[i]);
  }
  bool all_cut() const {
    for (std::size_t i = 0; i < forward.size(); ++i) {
      if (!pair_cut(i)) return false;
    }
    return true;
  }
};

inline Separation separated_pairs(const PolymatroidalNetwork& net, const EdgeSet& f,
                                  const DemandSet& d) {
  Separation sep;
  sep.symmetric = d.symmetric;
  const std::size_t k = d.pairs.size();
  sep.forward.assign(k, false);
  sep.backward.assign(k, false);
  const std::vector<bool> removed = edge_indicator(net, f);
  if (!net.directed()) {
    DisjointSets ds(net.num_nodes());
    for (std::size_t e = 0; e < net.num_edges(); ++e) {
      if (!removed[e]) ds.unite(net.edge(e).u, net.edge(e).v);
    }
    for (std::size_t i = 0; i < k; ++i) {
      const bool cut = ds.find(d.pairs[i].s) != ds.find(d.pairs[i].t);
      sep.forward[i] = cut;
      sep.backward[i] = d.symmetric && cut;
    }
  } else {
    const Digraph g = net.arc_graph();
    auto usable = [&](std::size_t a) { return !removed[g.arc(a).tag]; };
    std::map<std::size_t, std::vector<bool>> reach;
    auto reach_from = [&](std::size_t s) -> const std::vector<bool>& {
      auto it = reach.find(s);
      if (it == reach.end()) it = reach.emplace(s, g.reachable(s, usable)).first;
      return it->second;
    };
    for (std::size_t i = 0; i < k; ++i) {
      sep.forward[i] = !reach_from(d.pairs[i].s)[d.pairs[i].t];
      if (d.symmetric) sep.backward[i] = !reach_from(d.pairs[i].t)[d.pairs[i].s];
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (sep.forward[i]) sep.demand += d.pairs[i].demand;
    if (sep.backward[i]) sep.demand += d.pairs[i].demand;
  }
  return sep;
}

inline bool is_multicut(const PolymatroidalNetwork& net, const EdgeSet& f, const DemandSet& d) {
  return separated_pairs(net, f, d).all_cut();
}

inline double sparsity(const PolymatroidalNetwork& net, const EdgeSet& f, const DemandSet& d,
                       const CutOptions& opts = {}) {
  const Separation sep = separated_pairs(net, f, d);
  if (!(sep.demand > 0.0)) throw UndefinedSparsityError("edge set separates no demand");
  return cut_cost(net, f, opts).value / sep.demand;
}

// An edge set with an attaining assignment and its separation record.
struct CutSolution {
  EdgeSet edges;
  std::vector<std::size_t> assignment;
  double cost = 0.0;
  Separation separation;

  double sparsity() const {
    if (!(separation.demand > 0.0)) throw UndefinedSparsityError("edge set separates no demand");
    return cost / separation.demand;
  }
};

inline CutSolution evaluate_cut(const PolymatroidalNetwork& net, EdgeSet f, const DemandSet& d,
                                const CutOptions& opts = {}) {
  CutSolution sol;
  sol.edges = normalize_edges(net, std::move(f));
  CutCost c = cut_cost(net, sol.edges, opts);
  sol.assignment = std::move(c.assignment);
  sol.cost = c.value;
  sol.separation = separated_pairs(net, sol.edges, d);
  return sol;
}

// Demand with one endpoint in S and one outside (both directions when
// symmetric). A cut delta(S) is priced against this, not against D(delta(S)),
// which also counts pairs that end up on the same side but in different
// components.
inline double crossing_demand(const std::vector<bool>& side, const DemandSet& d) {
  double z = 0.0;
  for (const Commodity& c : commodities(d)) {
    if (side.at(c.s) != side.at(c.t)) z += c.demand;
  }
  return z;
}

// Cut solution for an assignment that is given rather than optimized.
inline CutSolution evaluate_assigned_cut(const PolymatroidalNetwork& net, EdgeSet f,
                                         std::vector<std::size_t> assignment,
                                         const DemandSet& d) {
  CutSolution sol;
  sol.edges = std::move(f);
  sol.assignment = std::move(assignment);
  sol.cost = assignment_cost(net, sol.edges, sol.assignment);
  sol.separation = separated_pairs(net, sol.edges, d);
  return sol;
}

// Node-capacitated graph as a polymatroidal network: an internal node with
// capacity c(v) caps every non-empty set of its edges at 2c(v), since a path
// through v occupies two of its slots; terminals cap at c(v).
inline PolymatroidalNetwork encode_node_capacitated(const std::vector<std::string>& nodes,
                                                    const std::vector<Edge>& edges,
                                                    const std::vector<double>& caps,
                                                    const std::vector<std::size_t>& terminals) {
  if (caps.size() != nodes.size()) throw InputError("one capacity per node is required");
  NetworkBuilder b(Orientation::Undirected);
  for (const auto& id : nodes) b.add_node(id);
  for (const auto& e : edges) b.add_edge(e.id, e.u, e.v);
  std::vector<bool> terminal(nodes.size(), false);
  for (std::size_t t : terminals) terminal.at(t) = true;
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (!std::isfinite(caps[v]) || caps[v] < 0.0) {
      throw InputError("node capacity must be finite and non-negative");
    }
    b.set_capacity(v, UniformRankCap{terminal[v] ? caps[v] : 2.0 * caps[v]});
  }
  return b.build();
}

}  // namespace polyflow
