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

// JSON instance files and machine-readable exports. docs/FORMATS.md is the
// reference for both. Needs nlohmann/json (vendor/json.hpp).

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "polyflow/error.hpp"
#include "polyflow/flows.hpp"
#include "polyflow/network.hpp"
#include "polyflow/oracles.hpp"
#include "polyflow/reduction.hpp"
#include "polyflow/relaxations.hpp"
#include "polyflow/submodular.hpp"

namespace polyflow::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kInstanceFormat = "polyflow-instance";
inline constexpr int kInstanceVersion = 1;

// Non-finite numbers have no JSON spelling; they are written as null.
inline Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

namespace detail {

inline std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string at(const std::string& path, std::size_t i) {
  return path + "/" + std::to_string(i);
}

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw InputError((path.empty() ? std::string("/") : path) + ": " + what);
}

inline void only_keys(const Json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) fail(at(path, k), "unknown field");
  }
}

inline const Json& need(const Json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(at(path, key), "missing field");
  return j.at(key);
}

inline double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

inline std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

// Per-slot values keyed by edge id; every slot must appear exactly once.
inline std::vector<double> slot_values(const Json& j, const std::string& path,
                                       const std::vector<std::string>& slots) {
  if (!j.is_object()) fail(path, "expected an object keyed by edge id");
  std::vector<double> out(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!j.contains(slots[i])) fail(at(path, slots[i]), "missing incident edge");
    out[i] = as_number(j.at(slots[i]), at(path, slots[i]));
  }
  for (const auto& [k, v] : j.items()) {
    if (std::find(slots.begin(), slots.end(), k) == slots.end()) {
      fail(at(path, k), "edge is not incident to this capacity");
    }
  }
  return out;
}

inline std::size_t slot_of(const std::string& id, const std::vector<std::string>& slots,
                           const std::string& path) {
  const auto it = std::find(slots.begin(), slots.end(), id);
  if (it == slots.end()) fail(path, "edge '" + id + "' is not incident to this capacity");
  return static_cast<std::size_t>(it - slots.begin());
}

inline OracleFamily parse_family(const Json& j, const std::string& path,
                                 const std::vector<std::string>& slots) {
  if (!j.is_object()) fail(path, "expected an object");
  const std::string fam = as_string(need(j, path, "family"), at(path, "family"));
  if (fam == "modular") {
    only_keys(j, path, {"family", "weights"});
    if (!j.contains("weights") && slots.empty()) return Modular{};
    return Modular{slot_values(need(j, path, "weights"), at(path, "weights"), slots)};
  }
  if (fam == "uniform_rank_cap") {
    only_keys(j, path, {"family", "cap", "per_element"});
    UniformRankCap f{as_number(need(j, path, "cap"), at(path, "cap"))};
    if (j.contains("per_element")) f.per_element = as_number(j.at("per_element"), at(path, "per_element"));
    return f;
  }
  if (fam == "partition_rank_cap") {
    only_keys(j, path, {"family", "blocks"});
    const Json& blocks = need(j, path, "blocks");
    const std::string bp = at(path, "blocks");
    if (!blocks.is_array()) fail(bp, "expected an array");
    PartitionRankCap f;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const std::string p = at(bp, i);
      only_keys(blocks[i], p, {"edges", "cap", "per_element"});
      PartitionRankCap::Block b;
      const Json& edges = need(blocks[i], p, "edges");
      if (!edges.is_array()) fail(at(p, "edges"), "expected an array");
      for (std::size_t k = 0; k < edges.size(); ++k) {
        const std::string ep = at(at(p, "edges"), k);
        b.elements.push_back(slot_of(as_string(edges[k], ep), slots, ep));
      }
      b.cap = as_number(need(blocks[i], p, "cap"), at(p, "cap"));
      if (blocks[i].contains("per_element")) {
        b.per_element = as_number(blocks[i].at("per_element"), at(p, "per_element"));
      }
      f.blocks.push_back(std::move(b));
    }
    return f;
  }
  if (fam == "concave_of_weight") {
    only_keys(j, path, {"family", "weights", "breakpoints"});
    ConcaveOfWeight f;
    f.weights = slot_values(need(j, path, "weights"), at(path, "weights"), slots);
    const Json& bps = need(j, path, "breakpoints");
    const std::string bp = at(path, "breakpoints");
    if (!bps.is_array()) fail(bp, "expected an array of [weight, value] pairs");
    for (std::size_t i = 0; i < bps.size(); ++i) {
      if (!bps[i].is_array() || bps[i].size() != 2) fail(at(bp, i), "expected [weight, value]");
      f.breakpoints.emplace_back(as_number(bps[i][0], at(at(bp, i), 0)),
                                 as_number(bps[i][1], at(at(bp, i), 1)));
    }
    return f;
  }
  if (fam == "explicit_table") {
    only_keys(j, path, {"family", "slots", "values"});
    if (j.contains("slots")) {
      const Json& s = j.at("slots");
      bool same = s.is_array() && s.size() == slots.size();
      for (std::size_t i = 0; same && i < slots.size(); ++i) same = s[i] == slots[i];
      if (!same) fail(at(path, "slots"), "must list the incident edges in edge order");
    }
    if (slots.size() > kMaxTableGroundSize) {
      fail(path, "explicit tables allow at most " + std::to_string(kMaxTableGroundSize) + " slots");
    }
    const Json& values = need(j, path, "values");
    const std::string vp = at(path, "values");
    if (!values.is_object()) fail(vp, "expected an object keyed by subset bitmask");
    ExplicitTable f;
    f.values.assign(std::size_t{1} << slots.size(), 0.0);
    std::vector<bool> seen(f.values.size(), false);
    for (const auto& [k, v] : values.items()) {
      std::size_t pos = 0;
      unsigned long long mask = 0;
      try {
        mask = std::stoull(k, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != k.size() || k.empty() || mask >= f.values.size()) {
        fail(at(vp, k), "expected a decimal subset bitmask below 2^" + std::to_string(slots.size()));
      }
      f.values[mask] = as_number(v, at(vp, k));
      seen[mask] = true;
    }
    for (std::size_t m = 1; m < seen.size(); ++m) {
      if (!seen[m]) fail(vp, "missing value for subset " + std::to_string(m));
    }
    return f;
  }
  fail(at(path, "family"), "unknown family '" + fam + "'");
}

inline std::vector<std::string> slot_labels(const NetworkBuilder& b, std::size_t v, bool tail,
                                            bool head) {
  std::vector<std::string> out;
  for (std::size_t e = 0; e < b.num_edges(); ++e) {
    const Edge& ed = b.edge(e);
    if ((tail && ed.u == v) || (head && ed.v == v)) out.push_back(ed.id);
  }
  return out;
}

}  // namespace detail

inline Instance parse_instance(const Json& j) {
  using namespace detail;
  only_keys(j, "", {"format", "version", "orientation", "nodes", "edges", "capacities", "demands"});
  if (as_string(need(j, "", "format"), "/format") != kInstanceFormat) {
    fail("/format", std::string("expected \"") + kInstanceFormat + "\"");
  }
  const Json& ver = need(j, "", "version");
  if (!ver.is_number_integer() || ver.get<int>() != kInstanceVersion) {
    fail("/version", "unsupported version (expected " + std::to_string(kInstanceVersion) + ")");
  }
  const std::string orient = as_string(need(j, "", "orientation"), "/orientation");
  if (orient != "directed" && orient != "undirected") {
    fail("/orientation", "expected \"directed\" or \"undirected\"");
  }
  const bool dir = orient == "directed";
  NetworkBuilder b(dir ? Orientation::Directed : Orientation::Undirected);

  const Json& nodes = need(j, "", "nodes");
  if (!nodes.is_array()) fail("/nodes", "expected an array of node ids");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    try {
      b.add_node(as_string(nodes[i], at("/nodes", i)));
    } catch (const InputError& e) {
      if (std::string(e.what()).rfind("/", 0) == 0) throw;
      fail(at("/nodes", i), e.what());
    }
  }
  const Json& edges = need(j, "", "edges");
  if (!edges.is_array()) fail("/edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = at("/edges", i);
    only_keys(edges[i], p, {"id", "u", "v"});
    const std::string id = as_string(need(edges[i], p, "id"), at(p, "id"));
    const std::string u = as_string(need(edges[i], p, "u"), at(p, "u"));
    const std::string v = as_string(need(edges[i], p, "v"), at(p, "v"));
    try {
      b.add_edge(id, u, v);
    } catch (const InputError& e) {
      fail(p, e.what());
    }
  }

  const Json& caps = need(j, "", "capacities");
  if (!caps.is_object()) fail("/capacities", "expected an object keyed by node id");
  std::set<std::string> node_set;
  for (const Json& n : nodes) node_set.insert(n.get<std::string>());
  for (const auto& [id, spec] : caps.items()) {
    const std::string p = at("/capacities", id);
    if (!node_set.count(id)) fail(p, "unknown node");
    std::size_t v = 0;
    while (nodes[v] != id) ++v;
    if (dir) {
      only_keys(spec, p, {"in", "out"});
      if (spec.contains("in")) {
        b.set_in_capacity(v, parse_family(spec.at("in"), at(p, "in"), slot_labels(b, v, false, true)));
      }
      if (spec.contains("out")) {
        b.set_out_capacity(v, parse_family(spec.at("out"), at(p, "out"), slot_labels(b, v, true, false)));
      }
    } else {
      b.set_capacity(v, parse_family(spec, p, slot_labels(b, v, true, true)));
    }
  }
  Instance inst{[&] {
                  try {
                    return b.build();
                  } catch (const InputError& e) {
                    fail("/capacities", e.what());
                  }
                }(),
                {}};

  const Json& dem = need(j, "", "demands");
  only_keys(dem, "/demands", {"symmetric", "pairs"});
  if (dem.contains("symmetric")) {
    if (!dem.at("symmetric").is_boolean()) fail("/demands/symmetric", "expected a boolean");
    inst.demands.symmetric = dem.at("symmetric").get<bool>();
  }
  const Json& pairs = need(dem, "/demands", "pairs");
  if (!pairs.is_array()) fail("/demands/pairs", "expected an array");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string p = at("/demands/pairs", i);
    only_keys(pairs[i], p, {"s", "t", "demand"});
    DemandPair d{0, 0, 1.0};
    for (const char* key : {"s", "t"}) {
      const std::string id = as_string(need(pairs[i], p, key), at(p, key));
      if (!node_set.count(id)) fail(at(p, key), "unknown node '" + id + "'");
      (key[0] == 's' ? d.s : d.t) = *inst.network.node_index(id);
    }
    if (pairs[i].contains("demand")) d.demand = as_number(pairs[i].at("demand"), at(p, "demand"));
    inst.demands.pairs.push_back(d);
  }
  try {
    validate_demands(inst.network, inst.demands);
  } catch (const InputError& e) {
    fail("/demands", e.what());
  }
  return inst;
}

// Parse failures report "line L, column C".
inline Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    // Keep the parser's description but not its exception prefix.
    std::string why = e.what();
    const auto cut = why.find(": ", why.find("column"));
    why = cut == std::string::npos ? "malformed JSON" : why.substr(cut + 2);
    throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + why);
  }
  return parse_instance(j);
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance(ss.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Writing

inline Json family_json(const SubmodularOracle& rho) {
  const auto& labels = rho.ground().labels();
  auto keyed = [&](const std::vector<double>& w) {
    Json o = Json::object();
    for (std::size_t i = 0; i < labels.size(); ++i) o[labels[i]] = w[i];
    return o;
  };
  Json j;
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Modular>) {
          j["family"] = "modular";
          j["weights"] = keyed(f.weights);
        } else if constexpr (std::is_same_v<F, UniformRankCap>) {
          j["family"] = "uniform_rank_cap";
          j["cap"] = f.cap;
          if (std::isfinite(f.per_element)) j["per_element"] = f.per_element;
        } else if constexpr (std::is_same_v<F, PartitionRankCap>) {
          j["family"] = "partition_rank_cap";
          j["blocks"] = Json::array();
          for (const auto& b : f.blocks) {
            Json bj;
            bj["edges"] = Json::array();
            for (std::size_t i : b.elements) bj["edges"].push_back(labels[i]);
            bj["cap"] = b.cap;
            if (std::isfinite(b.per_element)) bj["per_element"] = b.per_element;
            j["blocks"].push_back(bj);
          }
        } else if constexpr (std::is_same_v<F, ConcaveOfWeight>) {
          j["family"] = "concave_of_weight";
          j["weights"] = keyed(f.weights);
          j["breakpoints"] = Json::array();
          for (const auto& [w, v] : f.breakpoints) j["breakpoints"].push_back({w, v});
        } else {
          j["family"] = "explicit_table";
          j["slots"] = labels;
          j["values"] = Json::object();
          for (std::size_t m = 1; m < f.values.size(); ++m) j["values"][std::to_string(m)] = f.values[m];
        }
      },
      rho.family());
  return j;
}

inline Json instance_json(const Instance& inst) {
  const auto& net = inst.network;
  Json j;
  j["format"] = kInstanceFormat;
  j["version"] = kInstanceVersion;
  j["orientation"] = to_string(net.orientation());
  j["nodes"] = net.node_ids();
  j["edges"] = Json::array();
  for (const Edge& e : net.edges()) j["edges"].push_back({{"id", e.id}, {"u", net.node_id(e.u)}, {"v", net.node_id(e.v)}});
  j["capacities"] = Json::object();
  for (std::size_t v = 0; v < net.num_nodes(); ++v) {
    if (net.directed()) {
      Json c;
      if (!net.in_edges(v).empty()) c["in"] = family_json(net.rho_in(v));
      if (!net.out_edges(v).empty()) c["out"] = family_json(net.rho_out(v));
      if (!c.empty()) j["capacities"][net.node_id(v)] = c;
    } else if (!net.incident_edges(v).empty()) {
      j["capacities"][net.node_id(v)] = family_json(net.rho(v));
    }
  }
  j["demands"]["symmetric"] = inst.demands.symmetric;
  j["demands"]["pairs"] = Json::array();
  for (const auto& p : inst.demands.pairs) {
    j["demands"]["pairs"].push_back(
        {{"s", net.node_id(p.s)}, {"t", net.node_id(p.t)}, {"demand", p.demand}});
  }
  return j;
}

inline Json cut_json(const PolymatroidalNetwork& net, const CutSolution& c) {
  Json j;
  j["edges"] = Json::array();
  j["assignment"] = Json::object();
  for (std::size_t k = 0; k < c.edges.size(); ++k) {
    j["edges"].push_back(net.edge(c.edges[k]).id);
    if (k < c.assignment.size()) j["assignment"][net.edge(c.edges[k]).id] = net.node_id(c.assignment[k]);
  }
  j["cost"] = c.cost;
  j["separated_demand"] = c.separation.demand;
  j["separated"] = Json::array();
  for (std::size_t i = 0; i < c.separation.forward.size(); ++i) {
    if (c.separation.forward[i]) j["separated"].push_back({{"pair", i}, {"direction", "forward"}});
    if (c.separation.symmetric && c.separation.backward[i]) {
      j["separated"].push_back({{"pair", i}, {"direction", "backward"}});
    }
  }
  j["sparsity"] = c.separation.demand > 0.0 ? number(c.cost / c.separation.demand) : Json(nullptr);
  return j;
}

inline Json flow_json(const PolymatroidalNetwork& net, const FlowSolution& f) {
  Json j;
  j["problem"] = to_string(f.problem);
  j["objective"] = f.unbounded ? Json(nullptr) : Json(f.objective);
  j["unbounded"] = f.unbounded;
  j["commodities"] = Json::array();
  for (std::size_t c = 0; c < f.commodities.size(); ++c) {
    const Commodity& com = f.commodities[c];
    Json cj;
    cj["s"] = net.node_id(com.s);
    cj["t"] = net.node_id(com.t);
    cj["pair"] = com.pair;
    cj["reverse"] = com.reverse;
    cj["rate"] = c < f.rates.size() ? f.rates[c] : 0.0;
    cj["edge_flow"] = Json::object();
    if (c < f.arc_flow.size()) {
      for (std::size_t e = 0; e < net.num_edges(); ++e) cj["edge_flow"][net.edge(e).id] = f.edge_flow(c, e);
    }
    j["commodities"].push_back(cj);
  }
  j["lp"] = {{"rows", f.lp_rows},
             {"columns", f.lp_columns},
             {"certificate_worst", f.certificate.worst()}};
  return j;
}

inline Json metric_json(const PolymatroidalNetwork& net, const FractionalCutMetric& m) {
  Json j;
  j["kind"] = to_string(m.kind);
  j["objective"] = m.objective;
  j["lp_objective"] = m.lp_objective;
  j["edges"] = Json::array();
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    j["edges"].push_back({{"id", net.edge(e).id},
                          {"length", m.length[e]},
                          {"split_u", m.split[e][0]},
                          {"split_v", m.split[e][1]}});
  }
  j["lp"] = {{"rows", m.lp_rows},
             {"columns", m.lp_columns},
             {"certificate_worst", m.certificate.worst()}};
  return j;
}

inline Json reduced_json(const PolymatroidalNetwork& net, const ReducedNetwork& red) {
  Json j;
  j["format"] = "polyflow-reduced";
  j["version"] = 1;
  j["nodes"] = Json::array();
  for (std::size_t h = 0; h < red.nodes.size(); ++h) {
    const HNode& n = red.nodes[h];
    Json nj{{"index", h}, {"role", to_string(n.role)}, {"owner", net.node_id(n.owner)}};
    if (n.role == HNodeRole::EdgeNode || n.role == HNodeRole::InTree || n.role == HNodeRole::OutTree) {
      nj["edge"] = net.edge(n.edge).id;
    }
    if (n.depth) nj["depth"] = n.depth;
    j["nodes"].push_back(nj);
  }
  j["arcs"] = Json::array();
  for (const HArc& a : red.arcs) {
    Json aj{{"from", a.from}, {"to", a.to}, {"length", a.length}, {"role", to_string(a.role)}};
    aj["cost"] = a.infinite ? Json("inf") : Json(a.cost);
    aj["owner"] = net.node_id(a.owner);
    aj["depth"] = a.depth;
    if (!a.infinite) {
      aj["set"] = Json::array();
      for (std::size_t e : a.set) aj["set"].push_back(net.edge(e).id);
    }
    j["arcs"].push_back(aj);
  }
  j["total_volume"] = red.total_volume();
  return j;
}

}  // namespace polyflow::io
