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

// polyflow command-line tool. Exit codes: 0 ok, 2 input error, 3 capability
// limit, 4 internal invariant failure (including a failed verify).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "polyflow/polyflow.hpp"

namespace pf = polyflow;
using pf::io::Json;
using pf::io::number;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCapability = 3;
constexpr int kExitInternal = 4;

struct Common {
  std::uint64_t seed = 1;
  std::size_t trials = 8;
  double tol = 1e-6;
  std::size_t max_brute_edges = pf::kMaxBruteEdges;
  std::size_t max_cut_edges = 24;
  std::string format = "text";
  std::string output;
};

// Report = machine-readable document plus a list of rows for the human table.
struct Report {
  Json doc;
  std::vector<std::pair<std::string, std::string>> rows;
  std::vector<std::string> table;  // preformatted extra lines (gap-report)
  bool failed = false;

  void row(const std::string& k, const std::string& v) { rows.emplace_back(k, v); }
  void row(const std::string& k, double v) { rows.emplace_back(k, fmt(v)); }

  static std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
  }
};

Json header(const std::string& command, const Common& c) {
  Json j;
  j["command"] = command;
  j["seed"] = c.seed;
  j["tolerances"] = {{"check", c.tol},
                     {"lp_feasibility", pf::lp::LpOptions{}.feasibility_tol},
                     {"lp_optimality", pf::lp::LpOptions{}.optimality_tol}};
  j["limits"] = {{"max_brute_edges", c.max_brute_edges},
                 {"max_cut_edges", c.max_cut_edges},
                 {"max_degree", pf::FlowOptions{}.max_degree},
                 {"max_brute_nodes", pf::kMaxBruteNodes}};
  return j;
}

void add_header_rows(Report& r, const Common& c) {
  r.row("seed", std::to_string(c.seed));
  r.row("tolerance", c.tol);
  r.row("max brute edges", std::to_string(c.max_brute_edges));
  r.row("max cut edges", std::to_string(c.max_cut_edges));
}

void emit(const Report& r, const Common& c) {
  std::ostringstream os;
  if (c.format == "json") {
    os << r.doc.dump(2) << "\n";
  } else {
    std::size_t w = 0;
    for (const auto& [k, v] : r.rows) w = std::max(w, k.size());
    for (const auto& [k, v] : r.rows) os << std::left << std::setw(static_cast<int>(w) + 2) << k << v << "\n";
    for (const auto& line : r.table) os << line << "\n";
  }
  if (c.output.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(c.output);
    if (!out) throw pf::InputError(c.output + ": cannot write");
    out << os.str();
  }
}

pf::CutOptions cut_options(const Common& c) { return pf::CutOptions{c.max_cut_edges}; }

void check(Report& r, Json& checks, const std::string& name, bool ok, const std::string& detail = "") {
  checks.push_back({{"name", name}, {"pass", ok}, {"detail", detail}});
  r.row(name, std::string(ok ? "PASS" : "FAIL") + (detail.empty() ? "" : "  " + detail));
  if (!ok) r.failed = true;
}

std::string cut_ids(const pf::PolymatroidalNetwork& net, const pf::EdgeSet& f) {
  std::string s;
  for (std::size_t e : f) s += (s.empty() ? "" : ",") + net.edge(e).id;
  return s.empty() ? "(none)" : s;
}

// ---------------------------------------------------------------------------

Report solve_flow(const pf::Instance& inst, const std::string& problem, const Common& c) {
  Report r;
  r.doc = header("solve-flow", c);
  const auto f = problem == "throughput" ? pf::max_throughput_flow(inst.network, inst.demands)
                                         : pf::max_concurrent_flow(inst.network, inst.demands);
  // Symmetric throughput routes each pair both ways; its relaxation counterpart
  // is half the objective.
  const double dual = (problem == "throughput" && inst.demands.symmetric) ? f.objective / 2.0 : f.objective;
  const auto feas = pf::check_flow_feasibility(inst.network, f, c.tol);
  r.doc["objective"] = f.unbounded ? Json(nullptr) : Json(f.objective);
  r.doc["relaxation_comparable"] = f.unbounded ? Json(nullptr) : Json(dual);
  r.doc["feasible"] = feas.feasible;
  r.doc["flow"] = pf::io::flow_json(inst.network, f);
  r.row("problem", problem);
  add_header_rows(r, c);
  r.row("objective", f.unbounded ? "unbounded" : Report::fmt(f.objective));
  if (dual != f.objective) r.row("relaxation comparable", dual);
  r.row("feasible", feas.feasible ? "yes" : "no (" + feas.worst_constraint + ")");
  if (!feas.feasible) r.failed = true;
  return r;
}

pf::FractionalCutMetric relaxation(const pf::Instance& inst, const std::string& kind) {
  return kind == "multicut" ? pf::solve_multicut_relaxation(inst.network, inst.demands)
                            : pf::solve_sparsest_relaxation(inst.network, inst.demands);
}

Report solve_relax(const pf::Instance& inst, const std::string& kind, const Common& c) {
  Report r;
  r.doc = header("solve-relaxation", c);
  const auto m = relaxation(inst, kind);
  const auto mc = pf::check_metric(inst.network, m, inst.demands);
  r.doc["objective"] = m.objective;
  r.doc["metric"] = pf::io::metric_json(inst.network, m);
  r.doc["check"] = {{"split_residual", mc.split_residual},
                    {"negativity", mc.negativity},
                    {"constraint_violation", mc.constraint_violation},
                    {"objective_residual", mc.objective_residual}};
  r.row("relaxation", kind);
  add_header_rows(r, c);
  r.row("objective", m.objective);
  r.row("constraint violation", mc.constraint_violation);
  return r;
}

std::optional<pf::CutSolution> brute(const pf::Instance& inst, bool multicut, const Common& c) {
  if (inst.network.num_edges() > c.max_brute_edges) return std::nullopt;
  try {
    return multicut ? pf::brute_min_multicut(inst.network, inst.demands, cut_options(c))
                    : pf::brute_sparsest_cut(inst.network, inst.demands, cut_options(c));
  } catch (const pf::CapabilityError&) {
    return std::nullopt;
  }
}

Report round_mc(const pf::Instance& inst, const Common& c) {
  Report r;
  r.doc = header("round-multicut", c);
  const auto m = pf::solve_multicut_relaxation(inst.network, inst.demands);
  const auto res = pf::round_multicut(inst.network, m, inst.demands, {cut_options(c)});
  Json checks = Json::array();
  r.row("relaxation", m.objective);
  add_header_rows(r, c);
  r.row("cut", cut_ids(inst.network, res.cut.edges));
  r.row("cost", res.cut.cost);
  r.row("bound", res.bound);
  check(r, checks, "is multicut", res.cut.separation.all_cut());
  check(r, checks, "cost within bound", res.cut.cost <= res.bound * (1 + c.tol) + c.tol);
  std::size_t ball_ok = 0;
  for (const auto& st : res.steps) {
    if (st.ball.cost_bound <= st.ball.rhs * (1 + 1e-9) + 1e-12) ++ball_ok;
  }
  check(r, checks, "region growing", ball_ok == res.steps.size(),
        std::to_string(ball_ok) + "/" + std::to_string(res.steps.size()) + " balls");
  r.doc["relaxation"] = m.objective;
  r.doc["cut"] = pf::io::cut_json(inst.network, res.cut);
  r.doc["bound"] = res.bound;
  r.doc["scale"] = res.scale;
  r.doc["log_k"] = res.log_k;
  r.doc["balls"] = res.steps.size();
  r.doc["ratio"] = m.objective > 0 ? number(res.cut.cost / m.objective) : Json(nullptr);
  if (auto b = brute(inst, true, c)) {
    r.doc["brute_optimum"] = b->cost;
    r.row("brute optimum", b->cost);
    check(r, checks, "optimum <= rounded", b->cost <= res.cut.cost + c.tol);
  }
  r.doc["checks"] = checks;
  return r;
}

Report round_sp(const pf::Instance& inst, const Common& c) {
  Report r;
  r.doc = header("round-sparsest", c);
  const auto m = pf::solve_sparsest_relaxation(inst.network, inst.demands);
  const auto dist = pf::shortest_distances(inst.network, m.length);
  const auto emb = pf::line_embed(dist, pf::demand_weights(inst.demands), c.trials, c.seed);
  const auto sw = pf::sweep_sparsest_cut(inst.network, m, inst.demands, emb, {cut_options(c)});
  const double bound = 2.0 * emb.avgd * m.objective;
  const double k = static_cast<double>(std::max<std::size_t>(inst.demands.size(), 2));
  Json checks = Json::array();
  r.row("relaxation", m.objective);
  add_header_rows(r, c);
  r.row("trials", std::to_string(c.trials));
  r.row("cut", cut_ids(inst.network, sw.cut.edges));
  r.row("sparsity", sw.sparsity());
  r.row("distortion", emb.avgd);
  r.row("ratio", m.objective > 0 ? sw.sparsity() / m.objective : pf::kInfinity);
  r.row("log2 k", std::log2(k));
  check(r, checks, "sparsity <= 2 avgd relaxation", sw.sparsity() <= bound * (1 + c.tol) + c.tol);
  r.doc["relaxation"] = m.objective;
  r.doc["concurrent_flow"] = m.objective;  // equal by duality
  r.doc["cut"] = pf::io::cut_json(inst.network, sw.cut);
  r.doc["threshold"] = sw.theta;
  r.doc["crossing_demand"] = sw.crossing;
  r.doc["sparsity"] = number(sw.sparsity());
  r.doc["embedding"] = {{"avgd", number(emb.avgd)},
                        {"beta", emb.beta},
                        {"source", emb.source},
                        {"anchor_size", emb.anchor_size},
                        {"candidates", emb.candidates}};
  r.doc["bound"] = number(bound);
  r.doc["ratio"] = m.objective > 0 ? number(sw.sparsity() / m.objective) : Json(nullptr);
  r.doc["log2_k"] = std::log2(k);
  if (auto b = brute(inst, false, c)) {
    r.doc["brute_optimum"] = b->sparsity();
    r.row("brute optimum", b->sparsity());
    check(r, checks, "optimum <= rounded", b->sparsity() <= sw.sparsity() + c.tol);
    check(r, checks, "relaxation <= optimum", m.objective <= b->sparsity() + c.tol);
  }
  r.doc["checks"] = checks;
  return r;
}

pf::EdgeSet edges_by_id(const pf::PolymatroidalNetwork& net, const std::vector<std::string>& ids) {
  pf::EdgeSet f;
  if (ids.empty()) {
    for (std::size_t e = 0; e < net.num_edges(); ++e) f.push_back(e);
    return f;
  }
  for (const auto& id : ids) {
    std::size_t e = 0;
    while (e < net.num_edges() && net.edge(e).id != id) ++e;
    if (e == net.num_edges()) throw pf::InputError("--edges: unknown edge '" + id + "'");
    f.push_back(e);
  }
  return f;
}

Report bipartition(const pf::Instance& inst, const std::vector<std::string>& ids, const Common& c) {
  Report r;
  r.doc = header("bipartition", c);
  const pf::EdgeSet f = edges_by_id(inst.network, ids);
  const auto given = pf::evaluate_cut(inst.network, f, inst.demands, cut_options(c));
  const auto res = pf::to_bipartition_cut(inst.network, f, inst.demands, {cut_options(c)});
  Json checks = Json::array();
  r.row("input cut", cut_ids(inst.network, given.edges));
  add_header_rows(r, c);
  r.row("input sparsity", given.sparsity());
  r.row("components", std::to_string(res.components));
  r.row("method", res.method);
  r.row("bi-partition cut", cut_ids(inst.network, res.cut.edges));
  r.row("sparsity", res.sparsity());
  r.row("ratio", res.sparsity() / given.sparsity());
  check(r, checks, "sparsity <= 2 input", res.sparsity() <= 2 * given.sparsity() * (1 + c.tol) + c.tol);
  check(r, checks, "crossing >= half", res.crossing >= res.separated / 2 * (1 - c.tol));
  std::vector<std::string> side;
  for (std::size_t v = 0; v < res.side.size(); ++v) {
    if (res.side[v]) side.push_back(inst.network.node_id(v));
  }
  r.doc["input"] = pf::io::cut_json(inst.network, given);
  r.doc["side"] = side;
  r.doc["components"] = res.components;
  r.doc["method"] = res.method;
  r.doc["cut"] = pf::io::cut_json(inst.network, res.cut);
  r.doc["crossing_demand"] = res.crossing;
  r.doc["sparsity"] = number(res.sparsity());
  r.doc["ratio"] = number(res.sparsity() / given.sparsity());
  r.doc["checks"] = checks;
  return r;
}

Report reduce_cmd(const pf::Instance& inst, const std::string& kind, const Common& c) {
  Report r;
  const auto m = relaxation(inst, kind);
  const auto red = pf::reduce(inst.network, m);
  r.doc = header("reduce", c);
  r.doc["relaxation"] = kind;
  r.doc["objective"] = m.objective;
  r.doc["reduced"] = pf::io::reduced_json(inst.network, red);
  r.row("relaxation", kind);
  add_header_rows(r, c);
  r.row("objective", m.objective);
  r.row("reduced nodes", std::to_string(red.num_nodes()));
  r.row("reduced arcs", std::to_string(red.arcs.size()));
  r.row("total volume", red.total_volume());
  return r;
}

Report verify(const pf::Instance& inst, const Common& c) {
  Report r;
  r.doc = header("verify", c);
  const auto& net = inst.network;
  Json checks = Json::array();
  r.row("nodes", std::to_string(net.num_nodes()));
  r.row("edges", std::to_string(net.num_edges()));
  add_header_rows(r, c);

  bool poly = true;
  for (std::size_t o = 0; o < net.num_oracles(); ++o) {
    if (net.oracle(o).size() <= pf::kMaxCheckGroundSize) poly = poly && pf::check_polymatroid(net.oracle(o)).ok();
  }
  check(r, checks, "capacities are polymatroids", poly);

  const auto eq = pf::verify_dual_equivalence(net, inst.demands);
  check(r, checks, "throughput = multicut relaxation", eq.multicut_residual <= c.tol * (1 + eq.throughput),
        Report::fmt(eq.multicut_residual));
  if (eq.concurrent_defined) {
    check(r, checks, "concurrent = sparsest relaxation", eq.sparsest_residual <= c.tol * (1 + eq.concurrent),
          Report::fmt(eq.sparsest_residual));
  }
  for (const bool tp : {true, false}) {
    if (!tp && !eq.concurrent_defined) continue;
    const auto f = tp ? pf::max_throughput_flow(net, inst.demands) : pf::max_concurrent_flow(net, inst.demands);
    check(r, checks, std::string(tp ? "throughput" : "concurrent") + " flow feasible",
          pf::check_flow_feasibility(net, f, c.tol).feasible);
  }
  const auto mc = pf::solve_multicut_relaxation(net, inst.demands);
  const auto cm = pf::check_metric(net, mc, inst.demands);
  check(r, checks, "multicut metric valid",
        cm.constraint_violation <= c.tol && cm.negativity <= c.tol && cm.split_residual <= c.tol);
  std::optional<pf::FractionalCutMetric> sp;
  if (eq.concurrent_defined) {
    sp = pf::solve_sparsest_relaxation(net, inst.demands);
    const auto cs = pf::check_metric(net, *sp, inst.demands);
    check(r, checks, "sparsest metric valid",
          cs.constraint_violation <= c.tol && cs.negativity <= c.tol && cs.split_residual <= c.tol);
  }
  if (auto b = brute(inst, true, c)) {
    check(r, checks, "relaxation <= min multicut", mc.objective <= b->cost + c.tol);
    check(r, checks, "brute multicut separates all", b->separation.all_cut());
  }
  if (sp) {
    if (auto b = brute(inst, false, c)) check(r, checks, "relaxation <= sparsest cut", sp->objective <= b->sparsity() + c.tol);
  }

  if (net.directed()) {
    const auto red = pf::reduce(net, mc);
    check(r, checks, "reduced volume = objective",
          std::abs(red.total_volume() - mc.objective) <= 1e-9 * (1 + mc.objective));
    check(r, checks, "reduced node count", red.num_nodes() == net.num_nodes() + 3 * net.num_edges());
  } else {
    if (!inst.demands.pairs.empty()) {
      const auto res = pf::round_multicut(net, mc, inst.demands, {cut_options(c)});
      check(r, checks, "rounded multicut valid",
            res.cut.separation.all_cut() && res.cut.cost <= res.bound * (1 + c.tol) + c.tol);
    }
    if (sp) {
      const auto dist = pf::shortest_distances(net, sp->length);
      const auto emb = pf::line_embed(dist, pf::demand_weights(inst.demands), c.trials, c.seed);
      const auto sw = pf::sweep_sparsest_cut(net, *sp, inst.demands, emb, {cut_options(c)});
      check(r, checks, "sweep within 2 avgd relaxation",
            sw.sparsity() <= 2 * emb.avgd * sp->objective * (1 + c.tol) + c.tol);
    }
  }
  r.doc["checks"] = checks;
  r.doc["pass"] = !r.failed;
  r.row("result", r.failed ? "FAIL" : "PASS");
  return r;
}

struct GapParams {
  std::size_t nodes = 6, edges = 9, k = 3;
  bool directed = false, symmetric = false;
  std::string problem = "sparsest";
  std::size_t threads = 0;
};

struct GapRow {
  std::uint64_t seed = 0;
  double flow = 0, relax = 0, rounded = std::nan(""), brute = std::nan("");
  std::string error;
};

GapRow gap_trial(std::uint64_t seed, const GapParams& g, const Common& c) {
  GapRow row;
  row.seed = seed;
  try {
    pf::InstanceGenParams p;
    p.nodes = g.nodes;
    p.edges = g.edges;
    p.pairs = g.k;
    p.symmetric = g.symmetric;
    p.orientation = g.directed ? pf::Orientation::Directed : pf::Orientation::Undirected;
    p.seed = seed;
    const pf::Instance inst = pf::generate_instance(p);
    const bool mc = g.problem == "multicut";
    if (mc) {
      const auto f = pf::max_throughput_flow(inst.network, inst.demands);
      row.flow = inst.demands.symmetric ? f.objective / 2 : f.objective;
    } else {
      row.flow = pf::max_concurrent_flow(inst.network, inst.demands).objective;
    }
    const auto m = relaxation(inst, g.problem);
    row.relax = m.objective;
    if (!g.directed) {
      if (mc) {
        row.rounded = pf::round_multicut(inst.network, m, inst.demands, {cut_options(c)}).cut.cost;
      } else {
        const auto dist = pf::shortest_distances(inst.network, m.length);
        const auto emb = pf::line_embed(dist, pf::demand_weights(inst.demands), c.trials, seed);
        row.rounded = pf::sweep_sparsest_cut(inst.network, m, inst.demands, emb, {cut_options(c)}).sparsity();
      }
    }
    if (auto b = brute(inst, mc, c)) row.brute = mc ? b->cost : b->sparsity();
  } catch (const pf::Error& e) {
    row.error = e.what();
  }
  return row;
}

Report gap_report(const GapParams& g, const Common& c) {
  Report r;
  r.doc = header("gap-report", c);
  r.doc["params"] = {{"nodes", g.nodes}, {"edges", g.edges}, {"k", g.k}, {"directed", g.directed},
                     {"symmetric", g.symmetric}, {"problem", g.problem}, {"trials", c.trials}};
  std::vector<std::uint64_t> seeds(c.trials);
  const pf::CounterRng base = pf::CounterRng(c.seed).split("gap-report");
  for (std::size_t t = 0; t < c.trials; ++t) seeds[t] = base.split(t).key();

  std::vector<GapRow> rows(c.trials);
  std::atomic<std::size_t> next{0};
  std::size_t nthreads = g.threads ? g.threads : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min(nthreads, std::max<std::size_t>(c.trials, 1));
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < nthreads; ++i) {
    pool.emplace_back([&] {
      for (std::size_t t; (t = next++) < c.trials;) rows[t] = gap_trial(seeds[t], g, c);
    });
  }
  for (auto& th : pool) th.join();

  r.row("problem", g.problem);
  add_header_rows(r, c);
  r.row("trials", std::to_string(c.trials));
  std::ostringstream hdr;
  hdr << std::left << std::setw(6) << "trial" << std::setw(22) << "seed" << std::setw(14) << "flow"
      << std::setw(14) << "relaxation" << std::setw(14) << "rounded" << std::setw(14) << "brute"
      << std::setw(12) << "rnd/rel" << "brute/rel";
  r.table.push_back(hdr.str());
  Json trials = Json::array();
  double worst = 0.0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const GapRow& row = rows[t];
    const double rr = row.rounded / row.relax, br = row.brute / row.relax;
    Json tj{{"trial", t}, {"seed", row.seed}};
    if (!row.error.empty()) {
      tj["error"] = row.error;
      r.table.push_back(std::to_string(t) + "  error: " + row.error);
      r.failed = true;
    } else {
      tj["flow"] = number(row.flow);
      tj["relaxation"] = number(row.relax);
      tj["rounded"] = number(row.rounded);
      tj["brute"] = number(row.brute);
      tj["rounded_over_relaxation"] = number(rr);
      tj["brute_over_relaxation"] = number(br);
      if (std::isfinite(rr)) worst = std::max(worst, rr);
      std::ostringstream os;
      os << std::left << std::setw(6) << t << std::setw(22) << row.seed << std::setw(14)
         << Report::fmt(row.flow) << std::setw(14) << Report::fmt(row.relax) << std::setw(14)
         << Report::fmt(row.rounded) << std::setw(14) << Report::fmt(row.brute) << std::setw(12)
         << Report::fmt(rr) << Report::fmt(br);
      r.table.push_back(os.str());
    }
    trials.push_back(tj);
  }
  r.doc["trials"] = trials;
  r.doc["worst_rounded_ratio"] = worst;
  r.row("worst rounded/relaxation", worst);
  return r;
}

int exit_for(const std::exception& e, int code) {
  std::cerr << "polyflow: " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polyflow: flows and cuts in polymatroidal networks"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* s) {
    s->add_option("--seed", c.seed, "random seed");
    s->add_option("--trials", c.trials, "embedding trials per anchor size, or gap-report trials");
    s->add_option("--tol", c.tol, "tolerance for reported checks");
    s->add_option("--max-brute-edges", c.max_brute_edges, "skip brute force above this many edges")
        ->check(CLI::Range(std::size_t{0}, pf::kMaxBruteEdges));
    s->add_option("--max-cut-edges", c.max_cut_edges, "exact cut cost up to this many edges");
    s->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--output,-o", c.output, "write the report here instead of stdout");
  };
  std::string path, problem = "concurrent", kind = "sparsest", reduce_kind = "multicut";
  std::vector<std::string> edge_ids;

  auto* sf = app.add_subcommand("solve-flow", "maximum throughput or concurrent flow");
  sf->add_option("instance", path)->required();
  sf->add_option("--problem", problem)->check(CLI::IsMember({"throughput", "concurrent"}));
  common(sf);
  auto* sr = app.add_subcommand("solve-relaxation", "multicut or sparsest cut relaxation");
  sr->add_option("instance", path)->required();
  sr->add_option("--kind", kind)->check(CLI::IsMember({"multicut", "sparsest"}));
  common(sr);
  auto* rm = app.add_subcommand("round-multicut", "region-growing multicut (undirected)");
  rm->add_option("instance", path)->required();
  common(rm);
  auto* rs = app.add_subcommand("round-sparsest", "line embedding + threshold sweep (undirected)");
  rs->add_option("instance", path)->required();
  common(rs);
  auto* bp = app.add_subcommand("bipartition", "turn a cut into a bi-partition cut (undirected)");
  bp->add_option("instance", path)->required();
  bp->add_option("--edges", edge_ids, "edge ids of F (default: all edges)")->delimiter(',');
  common(bp);
  auto* rd = app.add_subcommand("reduce", "reduce to an edge-capacitated network (directed)");
  rd->add_option("instance", path)->required();
  rd->add_option("--kind", reduce_kind)->check(CLI::IsMember({"multicut", "sparsest"}));
  common(rd);
  auto* vf = app.add_subcommand("verify", "run the invariant suite on an instance");
  vf->add_option("instance", path)->required();
  common(vf);

  GapParams g;
  auto* gr = app.add_subcommand("gap-report", "seeded random trials: flow, relaxation, rounding, brute force");
  gr->add_option("--nodes", g.nodes);
  gr->add_option("--edges", g.edges);
  gr->add_option("--k", g.k, "demand pairs");
  gr->add_flag("--directed", g.directed);
  gr->add_flag("--symmetric", g.symmetric);
  gr->add_option("--problem", g.problem)->check(CLI::IsMember({"multicut", "sparsest"}));
  gr->add_option("--threads", g.threads, "worker threads (default: hardware)");
  common(gr);

  pf::InstanceGenParams gp;
  bool gdir = false, modular = false;
  auto* gn = app.add_subcommand("gen", "write a random instance");
  gn->add_option("--nodes", gp.nodes);
  gn->add_option("--edges", gp.edges);
  gn->add_option("--k", gp.pairs, "demand pairs");
  gn->add_flag("--directed", gdir);
  gn->add_flag("--symmetric", gp.symmetric);
  gn->add_flag("--unit-demands", gp.unit_demands);
  gn->add_flag("--modular-only", modular);
  gn->add_option("--max-weight", gp.max_weight);
  common(gn);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    Report r;
    if (gn->parsed()) {
      gp.seed = c.seed;
      gp.orientation = gdir ? pf::Orientation::Directed : pf::Orientation::Undirected;
      if (modular) gp.mix = pf::FamilyMix::modular_only();
      const pf::Instance inst = pf::generate_instance(gp);
      const std::string text = pf::io::instance_json(inst).dump(2) + "\n";
      if (c.output.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(c.output);
        if (!out) throw pf::InputError(c.output + ": cannot write");
        out << text;
      }
      return kExitOk;
    }
    if (gr->parsed()) {
      r = gap_report(g, c);
    } else {
      const pf::Instance inst = pf::io::load_instance(path);
      if (sf->parsed()) r = solve_flow(inst, problem, c);
      if (sr->parsed()) r = solve_relax(inst, kind, c);
      if (rm->parsed()) r = round_mc(inst, c);
      if (rs->parsed()) r = round_sp(inst, c);
      if (bp->parsed()) r = bipartition(inst, edge_ids, c);
      if (rd->parsed()) r = reduce_cmd(inst, reduce_kind, c);
      if (vf->parsed()) r = verify(inst, c);
      r.doc["instance"] = path;
    }
    emit(r, c);
    return r.failed ? kExitInternal : kExitOk;
  } catch (const pf::InputError& e) {
    return exit_for(e, kExitInput);
  } catch (const pf::CapabilityError& e) {
    return exit_for(e, kExitCapability);
  } catch (const pf::Error& e) {
    return exit_for(e, kExitInternal);
  } catch (const std::exception& e) {
    return exit_for(e, kExitInternal);
  }
}
