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

#include "polyflow/lp.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "polyflow/rng.hpp"

namespace polyflow::lp {
namespace {

TEST(SolveLp, MaximizeSingleBound) {
  LinearProgram prog(Sense::Maximize);
  const auto x = prog.add_variable(0.0, kInf, 1.0);
  prog.add_constraint({{x, 1.0}}, Relation::LessEqual, 3.0);
  const LpSolution sol = solve_lp(prog);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_DOUBLE_EQ(sol.objective, 3.0);
  EXPECT_DOUBLE_EQ(sol.primal[x], 3.0);
  EXPECT_NEAR(sol.dual[0], 1.0, 1e-12);
}

TEST(SolveLp, DetectsInfeasibility) {
  LinearProgram prog(Sense::Minimize);
  const auto x = prog.add_variable(-kInf, kInf, 0.0);
  prog.add_constraint({{x, 1.0}}, Relation::GreaterEqual, 1.0);
  prog.add_constraint({{x, 1.0}}, Relation::LessEqual, 0.0);
  EXPECT_EQ(solve_lp(prog).status, LpStatus::Infeasible);
}

TEST(SolveLp, DetectsUnboundedness) {
  LinearProgram prog(Sense::Maximize);
  const auto x = prog.add_variable(0.0, kInf, 1.0);
  const auto y = prog.add_variable(0.0, kInf, 0.0);
  prog.add_constraint({{x, 1.0}, {y, -1.0}}, Relation::LessEqual, 1.0);
  EXPECT_EQ(solve_lp(prog).status, LpStatus::Unbounded);
}

TEST(SolveLp, DualIsRhsSensitivity) {
  // min x s.t. x >= 2: raising the rhs by one raises the optimum by one.
  LinearProgram prog(Sense::Minimize);
  const auto x = prog.add_variable(0.0, kInf, 1.0);
  prog.add_constraint({{x, 1.0}}, Relation::GreaterEqual, 2.0);
  const LpSolution sol = solve_lp(prog);
  EXPECT_NEAR(sol.objective, 2.0, 1e-12);
  EXPECT_NEAR(sol.dual[0], 1.0, 1e-12);
  EXPECT_NEAR(sol.reduced_cost[x], 0.0, 1e-12);
}

TEST(SolveLp, HandlesAllBoundKinds) {
  // Fixed, shifted with upper bound, upper-only and free variables together.
  LinearProgram prog(Sense::Minimize);
  const auto a = prog.add_variable(2.0, 2.0, 1.0);
  const auto b = prog.add_variable(-1.0, 4.0, 1.0);
  const auto c = prog.add_variable(-kInf, 3.0, -1.0);
  const auto d = prog.add_variable(-kInf, kInf, 1.0);
  prog.add_constraint({{d, 1.0}, {b, -1.0}}, Relation::GreaterEqual, -2.0);
  prog.add_constraint({{d, 1.0}}, Relation::GreaterEqual, -5.0);
  prog.add_constraint({{a, 1.0}, {c, 1.0}}, Relation::LessEqual, 10.0);
  const LpSolution sol = solve_lp(prog);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  // a = 2, c = 3, b = -1, d = -3.
  EXPECT_NEAR(sol.primal[a], 2.0, 1e-12);
  EXPECT_NEAR(sol.primal[b], -1.0, 1e-12);
  EXPECT_NEAR(sol.primal[c], 3.0, 1e-12);
  EXPECT_NEAR(sol.primal[d], -3.0, 1e-12);
  EXPECT_NEAR(sol.objective, 2.0 - 1.0 - 3.0 - 3.0, 1e-12);
  EXPECT_LT(certify(prog, sol).worst(), 1e-9);
}

TEST(SolveLp, RedundantEqualitiesAreTolerated) {
  LinearProgram prog(Sense::Maximize);
  const auto x = prog.add_variable(0.0, kInf, 1.0);
  const auto y = prog.add_variable(0.0, kInf, 1.0);
  prog.add_constraint({{x, 1.0}, {y, 1.0}}, Relation::Equal, 4.0);
  prog.add_constraint({{x, 2.0}, {y, 2.0}}, Relation::Equal, 8.0);
  prog.add_constraint({}, Relation::Equal, 0.0);
  const LpSolution sol = solve_lp(prog);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_NEAR(sol.objective, 4.0, 1e-12);
}

TEST(SolveLp, RejectsMalformedPrograms) {
  LinearProgram empty;
  EXPECT_THROW(solve_lp(empty), InputError);
  LinearProgram bad;
  const auto x = bad.add_variable(1.0, 0.0, 0.0);
  (void)x;
  EXPECT_THROW(solve_lp(bad), InputError);
  LinearProgram nan_coef;
  const auto y = nan_coef.add_variable(0.0, 1.0, 0.0);
  nan_coef.add_constraint({{y, std::nan("")}}, Relation::LessEqual, 1.0);
  EXPECT_THROW(solve_lp(nan_coef), InputError);
}

TEST(SolveLp, DegenerateCyclingExample) {
  // Beale's example cycles under textbook Dantzig pricing without a fallback.
  LinearProgram prog(Sense::Minimize);
  const auto x1 = prog.add_variable(0.0, kInf, -0.75);
  const auto x2 = prog.add_variable(0.0, kInf, 150.0);
  const auto x3 = prog.add_variable(0.0, kInf, -0.02);
  const auto x4 = prog.add_variable(0.0, kInf, 6.0);
  prog.add_constraint({{x1, 0.25}, {x2, -60.0}, {x3, -0.04}, {x4, 9.0}}, Relation::LessEqual, 0.0);
  prog.add_constraint({{x1, 0.5}, {x2, -90.0}, {x3, -0.02}, {x4, 3.0}}, Relation::LessEqual, 0.0);
  prog.add_constraint({{x3, 1.0}}, Relation::LessEqual, 1.0);
  LpOptions opts;
  opts.degenerate_limit = 2;
  const LpSolution sol = solve_lp(prog, opts);
  ASSERT_EQ(sol.status, LpStatus::Optimal);
  EXPECT_NEAR(sol.objective, -0.05, 1e-12);
}

// Independent oracle: write the LP as G x <= h (rows plus box bounds), solve
// every n x n subsystem and keep the best feasible vertex.
double vertex_enumeration_optimum(const LinearProgram& prog) {
  const std::size_t n = prog.num_variables();
  std::vector<std::vector<double>> g;
  std::vector<double> h;
  for (const auto& row : prog.constraints()) {
    std::vector<double> a(n, 0.0);
    for (const auto& t : row.terms) a[t.var] += t.coef;
    if (row.relation != Relation::GreaterEqual) {
      g.push_back(a);
      h.push_back(row.rhs);
    }
    if (row.relation != Relation::LessEqual) {
      for (double& v : a) v = -v;
      g.push_back(a);
      h.push_back(-row.rhs);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> a(n, 0.0);
    a[j] = 1.0;
    g.push_back(a);
    h.push_back(prog.variables()[j].upper);
    a[j] = -1.0;
    g.push_back(a);
    h.push_back(-prog.variables()[j].lower);
  }
  const std::size_t m = g.size();
  const double sign = prog.sense() == Sense::Minimize ? 1.0 : -1.0;
  double best = kInf;
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  for (;;) {
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) a[r][c] = g[pick[r]][c];
      a[r][n] = h[pick[r]];
    }
    bool singular = false;
    for (std::size_t c = 0; c < n && !singular; ++c) {
      std::size_t p = c;
      for (std::size_t r = c + 1; r < n; ++r) {
        if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
      }
      if (std::abs(a[p][c]) < 1e-10) {
        singular = true;
        break;
      }
      std::swap(a[p], a[c]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c) continue;
        const double f = a[r][c] / a[c][c];
        for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
      }
    }
    if (!singular) {
      std::vector<double> x(n);
      for (std::size_t c = 0; c < n; ++c) x[c] = a[c][n] / a[c][c];
      bool feasible = true;
      for (std::size_t r = 0; r < m && feasible; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < n; ++c) s += g[r][c] * x[c];
        feasible = s <= h[r] + 1e-9 * (1.0 + std::abs(h[r]));
      }
      if (feasible) best = std::min(best, sign * prog.evaluate_objective(x));
    }
    // Next combination of n rows out of m.
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == m - n + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < n; ++k) pick[k] = pick[k - 1] + 1;
  }
  return sign * best;
}

LinearProgram random_box_lp(CounterRng& rng, std::size_t n, std::size_t rows) {
  LinearProgram prog(rng.bernoulli(0.5) ? Sense::Minimize : Sense::Maximize);
  std::vector<double> x0(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = static_cast<double>(rng.uniform_int(-3, 1));
    const double hi = lo + static_cast<double>(rng.uniform_int(1, 5));
    prog.add_variable(lo, hi, static_cast<double>(rng.uniform_int(-5, 5)));
    x0[j] = lo + (hi - lo) * rng.uniform01();
  }
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<Term> terms;
    double act = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (rng.bernoulli(0.3)) continue;
      const double a = static_cast<double>(rng.uniform_int(-4, 4));
      terms.push_back({j, a});
      act += a * x0[j];
    }
    const int kind = static_cast<int>(rng.uniform_int(0, 4));
    if (kind == 0) {
      prog.add_constraint(std::move(terms), Relation::Equal, act);
    } else if (kind <= 2) {
      prog.add_constraint(std::move(terms), Relation::LessEqual, act + rng.uniform01());
    } else {
      prog.add_constraint(std::move(terms), Relation::GreaterEqual, act - rng.uniform01());
    }
  }
  return prog;
}

TEST(SolveLp, MatchesVertexEnumerationOnRandomLps) {
  CounterRng rng(20260101);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    CounterRng r = rng.split(static_cast<std::uint64_t>(trial));
    const std::size_t n = trial == 39 ? 10 : 1 + r.index(8);
    const std::size_t rows = trial == 39 ? 2 : r.index(5);
    const LinearProgram prog = random_box_lp(r, n, rows);
    const LpSolution sol = solve_lp(prog);
    ASSERT_EQ(sol.status, LpStatus::Optimal) << "trial " << trial;
    const double oracle = vertex_enumeration_optimum(prog);
    EXPECT_NEAR(sol.objective, oracle, 1e-8) << "trial " << trial;
    const LpCertificate cert = certify(prog, sol);
    EXPECT_LT(cert.worst(), 1e-7 * (1.0 + std::abs(sol.objective))) << "trial " << trial;
    ++checked;
  }
  EXPECT_EQ(checked, 40);
}

TEST(SolveLp, DeterministicAcrossRuns) {
  CounterRng rng(99);
  const LinearProgram prog = random_box_lp(rng, 7, 5);
  const LpSolution a = solve_lp(prog), b = solve_lp(prog);
  EXPECT_EQ(a.primal, b.primal);
  EXPECT_EQ(a.dual, b.dual);
}

}  // namespace
}  // namespace polyflow::lp
