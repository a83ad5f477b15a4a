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

// Dense two-phase revised simplex with an explicit basis inverse.
//
// The solver targets the small LPs produced by subset enumeration (a few
// hundred rows, up to ~65k columns). It keeps B^-1 as a dense matrix,
// updates it by elementary row operations after each pivot and rebuilds it
// from scratch every `refactor_period` pivots. Pricing is Dantzig's rule;
// after `degenerate_limit` consecutive degenerate pivots the solver switches
// to Bland's rule until the objective moves again, which rules out cycling.
//
// Duals are reported as sensitivities d(objective)/d(rhs_i) in the sense of
// the original problem, so for a minimization a binding <= row has a
// non-positive dual and for a maximization a non-negative one.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "polyflow/error.hpp"

namespace polyflow::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { Minimize, Maximize };
enum class Relation { LessEqual, Equal, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct Term {
  std::size_t var;
  double coef;
};

struct Constraint {
  std::vector<Term> terms;
  Relation relation;
  double rhs;
};

struct Variable {
  double lower = 0.0;
  double upper = kInf;
  double cost = 0.0;
};

class LinearProgram {
 public:
  explicit LinearProgram(Sense sense = Sense::Minimize) : sense_(sense) {}

  std::size_t add_variable(double lower, double upper, double cost) {
    vars_.push_back({lower, upper, cost});
    return vars_.size() - 1;
  }

  std::size_t add_constraint(std::vector<Term> terms, Relation relation, double rhs) {
    rows_.push_back({std::move(terms), relation, rhs});
    return rows_.size() - 1;
  }

  void set_cost(std::size_t var, double cost) { vars_.at(var).cost = cost; }
  void set_sense(Sense sense) { sense_ = sense; }

  Sense sense() const { return sense_; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  std::size_t num_variables() const { return vars_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }

  double evaluate_objective(const std::vector<double>& x) const {
    double z = 0.0;
    for (std::size_t j = 0; j < vars_.size(); ++j) z += vars_[j].cost * x[j];
    return z;
  }

  double row_activity(std::size_t i, const std::vector<double>& x) const {
    double a = 0.0;
    for (const Term& t : rows_[i].terms) a += t.coef * x[t.var];
    return a;
  }

  void validate() const {
    if (vars_.empty()) throw InputError("linear program has no variables");
    for (std::size_t j = 0; j < vars_.size(); ++j) {
      const Variable& v = vars_[j];
      if (std::isnan(v.lower) || std::isnan(v.upper) || !std::isfinite(v.cost)) {
        throw InputError("variable " + std::to_string(j) + " has a non-finite cost or NaN bound");
      }
      if (v.lower > v.upper) {
        throw InputError("variable " + std::to_string(j) + " has lower bound above upper bound");
      }
      if (v.lower == kInf || v.upper == -kInf) {
        throw InputError("variable " + std::to_string(j) + " has an empty domain");
      }
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (!std::isfinite(rows_[i].rhs)) {
        throw InputError("constraint " + std::to_string(i) + " has a non-finite rhs");
      }
      for (const Term& t : rows_[i].terms) {
        if (t.var >= vars_.size()) {
          throw InputError("constraint " + std::to_string(i) + " references unknown variable");
        }
        if (!std::isfinite(t.coef)) {
          throw InputError("constraint " + std::to_string(i) + " has a non-finite coefficient");
        }
      }
    }
  }

 private:
  Sense sense_;
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
};

struct LpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-8;
  double pivot_tol = 1e-9;
  std::size_t max_iterations = 500000;
  std::size_t refactor_period = 64;
  std::size_t degenerate_limit = 50;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> primal;
  std::vector<double> dual;          // one per constraint
  std::vector<double> reduced_cost;  // c_j - a_j^T y, one per variable
  std::size_t iterations = 0;
  std::size_t bland_pivots = 0;

  bool optimal() const { return status == LpStatus::Optimal; }
};

namespace detail {

// How an original variable maps onto non-negative standard-form columns.
struct ColumnMap {
  enum class Kind { Fixed, Shifted, Negated, Free } kind;
  double offset = 0.0;  // lo for Shifted, hi for Negated, value for Fixed
  std::size_t col = 0;  // first standard column
};

class DenseSimplex {
 public:
  DenseSimplex(std::size_t rows, std::size_t cols, const LpOptions& opts)
      : m_(rows), n_(cols), opts_(opts), a_(rows * cols, 0.0), b_(rows, 0.0),
        allowed_(cols, true) {}

  double& at(std::size_t i, std::size_t j) { return a_[j * m_ + i]; }
  double at(std::size_t i, std::size_t j) const { return a_[j * m_ + i]; }
  std::vector<double>& rhs() { return b_; }

  void set_basis(std::vector<std::size_t> basis) {
    basis_ = std::move(basis);
    position_.assign(n_, kNotBasic);
    for (std::size_t r = 0; r < m_; ++r) position_[basis_[r]] = r;
    refactor();
  }

  void forbid(std::size_t j) { allowed_[j] = false; }

  // Runs simplex iterations for `cost`; returns false if unbounded.
  bool optimize(const std::vector<double>& cost) {
    std::size_t degenerate_run = 0;
    bool bland = false;
    std::vector<double> y(m_), alpha(m_);
    for (;;) {
      if (iterations_ >= opts_.max_iterations) {
        throw SolverError("simplex iteration limit reached", basis_);
      }
      if (since_refactor_ >= opts_.refactor_period) refactor();
      duals(cost, y);

      std::size_t entering = kNotBasic;
      double best = -opts_.optimality_tol;
      for (std::size_t j = 0; j < n_; ++j) {
        if (position_[j] != kNotBasic || !allowed_[j]) continue;
        double d = cost[j];
        const double* col = &a_[j * m_];
        for (std::size_t i = 0; i < m_; ++i) d -= y[i] * col[i];
        if (bland) {
          if (d < -opts_.optimality_tol) {
            entering = j;
            break;
          }
        } else if (d < best) {
          best = d;
          entering = j;
        }
      }
      if (entering == kNotBasic) return true;

      ftran(entering, alpha);
      double theta = kInf;
      for (std::size_t i = 0; i < m_; ++i) {
        if (alpha[i] > opts_.pivot_tol) theta = std::min(theta, std::max(x_[i], 0.0) / alpha[i]);
      }
      if (theta == kInf) return false;
      std::size_t leave = kNotBasic;
      const double slack = 1e-12 + 1e-12 * theta;
      for (std::size_t i = 0; i < m_; ++i) {
        if (alpha[i] <= opts_.pivot_tol) continue;
        if (std::max(x_[i], 0.0) / alpha[i] > theta + slack) continue;
        if (leave == kNotBasic) {
          leave = i;
        } else if (bland ? basis_[i] < basis_[leave] : alpha[i] > alpha[leave]) {
          leave = i;
        }
      }
      if (theta <= 1e-12) {
        if (++degenerate_run > opts_.degenerate_limit) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      if (bland) ++bland_pivots_;
      pivot(leave, entering, alpha);
    }
  }

  // Pivots basic column at `row` out for any allowed non-basic column with a
  // usable entry in that row. Returns false if the row is redundant.
  bool evict(std::size_t row) {
    std::size_t best_j = kNotBasic;
    double best_v = 1e-9;
    for (std::size_t j = 0; j < n_; ++j) {
      if (position_[j] != kNotBasic || !allowed_[j]) continue;
      double v = 0.0;
      for (std::size_t i = 0; i < m_; ++i) v += binv_[row * m_ + i] * at(i, j);
      if (std::abs(v) > best_v) {
        best_v = std::abs(v);
        best_j = j;
      }
    }
    if (best_j == kNotBasic) return false;
    std::vector<double> alpha(m_);
    ftran(best_j, alpha);
    pivot(row, best_j, alpha);
    x_[row] = std::max(x_[row], 0.0);
    return true;
  }

  void refactor() {
    std::vector<double> work(m_ * m_);
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t i = 0; i < m_; ++i) work[i * m_ + r] = at(i, basis_[r]);
    }
    binv_.assign(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) binv_[i * m_ + i] = 1.0;
    for (std::size_t c = 0; c < m_; ++c) {
      std::size_t p = c;
      for (std::size_t i = c + 1; i < m_; ++i) {
        if (std::abs(work[i * m_ + c]) > std::abs(work[p * m_ + c])) p = i;
      }
      if (std::abs(work[p * m_ + c]) < 1e-13) {
        throw SolverError("basis matrix became singular", basis_);
      }
      if (p != c) {
        for (std::size_t k = 0; k < m_; ++k) {
          std::swap(work[p * m_ + k], work[c * m_ + k]);
          std::swap(binv_[p * m_ + k], binv_[c * m_ + k]);
        }
      }
      const double inv = 1.0 / work[c * m_ + c];
      for (std::size_t k = 0; k < m_; ++k) {
        work[c * m_ + k] *= inv;
        binv_[c * m_ + k] *= inv;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == c) continue;
        const double f = work[i * m_ + c];
        if (f == 0.0) continue;
        for (std::size_t k = 0; k < m_; ++k) {
          work[i * m_ + k] -= f * work[c * m_ + k];
          binv_[i * m_ + k] -= f * binv_[c * m_ + k];
        }
      }
    }
    x_.assign(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      double s = 0.0;
      for (std::size_t i = 0; i < m_; ++i) s += binv_[r * m_ + i] * b_[i];
      x_[r] = (s < 0.0 && s > -opts_.feasibility_tol) ? 0.0 : s;
    }
    since_refactor_ = 0;
  }

  void duals(const std::vector<double>& cost, std::vector<double>& y) const {
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t i = 0; i < m_; ++i) y[i] += cb * binv_[r * m_ + i];
    }
  }

  std::vector<double> column_values() const {
    std::vector<double> v(n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) v[basis_[r]] = x_[r];
    return v;
  }

  const std::vector<std::size_t>& basis() const { return basis_; }
  std::size_t position(std::size_t j) const { return position_[j]; }
  double basic_value(std::size_t r) const { return x_[r]; }
  std::size_t iterations() const { return iterations_; }
  std::size_t bland_pivots() const { return bland_pivots_; }

  static constexpr std::size_t kNotBasic = std::numeric_limits<std::size_t>::max();

 private:
  void ftran(std::size_t j, std::vector<double>& alpha) const {
    const double* col = &a_[j * m_];
    for (std::size_t r = 0; r < m_; ++r) {
      double s = 0.0;
      const double* row = &binv_[r * m_];
      for (std::size_t i = 0; i < m_; ++i) s += row[i] * col[i];
      alpha[r] = s;
    }
  }

  void pivot(std::size_t r, std::size_t q, const std::vector<double>& alpha) {
    const double inv = 1.0 / alpha[r];
    double* prow = &binv_[r * m_];
    for (std::size_t k = 0; k < m_; ++k) prow[k] *= inv;
    x_[r] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || alpha[i] == 0.0) continue;
      const double f = alpha[i];
      double* row = &binv_[i * m_];
      for (std::size_t k = 0; k < m_; ++k) row[k] -= f * prow[k];
      x_[i] -= f * x_[r];
      if (x_[i] < 0.0 && x_[i] > -opts_.feasibility_tol) x_[i] = 0.0;
    }
    position_[basis_[r]] = kNotBasic;
    basis_[r] = q;
    position_[q] = r;
    ++iterations_;
    ++since_refactor_;
  }

  std::size_t m_, n_;
  LpOptions opts_;
  std::vector<double> a_;      // column-major m x n
  std::vector<double> b_;
  std::vector<bool> allowed_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> position_;
  std::vector<double> binv_;   // row-major m x m
  std::vector<double> x_;
  std::size_t iterations_ = 0;
  std::size_t since_refactor_ = 0;
  std::size_t bland_pivots_ = 0;
};

}  // namespace detail

inline LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opts = {}) {
  using detail::ColumnMap;
  lp.validate();
  const auto& vars = lp.variables();
  const auto& rows = lp.constraints();
  const double sense_sign = lp.sense() == Sense::Minimize ? 1.0 : -1.0;

  // Standard form: min c'x, A x = b, x >= 0.
  std::vector<ColumnMap> maps(vars.size());
  std::size_t ncols = 0;
  std::vector<std::size_t> bounded;  // originals that need an explicit upper row
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const Variable& v = vars[j];
    ColumnMap& cm = maps[j];
    if (v.lower == v.upper) {
      cm = {ColumnMap::Kind::Fixed, v.lower, 0};
    } else if (std::isfinite(v.lower)) {
      cm = {ColumnMap::Kind::Shifted, v.lower, ncols++};
      if (std::isfinite(v.upper)) bounded.push_back(j);
    } else if (std::isfinite(v.upper)) {
      cm = {ColumnMap::Kind::Negated, v.upper, ncols++};
    } else {
      cm = {ColumnMap::Kind::Free, 0.0, ncols};
      ncols += 2;
    }
  }
  const std::size_t m = rows.size() + bounded.size();

  std::vector<std::vector<std::pair<std::size_t, double>>> srow(m);
  std::vector<double> sb(m, 0.0);
  std::vector<int> slack_sign(m, 0);
  auto push = [&](std::size_t i, std::size_t orig, double a) {
    const ColumnMap& cm = maps[orig];
    switch (cm.kind) {
      case ColumnMap::Kind::Fixed: sb[i] -= a * cm.offset; break;
      case ColumnMap::Kind::Shifted:
        sb[i] -= a * cm.offset;
        srow[i].push_back({cm.col, a});
        break;
      case ColumnMap::Kind::Negated:
        sb[i] -= a * cm.offset;
        srow[i].push_back({cm.col, -a});
        break;
      case ColumnMap::Kind::Free:
        srow[i].push_back({cm.col, a});
        srow[i].push_back({cm.col + 1, -a});
        break;
    }
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    sb[i] = rows[i].rhs;
    for (const Term& t : rows[i].terms) push(i, t.var, t.coef);
    slack_sign[i] = rows[i].relation == Relation::LessEqual ? 1
                    : rows[i].relation == Relation::GreaterEqual ? -1 : 0;
  }
  for (std::size_t k = 0; k < bounded.size(); ++k) {
    const std::size_t i = rows.size() + k;
    const Variable& v = vars[bounded[k]];
    srow[i].push_back({maps[bounded[k]].col, 1.0});
    sb[i] = v.upper - v.lower;
    slack_sign[i] = 1;
  }

  std::vector<double> row_sign(m, 1.0);
  std::vector<std::size_t> slack_col(m, detail::DenseSimplex::kNotBasic);
  for (std::size_t i = 0; i < m; ++i) {
    if (slack_sign[i] != 0) slack_col[i] = ncols++;
    if (sb[i] < 0.0) row_sign[i] = -1.0;
  }
  std::vector<std::size_t> basis(m);
  std::vector<std::size_t> artificial_col(m, detail::DenseSimplex::kNotBasic);
  for (std::size_t i = 0; i < m; ++i) {
    if (slack_sign[i] != 0 && slack_sign[i] * row_sign[i] > 0) {
      basis[i] = slack_col[i];
    } else {
      artificial_col[i] = ncols++;
      basis[i] = artificial_col[i];
    }
  }

  detail::DenseSimplex sx(m, ncols, opts);
  for (std::size_t i = 0; i < m; ++i) {
    for (auto [c, a] : srow[i]) sx.at(i, c) += row_sign[i] * a;
    if (slack_col[i] != detail::DenseSimplex::kNotBasic) {
      sx.at(i, slack_col[i]) = row_sign[i] * slack_sign[i];
    }
    if (artificial_col[i] != detail::DenseSimplex::kNotBasic) sx.at(i, artificial_col[i]) = 1.0;
    sx.rhs()[i] = row_sign[i] * sb[i];
  }

  std::vector<double> cost(ncols, 0.0);
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const double c = sense_sign * vars[j].cost;
    const ColumnMap& cm = maps[j];
    switch (cm.kind) {
      case ColumnMap::Kind::Fixed: break;
      case ColumnMap::Kind::Shifted: cost[cm.col] = c; break;
      case ColumnMap::Kind::Negated: cost[cm.col] = -c; break;
      case ColumnMap::Kind::Free:
        cost[cm.col] = c;
        cost[cm.col + 1] = -c;
        break;
    }
  }

  LpSolution sol;
  sx.set_basis(basis);

  bool any_artificial = false;
  std::vector<double> phase1(ncols, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (artificial_col[i] != detail::DenseSimplex::kNotBasic) {
      phase1[artificial_col[i]] = 1.0;
      any_artificial = true;
    }
  }
  if (any_artificial) {
    sx.optimize(phase1);
    sx.refactor();
    double infeas = 0.0, bnorm = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (phase1[sx.basis()[r]] > 0.0) infeas += std::max(sx.basic_value(r), 0.0);
      bnorm += std::abs(sx.rhs()[r]);
    }
    if (infeas > 1e-9 * (1.0 + bnorm)) {
      sol.status = LpStatus::Infeasible;
      sol.iterations = sx.iterations();
      return sol;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (artificial_col[i] != detail::DenseSimplex::kNotBasic) sx.forbid(artificial_col[i]);
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (phase1[sx.basis()[r]] > 0.0) sx.evict(r);
    }
    sx.refactor();
  }

  const bool bounded_opt = sx.optimize(cost);
  sx.refactor();
  std::vector<double> colval = sx.column_values();

  sol.primal.assign(vars.size(), 0.0);
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const ColumnMap& cm = maps[j];
    switch (cm.kind) {
      case ColumnMap::Kind::Fixed: sol.primal[j] = cm.offset; break;
      case ColumnMap::Kind::Shifted: sol.primal[j] = cm.offset + colval[cm.col]; break;
      case ColumnMap::Kind::Negated: sol.primal[j] = cm.offset - colval[cm.col]; break;
      case ColumnMap::Kind::Free: sol.primal[j] = colval[cm.col] - colval[cm.col + 1]; break;
    }
  }
  sol.iterations = sx.iterations();
  sol.bland_pivots = sx.bland_pivots();
  sol.objective = lp.evaluate_objective(sol.primal);
  if (!bounded_opt) {
    sol.status = LpStatus::Unbounded;
    sol.objective = sense_sign * kInf;
    return sol;
  }

  // A solve that drifts out of feasibility is reported rather than returned.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double act = lp.row_activity(i, sol.primal);
    double viol = 0.0;
    switch (rows[i].relation) {
      case Relation::LessEqual: viol = act - rows[i].rhs; break;
      case Relation::GreaterEqual: viol = rows[i].rhs - act; break;
      case Relation::Equal: viol = std::abs(act - rows[i].rhs); break;
    }
    if (viol > 1e-6 * (1.0 + std::abs(rows[i].rhs))) {
      throw SolverError("solution violates constraint " + std::to_string(i) + " by " +
                            std::to_string(viol),
                        sx.basis());
    }
  }

  std::vector<double> y(m);
  sx.duals(cost, y);
  sol.dual.assign(rows.size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) sol.dual[i] = sense_sign * row_sign[i] * y[i];
  sol.reduced_cost.assign(vars.size(), 0.0);
  for (std::size_t j = 0; j < vars.size(); ++j) sol.reduced_cost[j] = vars[j].cost;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const Term& t : rows[i].terms) sol.reduced_cost[t.var] -= t.coef * sol.dual[i];
  }
  sol.status = LpStatus::Optimal;
  return sol;
}

// Residuals of an optimal solution against the optimality conditions.
struct LpCertificate {
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double complementary_slackness = 0.0;
  double duality_gap = 0.0;

  double worst() const {
    return std::max({primal_infeasibility, dual_infeasibility, complementary_slackness,
                     duality_gap});
  }
};

inline LpCertificate certify(const LinearProgram& lp, const LpSolution& sol, double tol = 1e-7) {
  LpCertificate cert;
  const auto& vars = lp.variables();
  const auto& rows = lp.constraints();
  const double s = lp.sense() == Sense::Minimize ? 1.0 : -1.0;
  double dual_obj = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double act = lp.row_activity(i, sol.primal);
    const double y = s * sol.dual[i];  // multiplier of the equivalent minimization
    double viol = 0.0, sign_viol = 0.0;
    switch (rows[i].relation) {
      case Relation::LessEqual:
        viol = act - rows[i].rhs;
        sign_viol = std::max(0.0, y);
        break;
      case Relation::GreaterEqual:
        viol = rows[i].rhs - act;
        sign_viol = std::max(0.0, -y);
        break;
      case Relation::Equal: viol = std::abs(act - rows[i].rhs); break;
    }
    cert.primal_infeasibility = std::max(cert.primal_infeasibility, viol);
    cert.dual_infeasibility = std::max(cert.dual_infeasibility, sign_viol);
    cert.complementary_slackness += std::abs(sol.dual[i] * (act - rows[i].rhs));
    dual_obj += sol.dual[i] * rows[i].rhs;
  }
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const Variable& v = vars[j];
    const double x = sol.primal[j];
    const double r = s * sol.reduced_cost[j];
    cert.primal_infeasibility = std::max({cert.primal_infeasibility, v.lower - x, x - v.upper});
    const bool at_lo = std::isfinite(v.lower) && x - v.lower <= tol * (1.0 + std::abs(v.lower));
    const bool at_hi = std::isfinite(v.upper) && v.upper - x <= tol * (1.0 + std::abs(v.upper));
    double viol = 0.0;
    if (at_lo && at_hi) {
      viol = 0.0;
    } else if (at_lo) {
      viol = std::max(0.0, -r);
    } else if (at_hi) {
      viol = std::max(0.0, r);
    } else {
      viol = std::abs(r);
    }
    cert.dual_infeasibility = std::max(cert.dual_infeasibility, viol);
    double bound = x;
    if (at_lo) bound = v.lower;
    if (at_hi && !at_lo) bound = v.upper;
    dual_obj += sol.reduced_cost[j] * bound;
    cert.complementary_slackness += std::abs(sol.reduced_cost[j] * (x - bound));
  }
  cert.duality_gap = std::abs(sol.objective - dual_obj);
  return cert;
}

}  // namespace polyflow::lp
