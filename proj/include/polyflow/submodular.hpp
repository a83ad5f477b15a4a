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

// Set functions over small indexed ground sets, given as value oracles, and
// their continuous extensions.
//
// Subsets are passed as 64-bit masks; bit i is element i of the ground set.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "polyflow/error.hpp"
#include "polyflow/lp.hpp"

namespace polyflow {

using Mask = std::uint64_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kMaxGroundSize = 64;
inline constexpr std::size_t kMaxTableGroundSize = 16;
inline constexpr std::size_t kMaxClosureGroundSize = 16;
inline constexpr std::size_t kMaxCheckGroundSize = 12;

inline Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

inline Mask to_mask(std::span<const std::size_t> elements) {
  Mask m = 0;
  for (std::size_t i : elements) m |= Mask{1} << i;
  return m;
}

inline std::vector<std::size_t> from_mask(Mask m) {
  std::vector<std::size_t> out;
  while (m) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.size() > kMaxGroundSize) {
      throw CapabilityError("ground set too large for mask evaluation", kMaxGroundSize);
    }
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
      if (!seen.insert(l).second) throw InputError("duplicate ground-set label '" + l + "'");
    }
  }

  // Ground set labelled "0", "1", ... "n-1".
  static GroundSet indexed(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
    return GroundSet(std::move(labels));
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<std::size_t> index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i] == label) return i;
    }
    return std::nullopt;
  }

  bool operator==(const GroundSet&) const = default;

 private:
  std::vector<std::string> labels_;
};

// rho(S) = sum of weights.
struct Modular {
  std::vector<double> weights;
};

// rho(S) = min(per_element * |S|, cap). With the default per_element this is
// cap on every non-empty set.
struct UniformRankCap {
  double cap = 0.0;
  double per_element = kInfinity;
};

// rho(S) = sum over blocks B of min(per_element_B * |S cap B|, cap_B); the
// blocks partition the ground set.
struct PartitionRankCap {
  struct Block {
    std::vector<std::size_t> elements;
    double cap = 0.0;
    double per_element = kInfinity;
  };
  std::vector<Block> blocks;
};

// rho(S) = phi(sum of weights in S), phi piecewise linear through (0,0) and
// the breakpoints (w, phi(w)), constant after the last breakpoint. phi must be
// concave and non-decreasing.
struct ConcaveOfWeight {
  std::vector<double> weights;
  std::vector<std::pair<double, double>> breakpoints;
};

// rho(S) = values[mask(S)]. Only for ground sets of at most 16 elements.
struct ExplicitTable {
  std::vector<double> values;
};

using OracleFamily = std::variant<Modular, UniformRankCap, PartitionRankCap, ConcaveOfWeight,
                                  ExplicitTable>;

// Immutable value oracle. The constructor checks the family's shape against
// the ground set; polymatroid axioms are checked separately by
// check_polymatroid so that deliberately broken oracles can be built.
class SubmodularOracle {
 public:
  SubmodularOracle(GroundSet ground, OracleFamily family)
      : ground_(std::move(ground)), family_(std::move(family)) {
    validate();
    prepare();
  }

  const GroundSet& ground() const { return ground_; }
  std::size_t size() const { return ground_.size(); }
  const OracleFamily& family() const { return family_; }

  std::string family_name() const {
    switch (family_.index()) {
      case 0: return "modular";
      case 1: return "uniform_rank_cap";
      case 2: return "partition_rank_cap";
      case 3: return "concave_of_weight";
      default: return "explicit_table";
    }
  }

  double eval_mask(Mask s) const {
    if (s & ~full_mask(size())) throw InputError("subset index out of range");
    return eval_unchecked(s);
  }

  double eval(std::span<const std::size_t> subset) const {
    Mask m = 0;
    for (std::size_t i : subset) {
      if (i >= size()) {
        throw InputError("element " + std::to_string(i) + " outside ground set of size " +
                         std::to_string(size()));
      }
      m |= Mask{1} << i;
    }
    return eval_unchecked(m);
  }

  double eval(std::initializer_list<std::size_t> subset) const {
    return eval(std::span<const std::size_t>(subset.begin(), subset.size()));
  }

  // No range check; hot path for enumeration code that builds masks itself.
  double eval_unchecked(Mask s) const {
    if (s == 0) return 0.0;
    return std::visit([&](const auto& f) { return eval_family(f, s); }, family_);
  }

 private:
  double eval_family(const Modular& f, Mask s) const {
    double v = 0.0;
    for (Mask m = s; m; m &= m - 1) v += f.weights[std::countr_zero(m)];
    return v;
  }
  double eval_family(const UniformRankCap& f, Mask s) const {
    const double n = std::popcount(s);
    return std::isinf(f.per_element) ? f.cap : std::min(f.per_element * n, f.cap);
  }
  double eval_family(const PartitionRankCap& f, Mask s) const {
    double v = 0.0;
    for (std::size_t b = 0; b < f.blocks.size(); ++b) {
      const int n = std::popcount(s & block_masks_[b]);
      if (n == 0) continue;
      const auto& blk = f.blocks[b];
      v += std::isinf(blk.per_element) ? blk.cap : std::min(blk.per_element * n, blk.cap);
    }
    return v;
  }
  double eval_family(const ConcaveOfWeight& f, Mask s) const {
    double w = 0.0;
    for (Mask m = s; m; m &= m - 1) w += f.weights[std::countr_zero(m)];
    double x0 = 0.0, y0 = 0.0;
    for (auto [x1, y1] : f.breakpoints) {
      if (w <= x1) return y0 + (y1 - y0) * (w - x0) / (x1 - x0);
      x0 = x1;
      y0 = y1;
    }
    return y0;
  }
  double eval_family(const ExplicitTable& f, Mask s) const { return f.values[s]; }

  void validate() const {
    const std::size_t n = size();
    auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
    if (const auto* f = std::get_if<Modular>(&family_)) {
      if (f->weights.size() != n) throw InputError("modular oracle needs one weight per element");
      for (double w : f->weights) {
        if (!std::isfinite(w)) throw InputError("modular weight must be finite");
      }
    } else if (const auto* f = std::get_if<UniformRankCap>(&family_)) {
      if (!finite_nonneg(f->cap)) throw InputError("rank cap must be finite and non-negative");
      if (std::isnan(f->per_element) || f->per_element < 0.0) {
        throw InputError("rank cap per-element value must be non-negative");
      }
    } else if (const auto* f = std::get_if<PartitionRankCap>(&family_)) {
      std::vector<int> hits(n, 0);
      for (const auto& b : f->blocks) {
        if (!finite_nonneg(b.cap)) throw InputError("block cap must be finite and non-negative");
        if (std::isnan(b.per_element) || b.per_element < 0.0) {
          throw InputError("block per-element value must be non-negative");
        }
        for (std::size_t e : b.elements) {
          if (e >= n) throw InputError("block element outside ground set");
          ++hits[e];
        }
      }
      for (int h : hits) {
        if (h != 1) throw InputError("partition blocks must cover each element exactly once");
      }
    } else if (const auto* f = std::get_if<ConcaveOfWeight>(&family_)) {
      if (f->weights.size() != n) throw InputError("concave oracle needs one weight per element");
      for (double w : f->weights) {
        if (!finite_nonneg(w)) throw InputError("concave oracle weights must be non-negative");
      }
      double x0 = 0.0, y0 = 0.0, slope = kInfinity;
      for (auto [x, y] : f->breakpoints) {
        if (!std::isfinite(x) || !std::isfinite(y) || x <= x0) {
          throw InputError("breakpoints must have strictly increasing positive weights");
        }
        const double s = (y - y0) / (x - x0);
        if (s < 0.0) throw InputError("concave function must be non-decreasing");
        if (s > slope * (1.0 + 1e-12) + 1e-12) throw InputError("breakpoints are not concave");
        slope = s;
        x0 = x;
        y0 = y;
      }
    } else if (const auto* f = std::get_if<ExplicitTable>(&family_)) {
      if (n > kMaxTableGroundSize) {
        throw CapabilityError("explicit table ground set too large", kMaxTableGroundSize);
      }
      if (f->values.size() != (std::size_t{1} << n)) {
        throw InputError("explicit table needs 2^n values");
      }
      for (double v : f->values) {
        if (!std::isfinite(v)) throw InputError("explicit table values must be finite");
      }
    }
  }

  void prepare() {
    if (const auto* f = std::get_if<PartitionRankCap>(&family_)) {
      for (const auto& b : f->blocks) block_masks_.push_back(to_mask(b.elements));
    }
  }

  GroundSet ground_;
  OracleFamily family_;
  std::vector<Mask> block_masks_;
};

namespace detail {

// Indices sorted by descending x, ties by ascending index.
inline std::vector<std::size_t> descending_order(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
  return order;
}

inline void check_unit_box(std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0)) {
      throw InputError("coordinate " + std::to_string(i) + " outside [0,1]");
    }
  }
}

}  // namespace detail

// Sorted-gap formula for any non-negative x. The relaxations produce split
// vectors whose coordinates can exceed 1 when some subsets cost nothing; the
// extension is positively homogeneous, so the same formula applies.
inline double lovasz_extension_nonneg(const SubmodularOracle& rho, std::span<const double> x) {
  if (x.size() != rho.size()) throw InputError("vector length does not match ground set");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0) || !std::isfinite(x[i])) {
      throw InputError("coordinate " + std::to_string(i) + " must be finite and non-negative");
    }
  }
  const auto order = detail::descending_order(x);
  double v = 0.0;
  Mask s = 0;
  for (std::size_t j = 0; j < order.size(); ++j) {
    s |= Mask{1} << order[j];
    const double next = j + 1 < order.size() ? x[order[j + 1]] : 0.0;
    const double gap = x[order[j]] - next;
    if (gap > 0.0) v += gap * rho.eval_unchecked(s);
  }
  return v;
}

inline double lovasz_extension(const SubmodularOracle& rho, std::span<const double> x) {
  if (x.size() != rho.size()) throw InputError("vector length does not match ground set");
  detail::check_unit_box(x);
  return lovasz_extension_nonneg(rho, x);
}

struct ClosureOptions {
  // Require the subset weights to form a distribution (sum to 1). Dropping
  // this gives the closure over non-negative combinations instead.
  bool normalized = true;
};

inline double convex_closure_value(const SubmodularOracle& rho, std::span<const double> x,
                                   ClosureOptions opts = {}) {
  const std::size_t n = rho.size();
  if (n > kMaxClosureGroundSize) {
    throw CapabilityError("convex closure enumerates all subsets", kMaxClosureGroundSize);
  }
  if (x.size() != n) throw InputError("vector length does not match ground set");
  detail::check_unit_box(x);
  lp::LinearProgram prog(lp::Sense::Minimize);
  const std::size_t subsets = std::size_t{1} << n;
  for (std::size_t s = 0; s < subsets; ++s) prog.add_variable(0.0, lp::kInf, rho.eval_unchecked(s));
  if (opts.normalized) {
    std::vector<lp::Term> all;
    for (std::size_t s = 0; s < subsets; ++s) all.push_back({s, 1.0});
    prog.add_constraint(std::move(all), lp::Relation::Equal, 1.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<lp::Term> row;
    for (std::size_t s = 0; s < subsets; ++s) {
      if (s >> i & 1) row.push_back({s, 1.0});
    }
    prog.add_constraint(std::move(row), lp::Relation::Equal, x[i]);
  }
  const lp::LpSolution sol = lp::solve_lp(prog);
  if (sol.status != lp::LpStatus::Optimal) {
    throw SolverError("convex closure LP did not reach optimality", {});
  }
  return sol.objective;
}

// x = sum_j weights[j] * 1_{sets[j]}, sets strictly nested, and
// empty_weight + sum_j weights[j] = 1.
struct ChainDecomposition {
  std::vector<std::vector<std::size_t>> sets;  // S_1 subset S_2 subset ...
  std::vector<double> weights;
  double empty_weight = 1.0;

  std::vector<double> reconstruct(std::size_t n) const {
    std::vector<double> x(n, 0.0);
    for (std::size_t j = 0; j < sets.size(); ++j) {
      for (std::size_t i : sets[j]) x[i] += weights[j];
    }
    return x;
  }
};

// S_j holds the j largest coordinates; its weight is the gap to the next
// coordinate (0 after the last). Zero-weight sets are dropped so the chain is
// strictly nested.
inline ChainDecomposition chain_decompose(std::span<const double> x) {
  detail::check_unit_box(x);
  const auto order = detail::descending_order(x);
  ChainDecomposition out;
  out.empty_weight = 1.0 - (x.empty() ? 0.0 : x[order[0]]);
  std::vector<std::size_t> prefix;
  for (std::size_t j = 0; j < order.size(); ++j) {
    prefix.push_back(order[j]);
    const double next = j + 1 < order.size() ? x[order[j + 1]] : 0.0;
    const double gap = x[order[j]] - next;
    if (gap > 0.0) {
      auto s = prefix;
      std::sort(s.begin(), s.end());
      out.sets.push_back(std::move(s));
      out.weights.push_back(gap);
    }
  }
  return out;
}

struct PolymatroidViolation {
  enum class Kind { Normalized, NonNegative, Monotone, Submodular } kind;
  Mask set = 0;                // S
  std::size_t i = 0, j = 0;    // added elements (j unused except for submodularity)
  double amount = 0.0;         // size of the violation
};

struct PolymatroidReport {
  bool normalized = true;
  bool non_negative = true;
  bool monotone = true;
  bool submodular = true;
  std::vector<PolymatroidViolation> violations;  // first violation of each kind

  bool ok() const { return normalized && non_negative && monotone && submodular; }
};

// Exhaustive check in marginal form: rho(S+i) >= rho(S) and
// rho(S+i) + rho(S+j) >= rho(S+i+j) + rho(S) for all S and i, j not in S.
inline PolymatroidReport check_polymatroid(const SubmodularOracle& rho, double tol = 1e-9) {
  const std::size_t n = rho.size();
  if (n > kMaxCheckGroundSize) {
    throw CapabilityError("polymatroid check enumerates all subsets", kMaxCheckGroundSize);
  }
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<double> v(subsets);
  // Evaluate through the family directly; ExplicitTable stores v(empty) too.
  for (std::size_t s = 0; s < subsets; ++s) {
    v[s] = s == 0 ? std::visit(
                        [](const auto& f) -> double {
                          using F = std::decay_t<decltype(f)>;
                          if constexpr (std::is_same_v<F, ExplicitTable>) return f.values[0];
                          return 0.0;
                        },
                        rho.family())
                  : rho.eval_unchecked(s);
  }
  PolymatroidReport r;
  auto slack = [&](double a) { return tol * (1.0 + std::abs(a)); };
  if (std::abs(v[0]) > tol) {
    r.normalized = false;
    r.violations.push_back({PolymatroidViolation::Kind::Normalized, 0, 0, 0, std::abs(v[0])});
  }
  for (std::size_t s = 0; s < subsets; ++s) {
    if (r.non_negative && (v[s] < -tol || !std::isfinite(v[s]))) {
      r.non_negative = false;
      r.violations.push_back({PolymatroidViolation::Kind::NonNegative, s, 0, 0, -v[s]});
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (s >> i & 1) continue;
      const std::size_t si = s | std::size_t{1} << i;
      if (r.monotone && v[si] < v[s] - slack(v[s])) {
        r.monotone = false;
        r.violations.push_back({PolymatroidViolation::Kind::Monotone, s, i, 0, v[s] - v[si]});
      }
      if (!r.submodular) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (s >> j & 1) continue;
        const std::size_t sj = s | std::size_t{1} << j;
        const double lhs = v[si] + v[sj];
        const double rhs = v[si | sj] + v[s];
        if (lhs < rhs - slack(rhs)) {
          r.submodular = false;
          r.violations.push_back({PolymatroidViolation::Kind::Submodular, s, i, j, rhs - lhs});
          break;
        }
      }
    }
  }
  return r;
}

}  // namespace polyflow
