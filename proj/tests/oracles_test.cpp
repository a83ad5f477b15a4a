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

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "polyflow/io.hpp"
#include "polyflow/oracles.hpp"
#include "test_util.hpp"

namespace polyflow {
namespace {

// Separated demand of F, recomputed from reachability with Floyd-Warshall.
double separated_demand(const PolymatroidalNetwork& net, std::uint32_t mask, const DemandSet& d,
                        bool* all = nullptr) {
  std::vector<Arc> arcs;
  for (std::size_t e = 0; e < net.num_edges(); ++e) {
    if (mask >> e & 1) continue;
    const Edge& ed = net.edge(e);
    arcs.push_back({ed.u, ed.v, 0.0, e});
    if (!net.directed()) arcs.push_back({ed.v, ed.u, 0.0, e});
  }
  const auto reach = testing::floyd_warshall(net.num_nodes(), arcs);
  double z = 0.0;
  bool every = true;
  for (const auto& p : d.pairs) {
    const bool fwd = std::isinf(reach[p.s][p.t]);
    const bool bwd = d.symmetric && std::isinf(reach[p.t][p.s]);
    z += p.demand * ((fwd ? 1 : 0) + (bwd ? 1 : 0));
    every = every && (fwd || bwd);
  }
  if (all) *all = every;
  return z;
}

EdgeSet mask_edges(std::uint32_t mask) {
  EdgeSet f;
  for (std::size_t e = 0; e < 32; ++e) {
    if (mask >> e & 1) f.push_back(e);
  }
  return f;
}

Instance small(std::uint64_t seed, bool directed, bool symmetric = false) {
  InstanceGenParams p;
  p.nodes = 5;
  p.edges = 7;
  p.pairs = 2 + seed % 2;
  p.orientation = directed ? Orientation::Directed : Orientation::Undirected;
  p.symmetric = symmetric;
  p.seed = seed;
  return generate_instance(p);
}

TEST(BruteMulticut, MatchesUnprunedEnumeration) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Instance inst = small(seed, seed % 2, seed % 3 == 0);
    const auto& net = inst.network;
    double best = kInfinity;
    for (std::uint32_t f = 0; f < (1u << net.num_edges()); ++f) {
      bool all = false;
      separated_demand(net, f, inst.demands, &all);
      if (all) best = std::min(best, testing::exhaustive_cut_cost(net, mask_edges(f)));
    }
    const CutSolution sol = brute_min_multicut(net, inst.demands);
    EXPECT_NEAR(sol.cost, best, 1e-9) << seed;
    EXPECT_TRUE(sol.separation.all_cut());
  }
}

TEST(BruteSparsest, MatchesUnprunedEnumeration) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Instance inst = small(seed + 50, seed % 2, seed % 4 == 0);
    const auto& net = inst.network;
    double best = kInfinity;
    // F = {} counts: a directed pair may be unreachable to begin with.
    for (std::uint32_t f = 0; f < (1u << net.num_edges()); ++f) {
      const double z = separated_demand(net, f, inst.demands);
      if (z > 0) best = std::min(best, testing::exhaustive_cut_cost(net, mask_edges(f)) / z);
    }
    const CutSolution sol = brute_sparsest_cut(net, inst.demands);
    EXPECT_NEAR(sol.sparsity(), best, 1e-9) << seed;
  }
}

TEST(BruteSparsest, NoDemandIsUndefined) {
  const Instance star = star_instance(4);
  DemandSet d = star.demands;
  for (auto& p : d.pairs) p.demand = 0.0;
  EXPECT_THROW(brute_sparsest_cut(star.network, d), UndefinedSparsityError);
}

TEST(BruteLimits, TooManyEdges) {
  InstanceGenParams p;
  p.nodes = 8;
  p.edges = kMaxBruteEdges + 1;
  const Instance inst = generate_instance(p);
  EXPECT_THROW(brute_min_multicut(inst.network, inst.demands), CapabilityError);
  EXPECT_THROW(brute_sparsest_cut(inst.network, inst.demands), CapabilityError);
}

TEST(BruteBipartition, StarClosedForm) {
  for (std::size_t n : {4u, 5u, 6u, 8u}) {
    const Instance star = star_instance(n);
    const PartitionCut pc = brute_bipartition_sparsest(star.network, star.demands);
    const double nd = static_cast<double>(n);
    // Best is half the leaves with the center on one side (or a single leaf
    // when n is small), never the center alone.
    double expect = kInfinity;
    for (std::size_t s = 1; s < n; ++s) {
      expect = std::min(expect, 1.0 / (static_cast<double>(s) * (nd - static_cast<double>(s))));
    }
    EXPECT_NEAR(pc.sparsity(), expect, 1e-12) << n;
    if (n % 2 == 0) {
      EXPECT_NEAR(pc.sparsity(), 4.0 / (nd * nd), 1e-12);
    }
  }
}

TEST(BruteBipartition, AtLeastEdgeSetOptimum) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Instance inst = small(seed + 200, false);
    const PartitionCut pc = brute_bipartition_sparsest(inst.network, inst.demands);
    const CutSolution sc = brute_sparsest_cut(inst.network, inst.demands);
    EXPECT_GE(pc.sparsity(), sc.sparsity() - 1e-9);
    EXPECT_TRUE(pc.side[0]);
  }
}

TEST(Generator, Deterministic) {
  InstanceGenParams p;
  p.seed = 42;
  p.orientation = Orientation::Directed;
  const auto a = io::instance_json(generate_instance(p)).dump();
  const auto b = io::instance_json(generate_instance(p)).dump();
  EXPECT_EQ(a, b);
  p.seed = 43;
  EXPECT_NE(a, io::instance_json(generate_instance(p)).dump());
}

TEST(Generator, ShapeAndValidity) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    InstanceGenParams p;
    p.nodes = 4 + seed % 4;
    p.edges = p.nodes + 2;
    p.pairs = 1 + seed % 4;
    p.orientation = seed % 2 ? Orientation::Directed : Orientation::Undirected;
    p.symmetric = seed % 5 == 0;
    p.seed = seed;
    const Instance inst = generate_instance(p);
    const auto& net = inst.network;
    ASSERT_EQ(net.num_nodes(), p.nodes);
    ASSERT_EQ(net.num_edges(), p.edges);
    ASSERT_EQ(inst.demands.size(), p.pairs);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const Edge& e : net.edges()) {
      EXPECT_NE(e.u, e.v);
      auto k = net.directed() ? std::make_pair(e.u, e.v)
                              : std::make_pair(std::min(e.u, e.v), std::max(e.u, e.v));
      EXPECT_TRUE(seen.insert(k).second) << "parallel edge, seed " << seed;
    }
    // Weakly connected.
    std::vector<Arc> arcs;
    for (const Edge& e : net.edges()) {
      arcs.push_back({e.u, e.v, 1.0, 0});
      arcs.push_back({e.v, e.u, 1.0, 0});
    }
    const auto d = testing::floyd_warshall(net.num_nodes(), arcs);
    for (std::size_t v = 0; v < net.num_nodes(); ++v) EXPECT_FALSE(std::isinf(d[0][v]));
    for (std::size_t o = 0; o < net.num_oracles(); ++o) {
      EXPECT_TRUE(check_polymatroid(net.oracle(o)).ok()) << seed << " oracle " << o;
    }
    for (const auto& dp : inst.demands.pairs) {
      EXPECT_NE(dp.s, dp.t);
      EXPECT_GE(dp.demand, 1.0);
      EXPECT_LE(dp.demand, 3.0);
    }
  }
}

TEST(Generator, FamilyMix) {
  InstanceGenParams p;
  p.mix = FamilyMix::modular_only();
  p.seed = 9;
  const Instance inst = generate_instance(p);
  for (std::size_t o = 0; o < inst.network.num_oracles(); ++o) {
    EXPECT_EQ(inst.network.oracle(o).family_name(), "modular");
  }
  // Tables only where the ground set is small; a table-only mix has nothing
  // to draw for larger ones.
  p.mix = {0.0, 0.0, 0.0, 0.0, 1.0};
  p.nodes = 9;
  p.edges = 20;
  p.seed = 1;
  EXPECT_THROW(generate_instance(p), InputError);
  p.mix = {1.0, 0.0, 0.0, 0.0, 1.0};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    p.seed = seed;
    const Instance big = generate_instance(p);
    for (std::size_t o = 0; o < big.network.num_oracles(); ++o) {
      if (big.network.oracle(o).size() > kMaxTableSlots) {
        EXPECT_NE(big.network.oracle(o).family_name(), "explicit_table");
      }
    }
  }
}

TEST(Generator, RejectsInfeasible) {
  InstanceGenParams p;
  p.nodes = 4;
  p.edges = 7;  // K4 has 6
  EXPECT_THROW(generate_instance(p), InputError);
  p.edges = 2;  // cannot be connected
  EXPECT_THROW(generate_instance(p), InputError);
  p.edges = 4;
  p.pairs = 7;
  EXPECT_THROW(generate_instance(p), InputError);
  p.pairs = 1;
  p.max_weight = 0;
  EXPECT_THROW(generate_instance(p), InputError);
}

TEST(Star, Structure) {
  const Instance s = star_instance(5, 3.0);
  EXPECT_EQ(s.network.num_nodes(), 5u);
  EXPECT_EQ(s.network.num_edges(), 4u);
  EXPECT_EQ(s.demands.size(), 10u);
  EXPECT_DOUBLE_EQ(s.network.rho(0).eval_mask(0b1111), 1.0);
  EXPECT_DOUBLE_EQ(s.network.rho(1).eval_mask(1), 3.0);
  EXPECT_THROW(star_instance(2), InputError);
}

}  // namespace
}  // namespace polyflow
