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

#include "polyflow/flows.hpp"
#include "polyflow/oracles.hpp"
#include "test_util.hpp"

namespace polyflow {
namespace {

TEST(Throughput, DirectedPathBottleneck) {
  NetworkBuilder b(Orientation::Directed);
  for (const char* id : {"s", "v", "t"}) b.add_node(id);
  b.add_edge("sv", 0, 1);
  b.add_edge("vt", 1, 2);
  b.set_out_capacity(0, Modular{{2.0}});
  b.set_in_capacity(1, Modular{{1.0}});
  b.set_out_capacity(1, Modular{{4.0}});
  b.set_in_capacity(2, Modular{{5.0}});
  const auto net = b.build();
  DemandSet d;
  d.pairs.push_back({0, 2, 1.0});
  const FlowSolution f = max_throughput_flow(net, d);
  EXPECT_NEAR(f.objective, 1.0, 1e-9);
  EXPECT_TRUE(check_flow_feasibility(net, f).feasible);
  EXPECT_LE(f.certificate.worst(), 1e-7);
}

TEST(Throughput, JointCapacityAtSink) {
  NetworkBuilder b(Orientation::Directed);
  for (const char* id : {"a", "b", "t"}) b.add_node(id);
  b.add_edge("at", 0, 2);
  b.add_edge("bt", 1, 2);
  b.set_out_capacity(0, Modular{{3.0}});
  b.set_out_capacity(1, Modular{{3.0}});
  b.set_in_capacity(2, UniformRankCap{1.0});
  const auto net = b.build();
  DemandSet d;
  d.pairs = {{0, 2, 1.0}, {1, 2, 1.0}};
  EXPECT_NEAR(max_throughput_flow(net, d).objective, 1.0, 1e-9);
  EXPECT_NEAR(max_concurrent_flow(net, d).objective, 0.5, 1e-9);
}

TEST(Throughput, NodeCapacitatedPath) {
  const auto net = encode_node_capacitated({"a", "b", "c"}, {{"ab", 0, 1}, {"bc", 1, 2}},
                                           {5.0, 1.0, 5.0}, {0, 2});
  DemandSet d;
  d.pairs.push_back({0, 2, 1.0});
  EXPECT_NEAR(max_throughput_flow(net, d).objective, 1.0, 1e-9);
}

TEST(Concurrent, SinglePairEqualsMaxFlow) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    InstanceGenParams p;
    p.seed = seed;
    p.pairs = 1;
    p.unit_demands = true;
    p.orientation = seed % 2 ? Orientation::Directed : Orientation::Undirected;
    const Instance inst = generate_instance(p);
    EXPECT_NEAR(max_concurrent_flow(inst.network, inst.demands).objective,
                max_throughput_flow(inst.network, inst.demands).objective, 1e-7);
  }
}

TEST(Concurrent, ZeroDemandIsUnbounded) {
  const Instance star = star_instance(4);
  DemandSet d = star.demands;
  for (auto& p : d.pairs) p.demand = 0.0;
  EXPECT_TRUE(max_concurrent_flow(star.network, d).unbounded);
}

TEST(Concurrent, StarBelowSparsestCut) {
  const Instance star = star_instance(4);
  const FlowSolution f = max_concurrent_flow(star.network, star.demands);
  EXPECT_LE(f.objective, 1.0 / 6.0 + 1e-9);
  EXPECT_LE(f.objective, brute_sparsest_cut(star.network, star.demands).sparsity() + 1e-9);
  EXPECT_TRUE(check_flow_feasibility(star.network, f).feasible);
}

TEST(Symmetric, DirectedTwoCycle) {
  NetworkBuilder b(Orientation::Directed);
  b.add_node("a");
  b.add_node("b");
  b.add_edge("ab", 0, 1);
  b.add_edge("ba", 1, 0);
  for (std::size_t v = 0; v < 2; ++v) {
    b.set_in_capacity(v, Modular{{1.0}});
    b.set_out_capacity(v, Modular{{1.0}});
  }
  const auto net = b.build();
  DemandSet d;
  d.symmetric = true;
  d.pairs.push_back({0, 1, 1.0});
  const FlowSolution c = max_concurrent_flow(net, d);
  EXPECT_NEAR(c.objective, 1.0, 1e-9);
  ASSERT_EQ(c.rates.size(), 2u);
  EXPECT_NEAR(c.rates[0], c.rates[1], 1e-9);
  EXPECT_NEAR(max_throughput_flow(net, d).objective, 2.0, 1e-9);
}

TEST(Throughput, SingleCommodityMaxFlowMinCut) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    InstanceGenParams p;
    p.orientation = Orientation::Directed;
    p.nodes = 5;
    p.edges = 8;
    p.pairs = 1;
    p.unit_demands = true;
    p.seed = seed;
    const Instance inst = generate_instance(p);
    const double flow = max_throughput_flow(inst.network, inst.demands).objective;
    const double cut = brute_min_multicut(inst.network, inst.demands).cost;
    EXPECT_NEAR(flow, cut, 1e-6) << "seed " << seed;
  }
}

TEST(Throughput, WeakDuality) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    InstanceGenParams p;
    p.nodes = 5;
    p.edges = 7;
    p.pairs = 3;
    p.symmetric = seed % 3 == 0;
    p.orientation = seed % 2 ? Orientation::Directed : Orientation::Undirected;
    p.seed = seed;
    const Instance inst = generate_instance(p);
    const FlowSolution t = max_throughput_flow(inst.network, inst.demands);
    const double through = inst.demands.symmetric ? t.objective / 2.0 : t.objective;
    EXPECT_LE(through, brute_min_multicut(inst.network, inst.demands).cost + 1e-6);
    const FlowSolution c = max_concurrent_flow(inst.network, inst.demands);
    EXPECT_LE(c.objective, brute_sparsest_cut(inst.network, inst.demands).sparsity() + 1e-6);
  }
}

TEST(Throughput, ModularMatchesClassicalLp) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    InstanceGenParams p;
    p.mix = FamilyMix::modular_only();
    p.orientation = seed % 2 ? Orientation::Directed : Orientation::Undirected;
    p.seed = seed;
    const Instance inst = generate_instance(p);
    EXPECT_NEAR(max_throughput_flow(inst.network, inst.demands).objective,
                testing::classical_multicommodity(inst.network, inst.demands, false), 1e-7);
    EXPECT_NEAR(max_concurrent_flow(inst.network, inst.demands).objective,
                testing::classical_multicommodity(inst.network, inst.demands, true), 1e-7);
  }
}

TEST(Feasibility, ScaledFlowViolates) {
  const Instance star = star_instance(4);
  FlowSolution f = max_throughput_flow(star.network, star.demands);
  ASSERT_TRUE(check_flow_feasibility(star.network, f).feasible);
  for (auto& row : f.arc_flow) {
    for (double& x : row) x *= 1.5;
  }
  for (double& r : f.rates) r *= 1.5;
  const FlowFeasibility rep = check_flow_feasibility(star.network, f);
  EXPECT_FALSE(rep.feasible);
  EXPECT_GT(rep.capacity_violation, 0.4);
  EXPECT_FALSE(rep.worst_constraint.empty());
}

TEST(Feasibility, DegreeLimit) {
  const Instance star = star_instance(6);
  FlowOptions o;
  o.max_degree = 4;
  EXPECT_THROW(max_throughput_flow(star.network, star.demands, o), CapabilityError);
}

TEST(Decomposition, RecomposesArcFlows) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    InstanceGenParams p;
    p.seed = seed;
    p.orientation = seed % 2 ? Orientation::Directed : Orientation::Undirected;
    const Instance inst = generate_instance(p);
    const FlowSolution f = max_throughput_flow(inst.network, inst.demands);
    const PathDecomposition dec = decompose_to_paths(inst.network, f);
    for (std::size_t c = 0; c < f.commodities.size(); ++c) {
      double total = 0.0;
      std::vector<double> re(f.arc_flow[c].size(), 0.0);
      for (const PathFlow& path : dec.paths[c]) {
        total += path.amount;
        EXPECT_EQ(path.nodes.front(), f.commodities[c].s);
        EXPECT_EQ(path.nodes.back(), f.commodities[c].t);
        for (std::size_t a : path.arcs) re[a] += path.amount;
      }
      EXPECT_NEAR(total, f.rates[c], 1e-9);
      double leftover = 0.0;
      for (std::size_t a = 0; a < re.size(); ++a) {
        EXPECT_LE(re[a], f.arc_flow[c][a] + 1e-9);
        leftover += f.arc_flow[c][a] - re[a];
      }
      EXPECT_NEAR(leftover, dec.cycle_flow[c], 1e-9);
    }
  }
}

TEST(Decomposition, TrivialCases) {
  const Instance star = star_instance(3);
  DemandSet d;
  d.pairs.push_back({1, 2, 1.0});
  const FlowSolution f = max_throughput_flow(star.network, d);
  const PathDecomposition dec = decompose_to_paths(star.network, f);
  ASSERT_EQ(dec.paths[0].size(), 1u);
  EXPECT_EQ(dec.paths[0][0].nodes, (std::vector<std::size_t>{1, 0, 2}));
  FlowSolution zero = f;
  for (auto& row : zero.arc_flow) std::fill(row.begin(), row.end(), 0.0);
  zero.rates.assign(zero.rates.size(), 0.0);
  EXPECT_TRUE(decompose_to_paths(star.network, zero).paths[0].empty());
  FlowSolution bad = f;
  bad.arc_flow[0][0] = -1.0;
  EXPECT_THROW(decompose_to_paths(star.network, bad), ContractError);
}

}  // namespace
}  // namespace polyflow
