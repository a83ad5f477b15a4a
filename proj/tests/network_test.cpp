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

#include <algorithm>
#include <cmath>

#include "polyflow/network.hpp"
#include "polyflow/oracles.hpp"
#include "test_util.hpp"

namespace polyflow {
namespace {

PolymatroidalNetwork single_arc(double out_cap, double in_cap) {
  NetworkBuilder b(Orientation::Directed);
  b.add_node("u");
  b.add_node("v");
  b.add_edge("e", 0, 1);
  b.set_out_capacity(0, Modular{{out_cap}});
  b.set_in_capacity(1, Modular{{in_cap}});
  return b.build();
}

// Directed 2-cycle a <-> b.
PolymatroidalNetwork two_cycle() {
  NetworkBuilder b(Orientation::Directed);
  b.add_node("a");
  b.add_node("b");
  b.add_edge("ab", 0, 1);
  b.add_edge("ba", 1, 0);
  for (std::size_t v = 0; v < 2; ++v) {
    b.set_in_capacity(v, Modular{{1.0}});
    b.set_out_capacity(v, Modular{{1.0}});
  }
  return b.build();
}

TEST(Builder, RejectsMalformedNetworks) {
  NetworkBuilder b(Orientation::Undirected);
  b.add_node("a");
  EXPECT_THROW(b.add_node("a"), InputError);
  b.add_node("b");
  EXPECT_THROW(b.add_edge("loop", 0, 0), InputError);
  b.add_edge("ab", 0, 1);
  EXPECT_THROW(b.add_edge("ab", 1, 0), InputError);
  EXPECT_THROW(b.add_edge("x", "a", "zz"), InputError);
  EXPECT_THROW(b.set_in_capacity(0, Modular{{1.0}}), InputError);
  b.set_capacity(0, Modular{{1.0}});
  EXPECT_THROW(b.build(), InputError);  // b has a slot and no capacity
  b.set_capacity(1, Modular{{-1.0}});
  EXPECT_THROW(b.build(), InputError);
  b.set_capacity(1, ExplicitTable{{0.0, -2.0}});
  EXPECT_THROW(b.build(), InputError);
  b.set_capacity(1, Modular{{2.0}});
  EXPECT_NO_THROW(b.build());
}

TEST(Builder, ParallelEdgesGetDistinctSlots) {
  NetworkBuilder b(Orientation::Undirected);
  b.add_node("a");
  b.add_node("b");
  b.add_edge("p", 0, 1);
  b.add_edge("q", 0, 1);
  b.set_capacity(0, UniformRankCap{1.0});
  b.set_capacity(1, Modular{{5.0, 5.0}});
  const auto net = b.build();
  EXPECT_EQ(net.oracle(0).size(), 2u);
  EXPECT_EQ(net.end(0, 0).slot, 0u);
  EXPECT_EQ(net.end(1, 0).slot, 1u);
  EXPECT_DOUBLE_EQ(cut_cost(net, {0, 1}).value, 1.0);
}

TEST(CutCost, SingleDirectedEdge) {
  const auto net = single_arc(3.0, 5.0);
  const CutCost c = cut_cost(net, {0});
  EXPECT_DOUBLE_EQ(c.value, 3.0);
  ASSERT_EQ(c.assignment.size(), 1u);
  EXPECT_EQ(c.assignment[0], 0u);
  EXPECT_DOUBLE_EQ(cut_cost(net, {}).value, 0.0);
}

TEST(CutCost, StarAssignsEverythingToCenter) {
  const Instance star = star_instance(4);
  const CutCost c = cut_cost(star.network, {0, 1, 2});
  EXPECT_DOUBLE_EQ(c.value, 1.0);
  for (std::size_t g : c.assignment) EXPECT_EQ(g, 0u);
}

TEST(CutCost, MatchesExhaustiveAssignments) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    InstanceGenParams p;
    p.nodes = 6;
    p.edges = 9;
    p.orientation = seed % 2 ? Orientation::Undirected : Orientation::Directed;
    p.seed = seed;
    const Instance inst = generate_instance(p);
    CounterRng rng = CounterRng(seed).split("cut");
    EdgeSet f;
    for (std::size_t e = 0; e < inst.network.num_edges(); ++e) {
      if (rng.bernoulli(0.45)) f.push_back(e);
    }
    const CutCost c = cut_cost(inst.network, f);
    EXPECT_NEAR(c.value, testing::exhaustive_cut_cost(inst.network, f), 1e-9) << seed;
    EXPECT_NEAR(assignment_cost(inst.network, f, c.assignment), c.value, 1e-9);
  }
}

TEST(CutCost, CapabilityLimit) {
  InstanceGenParams p;
  p.nodes = 8;
  p.edges = 26;
  p.seed = 3;
  const Instance inst = generate_instance(p);
  EdgeSet all(inst.network.num_edges());
  for (std::size_t e = 0; e < all.size(); ++e) all[e] = e;
  try {
    cut_cost(inst.network, all);
    FAIL() << "expected a capability error";
  } catch (const CapabilityError& err) {
    EXPECT_EQ(err.limit(), 24u);
  }
  CutOptions narrow;
  narrow.max_edges = 3;
  EXPECT_THROW(cut_cost(inst.network, {0, 1, 2, 3}, narrow), CapabilityError);
  EXPECT_NO_THROW(cut_cost(inst.network, {0, 1, 2}, narrow));
}

TEST(CutCost, ModularDegeneration) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    InstanceGenParams p;
    p.mix = FamilyMix::modular_only();
    p.seed = seed;
    p.orientation = seed % 2 ? Orientation::Undirected : Orientation::Directed;
    const Instance inst = generate_instance(p);
    const auto& net = inst.network;
    EdgeSet f;
    double expected = 0.0;
    CounterRng rng = CounterRng(seed).split("modular");
    for (std::size_t e = 0; e < net.num_edges(); ++e) {
      if (!rng.bernoulli(0.5)) continue;
      f.push_back(e);
      double w[2];
      for (int k = 0; k < 2; ++k) {
        const EdgeEnd& end = net.end(e, k);
        w[k] = std::get<Modular>(net.oracle(end.oracle).family()).weights[end.slot];
      }
      expected += std::min(w[0], w[1]);
    }
    EXPECT_NEAR(cut_cost(net, f).value, expected, 1e-12);
  }
}

TEST(CutCost, SubadditiveAndMonotone) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    InstanceGenParams p;
    p.seed = seed;
    p.orientation = seed % 3 ? Orientation::Undirected : Orientation::Directed;
    const Instance inst = generate_instance(p);
    CounterRng rng = CounterRng(seed).split("sets");
    EdgeSet a, b, both;
    for (std::size_t e = 0; e < inst.network.num_edges(); ++e) {
      const bool in_a = rng.bernoulli(0.4), in_b = rng.bernoulli(0.4);
      if (in_a) a.push_back(e);
      if (in_b) b.push_back(e);
      if (in_a || in_b) both.push_back(e);
    }
    const double na = cut_cost(inst.network, a).value;
    const double nb = cut_cost(inst.network, b).value;
    const double nab = cut_cost(inst.network, both).value;
    EXPECT_LE(nab, na + nb + 1e-9);
    EXPECT_LE(na, nab + 1e-9);
    EXPECT_LE(nb, nab + 1e-9);
  }
}

TEST(Separation, UndirectedComponents) {
  const Instance star = star_instance(4);
  const auto& net = star.network;
  EXPECT_DOUBLE_EQ(separated_pairs(net, {}, star.demands).demand, 0.0);
  EXPECT_FALSE(is_multicut(net, {}, star.demands));
  EXPECT_TRUE(is_multicut(net, {0, 1, 2}, star.demands));
  // delta(l1) = {e1} separates l1 from everything else.
  const Separation s = separated_pairs(net, {0}, star.demands);
  EXPECT_DOUBLE_EQ(s.demand, 3.0);
  EXPECT_DOUBLE_EQ(sparsity(net, {0, 1, 2}, star.demands), 1.0 / 6.0);
  EXPECT_THROW(sparsity(net, {}, star.demands), UndefinedSparsityError);
}

TEST(Separation, SymmetricTwoCycle) {
  const auto net = two_cycle();
  DemandSet d;
  d.symmetric = true;
  d.pairs.push_back({0, 1, 2.0});
  const Separation s = separated_pairs(net, {0}, d);
  EXPECT_TRUE(s.forward[0]);
  EXPECT_FALSE(s.backward[0]);
  EXPECT_DOUBLE_EQ(s.demand, 2.0);
  EXPECT_TRUE(is_multicut(net, {0}, d));
  EXPECT_DOUBLE_EQ(separated_pairs(net, {0, 1}, d).demand, 4.0);
  d.symmetric = false;
  EXPECT_FALSE(is_multicut(net, {1}, d));
}

TEST(Separation, SparsityOfSinglePair) {
  // Path a - b - c with nu({bc}) = 3 and D = 2.
  NetworkBuilder b(Orientation::Undirected);
  for (const char* id : {"a", "b", "c"}) b.add_node(id);
  b.add_edge("ab", 0, 1);
  b.add_edge("bc", 1, 2);
  b.set_capacity(0, Modular{{9.0}});
  b.set_capacity(1, Modular{{9.0, 3.0}});
  b.set_capacity(2, Modular{{4.0}});
  const auto net = b.build();
  DemandSet d;
  d.pairs.push_back({0, 2, 2.0});
  EXPECT_DOUBLE_EQ(sparsity(net, {1}, d), 1.5);
}

TEST(Demands, Validation) {
  const auto net = two_cycle();
  DemandSet d;
  d.pairs.push_back({0, 0, 1.0});
  EXPECT_THROW(validate_demands(net, d), InputError);
  d.pairs = {{0, 1, -1.0}};
  EXPECT_THROW(validate_demands(net, d), InputError);
  d.pairs = {{0, 5, 1.0}};
  EXPECT_THROW(validate_demands(net, d), InputError);
  d.pairs = {{0, 1, 0.0}};
  EXPECT_NO_THROW(validate_demands(net, d));
}

TEST(NodeCapacitated, Encoding) {
  const std::vector<std::string> nodes{"a", "b", "c"};
  const std::vector<Edge> edges{{"ab", 0, 1}, {"bc", 1, 2}};
  const auto net = encode_node_capacitated(nodes, edges, {5.0, 1.0, 5.0}, {0, 2});
  EXPECT_DOUBLE_EQ(net.rho(1).eval({0}), 2.0);
  EXPECT_DOUBLE_EQ(net.rho(1).eval({0, 1}), 2.0);
  EXPECT_DOUBLE_EQ(net.rho(0).eval({0}), 5.0);
  const auto zero = encode_node_capacitated(nodes, edges, {0.0, 0.0, 0.0}, {});
  EXPECT_DOUBLE_EQ(cut_cost(zero, {0, 1}).value, 0.0);
  EXPECT_THROW(encode_node_capacitated(nodes, edges, {1.0, -1.0, 1.0}, {}), InputError);
  const auto isolated = encode_node_capacitated({"t"}, {}, {1.0}, {0});
  EXPECT_EQ(isolated.num_edges(), 0u);
}

}  // namespace
}  // namespace polyflow
