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

// Small directed-graph helpers shared by the network, reduction and rounding
// code: reachability with removed arcs and non-negative shortest paths.

#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <utility>
#include <vector>

namespace polyflow {

struct Arc {
  std::size_t from;
  std::size_t to;
  double length = 0.0;
  std::size_t tag = 0;  // caller-defined, usually the originating edge
};

class Digraph {
 public:
  explicit Digraph(std::size_t nodes = 0) : out_(nodes) {}

  std::size_t add_arc(std::size_t from, std::size_t to, double length = 0.0, std::size_t tag = 0) {
    arcs_.push_back({from, to, length, tag});
    out_[from].push_back(arcs_.size() - 1);
    return arcs_.size() - 1;
  }

  std::size_t num_nodes() const { return out_.size(); }
  std::size_t num_arcs() const { return arcs_.size(); }
  const Arc& arc(std::size_t a) const { return arcs_[a]; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<std::size_t>& out_arcs(std::size_t v) const { return out_[v]; }

  // Nodes reachable from `src` using arcs for which `usable(arc index)` holds.
  template <typename Usable>
  std::vector<bool> reachable(std::size_t src, Usable usable) const {
    std::vector<bool> seen(num_nodes(), false);
    std::vector<std::size_t> stack{src};
    seen[src] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t a : out_[v]) {
        if (!usable(a)) continue;
        const std::size_t w = arcs_[a].to;
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    return seen;
  }

  std::vector<bool> reachable(std::size_t src) const {
    return reachable(src, [](std::size_t) { return true; });
  }

  // Dijkstra over arcs accepted by `usable`; lengths must be non-negative.
  template <typename Usable>
  std::vector<double> distances(std::size_t src, Usable usable) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(num_nodes(), inf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[src] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v]) continue;
      for (std::size_t a : out_[v]) {
        if (!usable(a)) continue;
        const Arc& arc = arcs_[a];
        const double nd = d + arc.length;
        if (nd < dist[arc.to]) {
          dist[arc.to] = nd;
          pq.push({nd, arc.to});
        }
      }
    }
    return dist;
  }

  std::vector<double> distances(std::size_t src) const {
    return distances(src, [](std::size_t) { return true; });
  }

 private:
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> out_;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;  // smaller index stays root, so labels are deterministic
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace polyflow
