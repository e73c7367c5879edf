// Copyright 2026 The cliffopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Brute-force reference computations over the whole symplectic group for
// n <= 3. Nothing here uses the reduction machinery: elements are reached by
// primitive gates only, so these serve as independent oracles.

#pragma once

#include <cstdint>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "cliffopt/symplectic.hpp"

namespace cliffopt::oracle {

inline std::uint64_t key_of(const Tableau& t) {
  std::uint64_t k = 0;
  for (int r = 0; r < t.dim(); ++r) k |= std::uint64_t{t.row(r)} << (r * t.dim());
  return k;
}

/// Every element of Sp(2n, F2), reached from I by right multiplication with
/// primitive gates (n <= 3 keeps the key within 36 bits).
struct Group {
  int n = 0;
  std::vector<Tableau> elements;
  std::unordered_map<std::uint64_t, std::uint32_t> index;

  std::uint32_t find(const Tableau& t) const { return index.at(key_of(t)); }
};

inline std::vector<Gate> all_gates(int n) {
  std::vector<Gate> gates;
  for (int q = 0; q < n; ++q) {
    gates.push_back(Gate::h(q));
    gates.push_back(Gate::p(q));
  }
  for (int c = 0; c < n; ++c)
    for (int t = 0; t < n; ++t)
      if (c != t) gates.push_back(Gate::cnot(c, t));
  return gates;
}

inline Group enumerate_group(int n) {
  Group g;
  g.n = n;
  const auto gates = all_gates(n);
  g.elements.push_back(Tableau::identity(n));
  g.index.emplace(key_of(g.elements[0]), 0);
  for (std::size_t head = 0; head < g.elements.size(); ++head) {
    for (const Gate& gate : gates) {
      Tableau next = g.elements[head];
      next.apply(gate);
      if (g.index.emplace(key_of(next), static_cast<std::uint32_t>(g.elements.size())).second)
        g.elements.push_back(next);
    }
  }
  return g;
}

/// CNOT cost of every element by 0-1 BFS: H and P cost 0, CNOT costs 1.
inline std::vector<int> zero_one_costs(const Group& g) {
  std::vector<int> cost(g.elements.size(), -1);
  std::vector<int> dist(g.elements.size(), 1 << 30);
  std::deque<std::uint32_t> queue;
  dist[0] = 0;
  queue.push_back(0);
  const auto gates = all_gates(g.n);
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    if (cost[u] >= 0) continue;
    cost[u] = dist[u];
    for (const Gate& gate : gates) {
      Tableau next = g.elements[u];
      next.apply(gate);
      const std::uint32_t v = g.find(next);
      const int w = gate.kind == GateKind::kCnot ? 1 : 0;
      if (dist[u] + w < dist[v]) {
        dist[v] = dist[u] + w;
        if (w == 0) {
          queue.push_front(v);
        } else {
          queue.push_back(v);
        }
      }
    }
  }
  return cost;
}

/// Orbit label of every element under left and right single-qubit gates and,
/// optionally, conjugation by qubit swaps (union-find over generator moves).
inline std::vector<std::uint32_t> class_labels(const Group& g, bool with_permutations = true) {
  const int n = g.n;
  std::vector<std::uint32_t> parent(g.elements.size());
  std::iota(parent.begin(), parent.end(), 0u);
  auto root = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::uint32_t a, std::uint32_t b) {
    a = root(a);
    b = root(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  std::vector<QubitPermutation> swaps;
  for (int a = 0; with_permutations && a + 1 < n; ++a) {
    std::vector<int> m(n);
    std::iota(m.begin(), m.end(), 0);
    std::swap(m[a], m[a + 1]);
    swaps.push_back(QubitPermutation::from_mapping(m));
  }
  for (std::uint32_t u = 0; u < g.elements.size(); ++u) {
    const Tableau& t = g.elements[u];
    for (int q = 0; q < n; ++q) {
      for (const Gl2 b : {Gl2::hadamard(), Gl2::phase()}) {
        Tableau left = t;
        left.apply_local_left(q, b);
        unite(u, g.find(left));
        Tableau right = t;
        right.apply_local_right(q, b);
        unite(u, g.find(right));
      }
    }
    for (const QubitPermutation& w : swaps) unite(u, g.find(conjugate(t, w)));
  }
  std::vector<std::uint32_t> labels(g.elements.size());
  for (std::uint32_t u = 0; u < g.elements.size(); ++u) labels[u] = root(u);
  return labels;
}

}  // namespace cliffopt::oracle
