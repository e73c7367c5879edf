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

#include "cliffopt/reduce.hpp"

#include <algorithm>
#include <bit>
#include <utility>

namespace cliffopt {

namespace {

using Rows = std::array<Row, 2 * kMaxQubits>;

Rows rows_of(const Tableau& t) {
  Rows out{};
  for (int r = 0; r < t.dim(); ++r) out[r] = t.row(r);
  return out;
}

Tableau tableau_of(int n, const Rows& rows) {
  return Tableau::from_rows(n, std::span<const Row>(rows.data(), static_cast<std::size_t>(2 * n)));
}

// Under right multiplication by g the column triple (x, z, x^z) of a qubit
// is permuted. kRightPerm[g] = {source of new x, source of new z, source of
// new x^z} with 0 = x, 1 = z, 2 = x^z.
struct RightPermTable {
  std::array<std::array<int, 3>, Gl2::kOrder> perm{};
  RightPermTable() {
    auto code = [](int cx, int cz) { return cx && cz ? 2 : (cx ? 0 : 1); };
    for (int g = 0; g < Gl2::kOrder; ++g) {
      const Gl2 b = Gl2::from_index(g);
      perm[g][0] = code(b.entry(0, 0), b.entry(1, 0));
      perm[g][1] = code(b.entry(0, 1), b.entry(1, 1));
      perm[g][2] = 3 - perm[g][0] - perm[g][1];
    }
  }
};

const RightPermTable& right_perms() {
  static const RightPermTable table;
  return table;
}

// Orders (x, z, x^z) of one qubit by row key; returns the smallest two.
inline void sort_triple(const Row* key, Row x, Row z, Row& first, Row& second) {
  Row a = x, b = z, c = static_cast<Row>(x ^ z);
  if (key[a] > key[b]) std::swap(a, b);
  if (key[b] > key[c]) std::swap(b, c);
  if (key[a] > key[b]) std::swap(a, b);
  first = a;
  second = b;
}

// Left-reduces qubits [0, limit) of rows in place.
inline void left_reduce_rows(int n, Rows& rows, int limit) {
  const Row* key = row_order_table(n);
  for (int q = 0; q < limit; ++q) sort_triple(key, rows[q], rows[n + q], rows[q], rows[n + q]);
}

// The left factor taking (x, z) to the reduced pair (a, b).
Gl2 left_witness(Row x, Row z, Row a, Row b) {
  auto coeffs = [&](Row v, int& cx, int& cz) {
    if (v == x) {
      cx = 1, cz = 0;
    } else if (v == z) {
      cx = 0, cz = 1;
    } else {
      cx = 1, cz = 1;
    }
  };
  int b00, b01, b10, b11;
  coeffs(a, b00, b01);
  coeffs(b, b10, b11);
  return Gl2::from_entries(b00, b01, b10, b11);
}

bool same_left_coset(int n, Rows a, Rows b) {
  left_reduce_rows(n, a, n);
  left_reduce_rows(n, b, n);
  return std::equal(a.begin(), a.begin() + 2 * n, b.begin());
}

struct LocalBest {
  std::uint64_t w1 = ~std::uint64_t{0};
  std::uint64_t w2 = ~std::uint64_t{0};
  bool found = false;
  std::array<std::uint8_t, kMaxQubits> right{};
};

// Searches the right multipliers R = R_1..R_n whose per-qubit column triples
// are sorted by chi, and keeps the smallest packed leftReduce(X R) in best.
// Returns the number of products visited.
std::uint64_t local_search(int n, const Rows& x, bool streamlined, LocalBest& best) {
  const unsigned low = (1u << n) - 1;
  // sx[i] bit c: chi(column c) at qubit i. sy[i] bit j: chi(col j ^ col n+j).
  std::array<unsigned, kMaxQubits> sx{}, sy{};
  for (int i = 0; i < n; ++i) {
    sx[i] = x[i] | x[n + i];
    const unsigned di = (x[i] ^ (x[i] >> n)) & low;
    const unsigned dn = (x[n + i] ^ (x[n + i] >> n)) & low;
    sy[i] = di | dn;
  }
  auto chi_key = [&](const std::array<unsigned, kMaxQubits>& s, int c) {
    unsigned k = 0;
    for (int i = 0; i < n; ++i) k |= ((s[i] >> c) & 1u) << (n - 1 - i);
    return k;
  };

  const auto& perms = right_perms().perm;
  std::array<std::array<std::uint8_t, Gl2::kOrder>, kMaxQubits> choices{};
  std::array<int, kMaxQubits> counts{};
  for (int j = 0; j < n; ++j) {
    const unsigned t[3] = {chi_key(sx, j), chi_key(sx, n + j), chi_key(sy, j)};
    bool identity_ok = false;
    for (int g = 0; g < Gl2::kOrder; ++g) {
      const auto& p = perms[g];
      if (t[p[0]] <= t[p[1]] && t[p[1]] <= t[p[2]]) {
        if (g == 0) identity_ok = true;
        choices[j][counts[j]++] = static_cast<std::uint8_t>(g);
      }
    }
    if (streamlined && identity_ok && counts[j] > 1) {
      int kept = 0;
      for (int k = 0; k < counts[j]; ++k) {
        const int g = choices[j][k];
        if (g != 0) {
          Tableau moved = tableau_of(n, x);
          moved.apply_local_right(j, Gl2::from_index(g));
          if (same_left_coset(n, x, rows_of(moved))) continue;
        }
        choices[j][kept++] = static_cast<std::uint8_t>(g);
      }
      counts[j] = kept;
    }
  }

  // Column contributions of qubit j under each candidate, per row.
  std::array<std::array<Rows, Gl2::kOrder>, kMaxQubits> contrib{};
  Rows base{};
  for (int r = 0; r < 2 * n; ++r) {
    Row keep = x[r];
    for (int j = 0; j < n; ++j) keep &= static_cast<Row>(~((1u << j) | (1u << (n + j))));
    base[r] = keep;
  }
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < counts[j]; ++k) {
      const Gl2 g = Gl2::from_index(choices[j][k]);
      const unsigned b00 = g.entry(0, 0), b01 = g.entry(0, 1), b10 = g.entry(1, 0), b11 = g.entry(1, 1);
      for (int r = 0; r < 2 * n; ++r) {
        const unsigned cx = (x[r] >> j) & 1u, cz = (x[r] >> (n + j)) & 1u;
        const unsigned nx = (b00 & cx) ^ (b10 & cz), nz = (b01 & cx) ^ (b11 & cz);
        contrib[j][k][r] = static_cast<Row>((nx << j) | (nz << (n + j)));
      }
    }
  }

  const Row* key = row_order_table(n);
  std::array<int, kMaxQubits> digit{};
  std::uint64_t visited = 0;
  while (true) {
    ++visited;
    Rows y = base;
    for (int j = 0; j < n; ++j) {
      const Rows& c = contrib[j][digit[j]];
      for (int r = 0; r < 2 * n; ++r) y[r] |= c[r];
    }
    std::uint64_t w1 = 0, w2 = 0;
    const int width = 2 * n;
    for (int q = 0; q < n - 1; ++q) {
      Row a, b;
      sort_triple(key, y[q], y[n + q], a, b);
      w1 |= std::uint64_t{a} << (q * width);
      w2 |= std::uint64_t{b} << (q * width);
    }
    if (!best.found || w1 < best.w1 || (w1 == best.w1 && w2 < best.w2)) {
      best.found = true;
      best.w1 = w1;
      best.w2 = w2;
      for (int j = 0; j < n; ++j) best.right[j] = choices[j][digit[j]];
    }
    int j = 0;
    while (j < n && ++digit[j] == counts[j]) digit[j++] = 0;
    if (j == n) break;
  }
  return visited;
}

KappaMatrix kappa_of_rows(int n, const Rows& u) {
  KappaMatrix k(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const unsigned a = (u[i] >> j) & 1u, b = (u[i] >> (n + j)) & 1u;
      const unsigned c = (u[n + i] >> j) & 1u, d = (u[n + i] >> (n + j)) & 1u;
      int rank = 0;
      if ((a & d) ^ (b & c)) {
        rank = 2;
      } else if (a | b | c | d) {
        rank = 1;
      }
      k.set(i, j, rank);
    }
  }
  return k;
}

// Lexicographic rank of a mapping among all permutations of its size.
int lehmer_rank(int n, const std::array<int, kMaxQubits>& w) {
  static constexpr int kFactorial[] = {1, 1, 2, 6, 24, 120, 720};
  int rank = 0;
  unsigned used = 0;
  for (int t = 0; t < n; ++t) {
    const int smaller_unused = std::popcount(~used & ((1u << w[t]) - 1));
    rank += smaller_unused * kFactorial[n - 1 - t];
    used |= 1u << w[t];
  }
  return rank;
}

// Finds the permutations minimizing kappa(W^-1 U W)_{a,b} = kappa(U)_{w(a),w(b)}
// in row-major order. A depth-first search over w(0), w(1), ... prunes on the
// first row, whose entry (0, t) is known once w(t) is fixed; the remaining
// rows are compared at the leaves. Leaves are visited in lexicographic order
// of the mapping, so ties come out sorted.
class KappaSearch {
 public:
  KappaSearch(const KappaMatrix& k, int n, std::vector<const QubitPermutation*>& out)
      : k_(k), n_(n), out_(out), all_(QubitPermutation::all(n)) {
    out_.clear();
    descend(0, 0);
  }

  KappaMatrix minimum() const {
    KappaMatrix m(n_);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) m.set(a, b, best_[a * n_ + b]);
    return m;
  }

 private:
  // -1, 0, 1: cur_[0..len) against best_[0..len).
  int compare_prefix(int from, int len) const {
    if (!have_) return -1;
    for (int i = from; i < len; ++i)
      if (cur_[i] != best_[i]) return cur_[i] < best_[i] ? -1 : 1;
    return 0;
  }

  void descend(int t, unsigned used) {
    if (t == n_) {
      leaf();
      return;
    }
    for (int v = 0; v < n_; ++v) {
      if (used & (1u << v)) continue;
      w_[t] = v;
      cur_[t] = static_cast<std::uint8_t>(k_(w_[0], v));
      if (compare_prefix(0, t + 1) > 0) continue;
      descend(t + 1, used | (1u << v));
    }
  }

  void leaf() {
    for (int a = 1; a < n_; ++a)
      for (int b = 0; b < n_; ++b) cur_[a * n_ + b] = static_cast<std::uint8_t>(k_(w_[a], w_[b]));
    const int cmp = compare_prefix(0, n_ * n_);
    if (cmp > 0) return;
    if (cmp < 0) {
      best_ = cur_;
      have_ = true;
      out_.clear();
    }
    out_.push_back(&all_[lehmer_rank(n_, w_)]);
  }

  const KappaMatrix& k_;
  int n_;
  std::vector<const QubitPermutation*>& out_;
  const std::vector<QubitPermutation>& all_;
  std::array<int, kMaxQubits> w_{};
  std::array<std::uint8_t, kMaxQubits * kMaxQubits> cur_{};
  std::array<std::uint8_t, kMaxQubits * kMaxQubits> best_{};
  bool have_ = false;
};

struct FullSearch {
  LocalBest best;
  const QubitPermutation* w = nullptr;
};

FullSearch search_full(const Tableau& u, bool streamlined, ReduceStats* stats) {
  const int n = u.num_qubits();
  const Rows ur = rows_of(u);
  thread_local std::vector<const QubitPermutation*> candidates;
  KappaSearch(kappa_of_rows(n, ur), n, candidates);
  const bool identity_in = candidates.front()->is_identity();
  FullSearch out;
  std::uint64_t products = 0;
  for (const QubitPermutation* w : candidates) {
    Rows x;
    if (w->is_identity()) {
      x = ur;
    } else {
      x = rows_of(conjugate(u, *w));
      if (streamlined && identity_in && same_left_coset(n, x, ur)) continue;
    }
    LocalBest local;
    products += local_search(n, x, streamlined, local);
    if (out.w == nullptr || local.w1 < out.best.w1 || (local.w1 == out.best.w1 && local.w2 < out.best.w2)) {
      out.best = local;
      out.w = w;
    }
  }
  if (stats != nullptr) {
    ++stats->calls;
    stats->perm_candidates += candidates.size();
    stats->max_perm_candidates = std::max<std::uint64_t>(stats->max_perm_candidates, candidates.size());
    stats->local_products += products;
  }
  return out;
}

// Applies the chosen right factors and left-reduces every qubit; fills the
// left factor.
Tableau finish(const Tableau& x, const std::array<std::uint8_t, kMaxQubits>& right, LocalElement& k_out,
               LocalElement& r_out) {
  const int n = x.num_qubits();
  Tableau y = x;
  r_out = LocalElement(n);
  for (int j = 0; j < n; ++j) {
    r_out[j] = Gl2::from_index(right[j]);
    y.apply_local_right(j, r_out[j]);
  }
  k_out = LocalElement(n);
  const Row* key = row_order_table(n);
  for (int q = 0; q < n; ++q) {
    Row a, b;
    sort_triple(key, y.row(q), y.row(n + q), a, b);
    k_out[q] = left_witness(y.row(q), y.row(n + q), a, b);
    y.set_row(q, a);
    y.set_row(n + q, b);
  }
  return y;
}

}  // namespace

std::uint32_t chi_order_key(int n, std::uint32_t chi_value) {
  std::uint32_t out = 0;
  for (int i = 0; i < n; ++i) out |= ((chi_value >> i) & 1u) << (n - 1 - i);
  return out;
}

LeftReduced left_reduce(const Tableau& u) {
  const int n = u.num_qubits();
  LeftReduced out{u, LocalElement(n)};
  const Row* key = row_order_table(n);
  for (int q = 0; q < n; ++q) {
    Row a, b;
    sort_triple(key, u.row(q), u.row(n + q), a, b);
    out.l[q] = left_witness(u.row(q), u.row(n + q), a, b);
    out.v.set_row(q, a);
    out.v.set_row(n + q, b);
  }
  return out;
}

LocalReduced local_reduce(const Tableau& u, const ReduceOptions& options) {
  LocalBest best;
  local_search(u.num_qubits(), rows_of(u), options.streamlined, best);
  LocalReduced out;
  out.v = finish(u, best.right, out.l, out.r);
  return out;
}

KappaMatrix kappa(const Tableau& u) { return kappa_of_rows(u.num_qubits(), rows_of(u)); }

KappaMatrix kappa_min(const Tableau& u) {
  std::vector<const QubitPermutation*> perms;
  return KappaSearch(kappa(u), u.num_qubits(), perms).minimum();
}

std::vector<QubitPermutation> perm_candidates(const Tableau& u) {
  std::vector<const QubitPermutation*> perms;
  KappaSearch(kappa(u), u.num_qubits(), perms);
  std::vector<QubitPermutation> out;
  for (const QubitPermutation* w : perms) out.push_back(*w);
  return out;
}

FullReduced reduce_full(const Tableau& u, const ReduceOptions& options, ReduceStats* stats) {
  const FullSearch s = search_full(u, options.streamlined, stats);
  FullReduced out;
  out.witness.w = *s.w;
  out.v = finish(conjugate(u, *s.w), s.best.right, out.witness.k, out.witness.l);
  out.thin = ThinMatrix(u.num_qubits(), s.best.w1 & ThinMatrix::payload_mask(u.num_qubits()),
                        s.best.w2 & ThinMatrix::payload_mask(u.num_qubits()));
  return out;
}

ThinMatrix reduce_thin(const Tableau& u, bool streamlined, ReduceStats* stats) {
  const int n = u.num_qubits();
  const FullSearch s = search_full(u, streamlined, stats);
  return ThinMatrix(n, s.best.w1 & ThinMatrix::payload_mask(n), s.best.w2 & ThinMatrix::payload_mask(n));
}

}  // namespace cliffopt
