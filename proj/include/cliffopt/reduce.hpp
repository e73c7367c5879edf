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

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cliffopt/symplectic.hpp"
#include "cliffopt/thin_matrix.hpp"

namespace cliffopt {

/// Canonical forms of a Clifford element under the local subgroup C_n^0 and
/// qubit relabeling.
///
/// Three nested reductions are provided:
///
///   left_reduce(U)   the unique element of C_n^0 U whose rows satisfy
///                    x_j < z_j < x_j^z_j (row order) for every qubit j;
///   local_reduce(U)  the smallest left-reduced element of C_n^0 U C_n^0
///                    among right multipliers that sort each column triple
///                    by support;
///   reduce_full(U)   the smallest local_reduce(W^-1 U W) over permutations
///                    W minimizing the kappa rank matrix.
///
/// Elements compare by their packed ThinMatrix words, so the result of
/// reduce_full is a class invariant that can be stored in 128 bits.

/// Per-qubit support of a 2n-bit vector: bit j is v_j OR v_{n+j}.
inline std::uint32_t chi(int n, Row v) { return support(n, v); }

/// chi value re-encoded so that integer order reads qubit 1 as the most
/// significant position.
std::uint32_t chi_order_key(int n, std::uint32_t chi_value);

struct LeftReduced {
  Tableau v;
  LocalElement l;  // v = l * u
};

LeftReduced left_reduce(const Tableau& u);

struct LocalReduced {
  Tableau v;
  LocalElement l;  // v = l * u * r
  LocalElement r;
};

/// Options shared by local_reduce and reduce_full.
struct ReduceOptions {
  /// Drop non-identity candidates that provably lead to an already covered
  /// element: right factors R_j with leftReduce(U R_j) = leftReduce(U) and
  /// permutations W with leftReduce(W^-1 U W) = leftReduce(U). The identity
  /// candidate is always kept when it qualifies.
  bool streamlined = false;
};

/// Counters for the sizes the running time depends on.
struct ReduceStats {
  std::uint64_t calls = 0;
  std::uint64_t perm_candidates = 0;   // sum of |S(U)|
  std::uint64_t max_perm_candidates = 0;
  std::uint64_t local_products = 0;    // sum over W of |S_1| ... |S_n|
};

LocalReduced local_reduce(const Tableau& u, const ReduceOptions& options = {});

/// n x n matrix of ranks of the 2x2 qubit-pair blocks, entries in {0,1,2}.
class KappaMatrix {
 public:
  KappaMatrix() = default;
  explicit KappaMatrix(int n) : n_(n) {}

  int num_qubits() const { return n_; }
  int operator()(int i, int j) const { return entries_[i * n_ + j]; }
  void set(int i, int j, int value) { entries_[i * n_ + j] = static_cast<std::uint8_t>(value); }

  /// Row-major lexicographic comparison.
  auto operator<=>(const KappaMatrix&) const = default;

 private:
  int n_ = 0;
  std::array<std::uint8_t, kMaxQubits * kMaxQubits> entries_{};
};

KappaMatrix kappa(const Tableau& u);
KappaMatrix kappa_min(const Tableau& u);
/// All W with kappa(W^-1 U W) = kappa_min(U), in lexicographic order.
std::vector<QubitPermutation> perm_candidates(const Tableau& u);

struct ReductionWitness {
  LocalElement k;
  LocalElement l;
  QubitPermutation w;
};

struct FullReduced {
  ThinMatrix thin;
  Tableau v;  // = k * w^-1 * u * w * l, left-reduced
  ReductionWitness witness;
};

FullReduced reduce_full(const Tableau& u, const ReduceOptions& options = {}, ReduceStats* stats = nullptr);

/// Fast path: only the canonical thin matrix, no witness. Uses the
/// streamlined candidate sets unless told otherwise.
ThinMatrix reduce_thin(const Tableau& u, bool streamlined = true, ReduceStats* stats = nullptr);

}  // namespace cliffopt
