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

#include <compare>
#include <cstdint>

#include "cliffopt/symplectic.hpp"

namespace cliffopt {

/// A Clifford element with rows n and 2n dropped, packed into two words.
///
/// word1 holds rows 1..n-1 and word2 rows n+1..2n-1 (1-based). Row r of a
/// word occupies bits [(r-1)*2n, r*2n) and column c of a row sits at bit
/// offset c-1 inside it. Only the low 2n(n-1) bits of each word carry
/// payload; the remaining high bits are free for the database augmentation
/// byte.
///
/// The element is determined up to a local gate on the last qubit. Ordering
/// compares (word1, word2) as unsigned integers; it is the canonical order
/// used to choose minimal representatives.
class ThinMatrix {
 public:
  ThinMatrix() = default;
  ThinMatrix(int n, std::uint64_t word1, std::uint64_t word2);

  int num_qubits() const { return n_; }
  std::uint64_t word1() const { return word1_; }
  std::uint64_t word2() const { return word2_; }

  static int payload_bits(int n) { return 2 * n * (n - 1); }
  static std::uint64_t payload_mask(int n);

  /// Stored row by full-tableau index; r must not be n-1 or 2n-1 (0-based).
  Row row(int r) const;

  void apply_h(int q);
  void apply_p(int q);
  void apply_cnot(int control, int target);
  void apply(const Gate& g);
  /// Left local action; a no-op on the payload when q is the last qubit.
  void apply_local_left(int q, Gl2 g);

  auto operator<=>(const ThinMatrix&) const = default;

 private:
  std::uint64_t column_mask(int c) const;

  std::int32_t n_ = 0;
  std::uint64_t word1_ = 0;
  std::uint64_t word2_ = 0;
};

ThinMatrix pack_thin(const Tableau& t);

/// Rebuilds the two missing rows by symplectic Gram-Schmidt and orders them
/// so the last qubit satisfies x < z < x^z in row order. Throws
/// InvalidArgument when the payload cannot be completed to a symplectic
/// matrix.
Tableau expand_thin(const ThinMatrix& t);

}  // namespace cliffopt
