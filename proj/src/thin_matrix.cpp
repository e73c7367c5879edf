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

#include "cliffopt/thin_matrix.hpp"

#include <algorithm>

namespace cliffopt {

ThinMatrix::ThinMatrix(int n, std::uint64_t word1, std::uint64_t word2) : n_(n), word1_(word1), word2_(word2) {
  if (n < 1 || n > kMaxQubits) throw InvalidArgument("qubit count must be in 1..6");
  const std::uint64_t mask = payload_mask(n);
  if ((word1 & ~mask) || (word2 & ~mask)) throw InvalidArgument("thin matrix has bits outside the payload");
}

std::uint64_t ThinMatrix::payload_mask(int n) {
  const int bits = payload_bits(n);
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

Row ThinMatrix::row(int r) const {
  const int width = 2 * n_;
  const std::uint64_t row_mask = (std::uint64_t{1} << width) - 1;
  if (r >= 0 && r < n_ - 1) return static_cast<Row>((word1_ >> (r * width)) & row_mask);
  if (r >= n_ && r < 2 * n_ - 1) return static_cast<Row>((word2_ >> ((r - n_) * width)) & row_mask);
  throw InvalidArgument("thin matrix does not store this row");
}

// Bit c of every stored row.
std::uint64_t ThinMatrix::column_mask(int c) const {
  std::uint64_t m = 0;
  for (int r = 0; r < n_ - 1; ++r) m |= std::uint64_t{1} << (r * 2 * n_ + c);
  return m;
}

void ThinMatrix::apply_h(int q) {
  if (q < 0 || q >= n_) throw InvalidArgument("qubit index out of range");
  const std::uint64_t m = column_mask(0);
  for (std::uint64_t* w : {&word1_, &word2_}) {
    const std::uint64_t d = ((*w >> q) ^ (*w >> (n_ + q))) & m;
    *w ^= (d << q) | (d << (n_ + q));
  }
}

void ThinMatrix::apply_p(int q) {
  if (q < 0 || q >= n_) throw InvalidArgument("qubit index out of range");
  const std::uint64_t m = column_mask(0);
  for (std::uint64_t* w : {&word1_, &word2_}) *w ^= ((*w >> q) & m) << (n_ + q);
}

void ThinMatrix::apply_cnot(int control, int target) {
  if (control < 0 || control >= n_ || target < 0 || target >= n_) throw InvalidArgument("qubit index out of range");
  if (control == target) throw InvalidArgument("cnot control equals target");
  const std::uint64_t m = column_mask(0);
  for (std::uint64_t* w : {&word1_, &word2_}) {
    *w ^= ((*w >> control) & m) << target;
    *w ^= ((*w >> (n_ + target)) & m) << (n_ + control);
  }
}

void ThinMatrix::apply(const Gate& g) {
  switch (g.kind) {
    case GateKind::kH:
      apply_h(g.q0);
      break;
    case GateKind::kP:
      apply_p(g.q0);
      break;
    case GateKind::kCnot:
      apply_cnot(g.q0, g.q1);
      break;
  }
}

void ThinMatrix::apply_local_left(int q, Gl2 g) {
  if (q < 0 || q >= n_) throw InvalidArgument("qubit index out of range");
  if (q == n_ - 1) return;
  const int width = 2 * n_;
  const std::uint64_t row_mask = (std::uint64_t{1} << width) - 1;
  const int shift = q * width;
  const std::uint64_t x = (word1_ >> shift) & row_mask;
  const std::uint64_t z = (word2_ >> shift) & row_mask;
  const std::uint64_t nx = (g.entry(0, 0) ? x : 0) ^ (g.entry(0, 1) ? z : 0);
  const std::uint64_t nz = (g.entry(1, 0) ? x : 0) ^ (g.entry(1, 1) ? z : 0);
  word1_ = (word1_ & ~(row_mask << shift)) | (nx << shift);
  word2_ = (word2_ & ~(row_mask << shift)) | (nz << shift);
}

ThinMatrix pack_thin(const Tableau& t) {
  const int n = t.num_qubits();
  const int width = 2 * n;
  std::uint64_t w1 = 0;
  std::uint64_t w2 = 0;
  for (int r = 0; r < n - 1; ++r) {
    w1 |= std::uint64_t{t.row(r)} << (r * width);
    w2 |= std::uint64_t{t.row(n + r)} << (r * width);
  }
  return ThinMatrix(n, w1, w2);
}

Tableau expand_thin(const ThinMatrix& thin) {
  const int n = thin.num_qubits();
  std::array<Row, kMaxQubits> xs{};
  std::array<Row, kMaxQubits> zs{};
  for (int r = 0; r < n - 1; ++r) {
    xs[r] = thin.row(r);
    zs[r] = thin.row(n + r);
  }
  for (int i = 0; i < n - 1; ++i) {
    for (int j = 0; j < n - 1; ++j) {
      const bool ok = symplectic_product(n, xs[i], xs[j]) == 0 && symplectic_product(n, zs[i], zs[j]) == 0 &&
                      symplectic_product(n, xs[i], zs[j]) == (i == j ? 1 : 0);
      if (!ok) throw InvalidArgument("thin matrix rows are not a partial symplectic basis");
    }
  }
  // Projection onto the symplectic complement of the stored rows.
  auto project = [&](Row v) {
    Row out = v;
    for (int i = 0; i < n - 1; ++i) {
      if (symplectic_product(n, v, zs[i])) out ^= xs[i];
      if (symplectic_product(n, v, xs[i])) out ^= zs[i];
    }
    return out;
  };
  Row x_last = 0;
  Row z_last = 0;
  for (int c = 0; c < 2 * n && x_last == 0; ++c) x_last = project(static_cast<Row>(1u << c));
  for (int c = 0; c < 2 * n && z_last == 0; ++c) {
    const Row candidate = project(static_cast<Row>(1u << c));
    if (symplectic_product(n, x_last, candidate)) z_last = candidate;
  }
  if (x_last == 0 || z_last == 0) throw InvalidArgument("thin matrix cannot be completed");

  // Canonical order on the restored qubit: x < z < x^z in row order.
  std::array<Row, 3> triple = {x_last, z_last, static_cast<Row>(x_last ^ z_last)};
  std::sort(triple.begin(), triple.end(),
            [n](Row a, Row b) { return row_order_key(n, a) < row_order_key(n, b); });

  Tableau t(n);
  for (int r = 0; r < n - 1; ++r) {
    t.set_row(r, xs[r]);
    t.set_row(n + r, zs[r]);
  }
  t.set_row(n - 1, triple[0]);
  t.set_row(2 * n - 1, triple[1]);
  return t;
}

}  // namespace cliffopt
