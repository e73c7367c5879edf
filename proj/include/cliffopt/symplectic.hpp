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
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cliffopt {

inline constexpr int kMaxQubits = 6;

using UInt128 = unsigned __int128;

std::string to_string(UInt128 value);

/// A row of a binary symplectic matrix. Column c (0-based) is bit c, so the
/// X part occupies bits [0, n) and the Z part bits [n, 2n).
using Row = std::uint16_t;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/*******************************************************************************
 * GL(2, F2): the action of a single-qubit Clifford on its (x, z) coordinates.
 ******************************************************************************/

/// One of the six invertible 2x2 binary matrices. The block acts on the index
/// pair (j, n+j); entry (r, c) is stored at bit 2*r + c.
class Gl2 {
 public:
  static constexpr int kOrder = 6;

  constexpr Gl2() = default;

  static constexpr Gl2 from_index(int index) { return Gl2(static_cast<std::uint8_t>(index)); }
  static Gl2 from_entries(int b00, int b01, int b10, int b11);
  static constexpr Gl2 identity() { return Gl2(0); }
  static constexpr Gl2 hadamard() { return Gl2(1); }
  static constexpr Gl2 phase() { return Gl2(2); }

  constexpr int index() const { return index_; }
  int entry(int r, int c) const { return (kCodes[index_] >> (2 * r + c)) & 1; }

  Gl2 operator*(Gl2 rhs) const;
  Gl2 inverse() const;

  /// Primitive gate word (each letter 'h' or 'p') whose replay equals this
  /// element, of minimal length.
  const std::string& word() const;

  constexpr bool operator==(const Gl2&) const = default;

 private:
  constexpr explicit Gl2(std::uint8_t index) : index_(index) {}

  // I, H, P, HPH, PH, HP.
  static constexpr std::array<std::uint8_t, kOrder> kCodes = {0b1001, 0b0110, 0b1011,
                                                              0b1101, 0b0111, 0b1110};
  std::uint8_t index_ = 0;
};

/*******************************************************************************
 * Gates and circuits.
 ******************************************************************************/

enum class GateKind : std::uint8_t { kH, kP, kCnot };

/// A primitive gate. Qubit indices are 0-based in memory and 1-based in text.
struct Gate {
  GateKind kind = GateKind::kH;
  int q0 = 0;  // target of H/P, control of CNOT
  int q1 = 0;  // target of CNOT

  static Gate h(int q) { return {GateKind::kH, q, 0}; }
  static Gate p(int q) { return {GateKind::kP, q, 0}; }
  static Gate cnot(int control, int target) { return {GateKind::kCnot, control, target}; }

  bool operator==(const Gate&) const = default;
};

std::string to_string(const Gate& g);

struct Circuit {
  int n = 0;
  std::vector<Gate> gates;

  int cnot_count() const;
  Circuit reversed() const;
  void append(const Circuit& other);

  /// Validates indices against n; throws InvalidArgument.
  void validate() const;
};

/// One gate per line: "h q", "p q", "cx c t" with 1-based indices. Blank
/// lines and lines starting with '#' are ignored.
Circuit parse_circuit(int n, const std::string& text);
std::string format_circuit(const Circuit& c);

/*******************************************************************************
 * Tableau: a full 2n x 2n binary matrix, rows stored as bit masks.
 ******************************************************************************/

class LocalElement;
class QubitPermutation;

class Tableau {
 public:
  Tableau() = default;
  /// Zero matrix of size 2n x 2n.
  explicit Tableau(int n);

  static Tableau identity(int n);
  static Tableau omega(int n);
  static Tableau from_rows(int n, std::span<const Row> rows);

  int num_qubits() const { return n_; }
  int dim() const { return 2 * n_; }
  Row row(int r) const { return rows_[r]; }
  void set_row(int r, Row value) { rows_[r] = value; }
  int bit(int r, int c) const { return (rows_[r] >> c) & 1; }
  void set_bit(int r, int c, int value);
  std::span<const Row> rows() const { return {rows_.data(), static_cast<std::size_t>(2 * n_)}; }

  // Right multiplication by a gate: column operations.
  void apply_h(int q);
  void apply_p(int q);
  void apply_cnot(int control, int target);
  void apply(const Gate& g);
  void apply(const Circuit& c);

  /// U <- L_q U where L_q acts as g on qubit q: rows q and n+q recombined.
  void apply_local_left(int q, Gl2 g);
  /// U <- U R_q: columns q and n+q recombined.
  void apply_local_right(int q, Gl2 g);

  bool operator==(const Tableau& other) const;
  bool operator<(const Tableau& other) const;

 private:
  void check_qubit(int q) const;

  int n_ = 0;
  std::array<Row, 2 * kMaxQubits> rows_{};
};

std::ostream& operator<<(std::ostream& os, const Tableau& t);

/// 2n lines of 2n '0'/'1' characters; blank lines ignored.
Tableau parse_tableau(const std::string& text);
std::string format_tableau(const Tableau& t);

Tableau multiply(const Tableau& a, const Tableau& b);
Tableau transpose(const Tableau& a);
/// Inverse of a symplectic matrix via U^-1 = Omega U^T Omega.
Tableau inverse(const Tableau& a);
/// Inverse by Gauss-Jordan elimination; works for any invertible matrix and
/// throws InvalidArgument on singular input.
Tableau inverse_by_elimination(const Tableau& a);
int rank(const Tableau& a);

bool is_symplectic(const Tableau& t);

/// Symplectic inner product of two length-2n row vectors.
int symplectic_product(int n, Row u, Row v);

/// Matrix-vector product U x for a column vector x (bit c = component c).
Row apply_to_vector(const Tableau& u, Row x);

/// Per-qubit support: bit j of the result is x_j OR z_j.
inline Row support(int n, Row v) {
  const Row low = static_cast<Row>((1u << n) - 1);
  return static_cast<Row>((v | (v >> n)) & low);
}

/// Key whose integer order is the lexicographic order of the row read as a
/// string from column 1 (most significant) to column 2n.
Row row_order_key(int n, Row r);
/// The full lookup table behind row_order_key for a fixed n (2^(2n) entries).
const Row* row_order_table(int n);

UInt128 group_order(int n);

/*******************************************************************************
 * Local subgroup and qubit permutations.
 ******************************************************************************/

/// An element of the local subgroup C_n^0: one GL(2,F2) entry per qubit.
class LocalElement {
 public:
  LocalElement() = default;
  explicit LocalElement(int n) : n_(n) {}

  int num_qubits() const { return n_; }
  Gl2 operator[](int q) const { return parts_[q]; }
  Gl2& operator[](int q) { return parts_[q]; }

  LocalElement operator*(const LocalElement& rhs) const;
  LocalElement inverse() const;
  bool is_identity() const;
  Tableau tableau() const;
  /// Replay-ordered primitive gates.
  Circuit circuit() const;

  /// Mixed-radix index in [0, 6^n).
  std::uint32_t index() const;
  static LocalElement from_index(int n, std::uint32_t index);
  static std::uint32_t group_size(int n);

  bool operator==(const LocalElement& other) const;

 private:
  int n_ = 0;
  std::array<Gl2, kMaxQubits> parts_{};
};

/// True iff every off-diagonal 2x2 qubit block is zero.
bool is_local(const Tableau& t);
/// Extracts the per-qubit blocks of a local tableau; throws if not local.
LocalElement local_from_tableau(const Tableau& t);

/// Qubit relabeling W with W e^j = e^{w(j)} and W e^{n+j} = e^{n+w(j)}.
class QubitPermutation {
 public:
  QubitPermutation() = default;
  explicit QubitPermutation(int n);
  static QubitPermutation from_mapping(std::span<const int> mapping);

  int num_qubits() const { return n_; }
  int operator()(int j) const { return map_[j]; }
  std::span<const std::uint8_t> mapping() const { return {map_.data(), static_cast<std::size_t>(n_)}; }

  QubitPermutation inverse() const;
  bool is_identity() const;
  Tableau tableau() const;

  /// All n! permutations in lexicographic order of the mapping.
  static const std::vector<QubitPermutation>& all(int n);

  bool operator==(const QubitPermutation& other) const;

 private:
  int n_ = 0;
  std::array<std::uint8_t, kMaxQubits> map_{};
};

/// W^-1 U W, computed as entry (a, b) <- U(w(a), w(b)).
Tableau conjugate(const Tableau& u, const QubitPermutation& w);

/// Product of word_length gates drawn uniformly from {H(q), P(q), CNOT(c,t)}.
Tableau random_clifford(int n, int word_length, std::uint64_t seed);

}  // namespace cliffopt
