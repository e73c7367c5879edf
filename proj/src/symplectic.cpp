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

#include "cliffopt/symplectic.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace cliffopt {

std::string to_string(UInt128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Gl2

namespace {

constexpr std::array<std::uint8_t, 16> make_code_to_index() {
  std::array<std::uint8_t, 16> table{};
  for (auto& v : table) v = 0xFF;
  constexpr std::array<std::uint8_t, 6> codes = {0b1001, 0b0110, 0b1011, 0b1101, 0b0111, 0b1110};
  for (std::uint8_t i = 0; i < 6; ++i) table[codes[i]] = i;
  return table;
}

constexpr auto kCodeToIndex = make_code_to_index();

struct Gl2Tables {
  std::array<std::array<std::uint8_t, 6>, 6> product{};
  std::array<std::uint8_t, 6> inverse{};
};

const Gl2Tables& gl2_tables() {
  static const Gl2Tables tables = [] {
    Gl2Tables t;
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        const Gl2 x = Gl2::from_index(a);
        const Gl2 y = Gl2::from_index(b);
        int code = 0;
        for (int r = 0; r < 2; ++r) {
          for (int c = 0; c < 2; ++c) {
            const int v = (x.entry(r, 0) & y.entry(0, c)) ^ (x.entry(r, 1) & y.entry(1, c));
            code |= v << (2 * r + c);
          }
        }
        t.product[a][b] = kCodeToIndex[code];
      }
    }
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        if (t.product[a][b] == 0) t.inverse[a] = static_cast<std::uint8_t>(b);
      }
    }
    return t;
  }();
  return tables;
}

}  // namespace

Gl2 Gl2::from_entries(int b00, int b01, int b10, int b11) {
  const int code = (b00 & 1) | ((b01 & 1) << 1) | ((b10 & 1) << 2) | ((b11 & 1) << 3);
  const std::uint8_t index = kCodeToIndex[code];
  if (index == 0xFF) throw InvalidArgument("2x2 matrix is not invertible over F2");
  return Gl2(index);
}

Gl2 Gl2::operator*(Gl2 rhs) const { return Gl2(gl2_tables().product[index_][rhs.index_]); }

Gl2 Gl2::inverse() const { return Gl2(gl2_tables().inverse[index_]); }

const std::string& Gl2::word() const {
  static const std::array<std::string, kOrder> words = {"", "h", "p", "hph", "ph", "hp"};
  return words[index_];
}

// ---------------------------------------------------------------------------
// Gates and circuits

std::string to_string(const Gate& g) {
  switch (g.kind) {
    case GateKind::kH:
      return "h " + std::to_string(g.q0 + 1);
    case GateKind::kP:
      return "p " + std::to_string(g.q0 + 1);
    case GateKind::kCnot:
      return "cx " + std::to_string(g.q0 + 1) + " " + std::to_string(g.q1 + 1);
  }
  return {};
}

int Circuit::cnot_count() const {
  return static_cast<int>(std::count_if(gates.begin(), gates.end(),
                                        [](const Gate& g) { return g.kind == GateKind::kCnot; }));
}

Circuit Circuit::reversed() const {
  Circuit out{n, gates};
  std::reverse(out.gates.begin(), out.gates.end());
  return out;
}

void Circuit::append(const Circuit& other) {
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

void Circuit::validate() const {
  if (n < 1 || n > kMaxQubits) throw InvalidArgument("qubit count out of range");
  for (const Gate& g : gates) {
    if (g.q0 < 0 || g.q0 >= n) throw InvalidArgument("gate qubit index out of range: " + to_string(g));
    if (g.kind == GateKind::kCnot) {
      if (g.q1 < 0 || g.q1 >= n) throw InvalidArgument("gate qubit index out of range: " + to_string(g));
      if (g.q0 == g.q1) throw InvalidArgument("cnot control equals target: " + to_string(g));
    }
  }
}

Circuit parse_circuit(int n, const std::string& text) {
  Circuit c;
  c.n = n;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op) || op[0] == '#') continue;
    auto fail = [&] { throw InvalidArgument("malformed gate on line " + std::to_string(line_no) + ": " + line); };
    int a = 0;
    int b = 0;
    if (op == "h" || op == "p") {
      if (!(ls >> a)) fail();
      c.gates.push_back(op == "h" ? Gate::h(a - 1) : Gate::p(a - 1));
    } else if (op == "cx") {
      if (!(ls >> a >> b)) fail();
      c.gates.push_back(Gate::cnot(a - 1, b - 1));
    } else {
      fail();
    }
    std::string extra;
    if (ls >> extra) fail();
  }
  c.validate();
  return c;
}

std::string format_circuit(const Circuit& c) {
  std::string out;
  for (const Gate& g : c.gates) {
    out += to_string(g);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tableau

Tableau::Tableau(int n) : n_(n) {
  if (n < 1 || n > kMaxQubits) throw InvalidArgument("qubit count must be in 1..6");
}

Tableau Tableau::identity(int n) {
  Tableau t(n);
  for (int r = 0; r < 2 * n; ++r) t.rows_[r] = static_cast<Row>(1u << r);
  return t;
}

Tableau Tableau::omega(int n) {
  Tableau t(n);
  for (int j = 0; j < n; ++j) {
    t.rows_[j] = static_cast<Row>(1u << (n + j));
    t.rows_[n + j] = static_cast<Row>(1u << j);
  }
  return t;
}

Tableau Tableau::from_rows(int n, std::span<const Row> rows) {
  Tableau t(n);
  if (rows.size() != static_cast<std::size_t>(2 * n)) throw InvalidArgument("expected 2n rows");
  const Row mask = static_cast<Row>((1u << (2 * n)) - 1);
  for (int r = 0; r < 2 * n; ++r) {
    if (rows[r] & ~mask) throw InvalidArgument("row has bits beyond column 2n");
    t.rows_[r] = rows[r];
  }
  return t;
}

void Tableau::set_bit(int r, int c, int value) {
  rows_[r] = static_cast<Row>((rows_[r] & ~(1u << c)) | ((value & 1u) << c));
}

void Tableau::check_qubit(int q) const {
  if (q < 0 || q >= n_) throw InvalidArgument("qubit index out of range");
}

void Tableau::apply_h(int q) {
  check_qubit(q);
  const int s = n_;
  for (int r = 0; r < 2 * n_; ++r) {
    const Row v = rows_[r];
    const Row d = static_cast<Row>(((v >> q) ^ (v >> (q + s))) & 1u);
    rows_[r] = static_cast<Row>(v ^ (d << q) ^ (d << (q + s)));
  }
}

void Tableau::apply_p(int q) {
  check_qubit(q);
  for (int r = 0; r < 2 * n_; ++r) {
    const Row v = rows_[r];
    rows_[r] = static_cast<Row>(v ^ (((v >> q) & 1u) << (n_ + q)));
  }
}

void Tableau::apply_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw InvalidArgument("cnot control equals target");
  for (int r = 0; r < 2 * n_; ++r) {
    Row v = rows_[r];
    v = static_cast<Row>(v ^ (((v >> control) & 1u) << target));
    v = static_cast<Row>(v ^ (((v >> (n_ + target)) & 1u) << (n_ + control)));
    rows_[r] = v;
  }
}

void Tableau::apply(const Gate& g) {
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

void Tableau::apply(const Circuit& c) {
  if (c.n != n_) throw InvalidArgument("circuit and tableau qubit counts differ");
  for (const Gate& g : c.gates) apply(g);
}

void Tableau::apply_local_left(int q, Gl2 g) {
  check_qubit(q);
  const Row x = rows_[q];
  const Row z = rows_[n_ + q];
  rows_[q] = static_cast<Row>((g.entry(0, 0) ? x : 0) ^ (g.entry(0, 1) ? z : 0));
  rows_[n_ + q] = static_cast<Row>((g.entry(1, 0) ? x : 0) ^ (g.entry(1, 1) ? z : 0));
}

void Tableau::apply_local_right(int q, Gl2 g) {
  check_qubit(q);
  const int b00 = g.entry(0, 0), b01 = g.entry(0, 1), b10 = g.entry(1, 0), b11 = g.entry(1, 1);
  const Row clear = static_cast<Row>(~((1u << q) | (1u << (n_ + q))));
  for (int r = 0; r < 2 * n_; ++r) {
    const Row v = rows_[r];
    const unsigned cx = (v >> q) & 1u;
    const unsigned cz = (v >> (n_ + q)) & 1u;
    const unsigned nx = (b00 & cx) ^ (b10 & cz);
    const unsigned nz = (b01 & cx) ^ (b11 & cz);
    rows_[r] = static_cast<Row>((v & clear) | (nx << q) | (nz << (n_ + q)));
  }
}

bool Tableau::operator==(const Tableau& other) const {
  return n_ == other.n_ && std::equal(rows_.begin(), rows_.begin() + 2 * n_, other.rows_.begin());
}

bool Tableau::operator<(const Tableau& other) const {
  if (n_ != other.n_) return n_ < other.n_;
  return std::lexicographical_compare(rows_.begin(), rows_.begin() + 2 * n_, other.rows_.begin(),
                                      other.rows_.begin() + 2 * n_);
}

std::ostream& operator<<(std::ostream& os, const Tableau& t) { return os << format_tableau(t); }

Tableau parse_tableau(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string compact;
    for (char ch : line) {
      if (ch == '0' || ch == '1') {
        compact.push_back(ch);
      } else if (ch != ' ' && ch != '\t' && ch != '\r') {
        throw InvalidArgument("tableau text may only contain '0' and '1'");
      }
    }
    if (!compact.empty()) lines.push_back(compact);
  }
  const std::size_t dim = lines.size();
  if (dim < 2 || dim % 2 != 0 || dim > 2 * kMaxQubits) throw InvalidArgument("tableau must have 2n rows, n in 1..6");
  const int n = static_cast<int>(dim / 2);
  Tableau t(n);
  for (std::size_t r = 0; r < dim; ++r) {
    if (lines[r].size() != dim) throw InvalidArgument("tableau must be square");
    for (std::size_t c = 0; c < dim; ++c) t.set_bit(static_cast<int>(r), static_cast<int>(c), lines[r][c] - '0');
  }
  return t;
}

std::string format_tableau(const Tableau& t) {
  std::string out;
  for (int r = 0; r < t.dim(); ++r) {
    for (int c = 0; c < t.dim(); ++c) out.push_back(static_cast<char>('0' + t.bit(r, c)));
    out.push_back('\n');
  }
  return out;
}

Tableau multiply(const Tableau& a, const Tableau& b) {
  if (a.num_qubits() != b.num_qubits()) throw InvalidArgument("multiply: qubit counts differ");
  const int dim = a.dim();
  Tableau out(a.num_qubits());
  for (int r = 0; r < dim; ++r) {
    Row acc = 0;
    Row bits = a.row(r);
    while (bits) {
      const int c = std::countr_zero(static_cast<unsigned>(bits));
      acc ^= b.row(c);
      bits = static_cast<Row>(bits & (bits - 1));
    }
    out.set_row(r, acc);
  }
  return out;
}

Tableau transpose(const Tableau& a) {
  const int dim = a.dim();
  Tableau out(a.num_qubits());
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      if (a.bit(r, c)) out.set_bit(c, r, 1);
    }
  }
  return out;
}

Tableau inverse(const Tableau& a) {
  const Tableau omega = Tableau::omega(a.num_qubits());
  return multiply(multiply(omega, transpose(a)), omega);
}

Tableau inverse_by_elimination(const Tableau& a) {
  const int dim = a.dim();
  Tableau work = a;
  Tableau inv = Tableau::identity(a.num_qubits());
  for (int c = 0; c < dim; ++c) {
    int pivot = -1;
    for (int r = c; r < dim; ++r) {
      if (work.bit(r, c)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw InvalidArgument("matrix is singular");
    if (pivot != c) {
      const Row wr = work.row(pivot), ir = inv.row(pivot);
      work.set_row(pivot, work.row(c));
      inv.set_row(pivot, inv.row(c));
      work.set_row(c, wr);
      inv.set_row(c, ir);
    }
    for (int r = 0; r < dim; ++r) {
      if (r != c && work.bit(r, c)) {
        work.set_row(r, work.row(r) ^ work.row(c));
        inv.set_row(r, inv.row(r) ^ inv.row(c));
      }
    }
  }
  return inv;
}

int rank(const Tableau& a) {
  std::array<Row, 2 * kMaxQubits> rows{};
  const int dim = a.dim();
  for (int r = 0; r < dim; ++r) rows[r] = a.row(r);
  int rk = 0;
  for (int c = 0; c < dim && rk < dim; ++c) {
    int pivot = -1;
    for (int r = rk; r < dim; ++r) {
      if ((rows[r] >> c) & 1) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[pivot], rows[rk]);
    for (int r = 0; r < dim; ++r) {
      if (r != rk && ((rows[r] >> c) & 1)) rows[r] ^= rows[rk];
    }
    ++rk;
  }
  return rk;
}

int symplectic_product(int n, Row u, Row v) {
  const unsigned low = (1u << n) - 1;
  const unsigned s = ((u & low) & (v >> n)) ^ ((u >> n) & (v & low));
  return std::popcount(s) & 1;
}

bool is_symplectic(const Tableau& t) {
  // M^T Omega M = Omega  <=>  M Omega M^T = Omega for invertible M, i.e. the
  // rows form a symplectic basis: <r_i, r_{n+j}> = delta_ij, all other pairs 0.
  const int n = t.num_qubits();
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = i; j < 2 * n; ++j) {
      const int expected = (j == i + n) ? 1 : 0;
      if (symplectic_product(n, t.row(i), t.row(j)) != expected) return false;
    }
  }
  return true;
}

Row apply_to_vector(const Tableau& u, Row x) {
  Row y = 0;
  for (int r = 0; r < u.dim(); ++r) y |= static_cast<Row>((std::popcount(static_cast<unsigned>(u.row(r) & x)) & 1) << r);
  return y;
}

const Row* row_order_table(int n) {
  static const auto tables = [] {
    std::array<std::vector<Row>, kMaxQubits + 1> out;
    for (int m = 1; m <= kMaxQubits; ++m) {
      const int width = 2 * m;
      out[m].resize(std::size_t{1} << width);
      for (unsigned r = 0; r < (1u << width); ++r) {
        unsigned rev = 0;
        for (int b = 0; b < width; ++b) rev |= ((r >> b) & 1u) << (width - 1 - b);
        out[m][r] = static_cast<Row>(rev);
      }
    }
    return out;
  }();
  return tables[n].data();
}

Row row_order_key(int n, Row r) { return row_order_table(n)[r]; }

UInt128 group_order(int n) {
  if (n < 1 || n > kMaxQubits) throw InvalidArgument("group_order: n must be in 1..6");
  UInt128 order = UInt128{1} << (n * n);
  for (int j = 1; j <= n; ++j) order *= (UInt128{1} << (2 * j)) - 1;
  return order;
}

// ---------------------------------------------------------------------------
// LocalElement

LocalElement LocalElement::operator*(const LocalElement& rhs) const {
  LocalElement out(n_);
  for (int q = 0; q < n_; ++q) out.parts_[q] = parts_[q] * rhs.parts_[q];
  return out;
}

LocalElement LocalElement::inverse() const {
  LocalElement out(n_);
  for (int q = 0; q < n_; ++q) out.parts_[q] = parts_[q].inverse();
  return out;
}

bool LocalElement::is_identity() const {
  for (int q = 0; q < n_; ++q) {
    if (parts_[q] != Gl2::identity()) return false;
  }
  return true;
}

Tableau LocalElement::tableau() const {
  Tableau t = Tableau::identity(n_);
  for (int q = 0; q < n_; ++q) t.apply_local_left(q, parts_[q]);
  return t;
}

Circuit LocalElement::circuit() const {
  Circuit c;
  c.n = n_;
  for (int q = 0; q < n_; ++q) {
    for (char ch : parts_[q].word()) c.gates.push_back(ch == 'h' ? Gate::h(q) : Gate::p(q));
  }
  return c;
}

std::uint32_t LocalElement::index() const {
  std::uint32_t idx = 0;
  for (int q = n_ - 1; q >= 0; --q) idx = idx * 6 + static_cast<std::uint32_t>(parts_[q].index());
  return idx;
}

LocalElement LocalElement::from_index(int n, std::uint32_t index) {
  LocalElement out(n);
  for (int q = 0; q < n; ++q) {
    out.parts_[q] = Gl2::from_index(static_cast<int>(index % 6));
    index /= 6;
  }
  return out;
}

std::uint32_t LocalElement::group_size(int n) {
  std::uint32_t size = 1;
  for (int q = 0; q < n; ++q) size *= 6;
  return size;
}

bool LocalElement::operator==(const LocalElement& other) const {
  if (n_ != other.n_) return false;
  for (int q = 0; q < n_; ++q) {
    if (parts_[q] != other.parts_[q]) return false;
  }
  return true;
}

bool is_local(const Tableau& t) {
  const int n = t.num_qubits();
  for (int q = 0; q < n; ++q) {
    const Row allowed = static_cast<Row>((1u << q) | (1u << (n + q)));
    if ((t.row(q) & ~allowed) || (t.row(n + q) & ~allowed)) return false;
  }
  return true;
}

LocalElement local_from_tableau(const Tableau& t) {
  if (!is_local(t)) throw InvalidArgument("tableau is not a local element");
  const int n = t.num_qubits();
  LocalElement out(n);
  for (int q = 0; q < n; ++q) {
    out[q] = Gl2::from_entries(t.bit(q, q), t.bit(q, n + q), t.bit(n + q, q), t.bit(n + q, n + q));
  }
  return out;
}

// ---------------------------------------------------------------------------
// QubitPermutation

QubitPermutation::QubitPermutation(int n) : n_(n) {
  if (n < 1 || n > kMaxQubits) throw InvalidArgument("qubit count must be in 1..6");
  for (int j = 0; j < n; ++j) map_[j] = static_cast<std::uint8_t>(j);
}

QubitPermutation QubitPermutation::from_mapping(std::span<const int> mapping) {
  QubitPermutation w(static_cast<int>(mapping.size()));
  std::array<bool, kMaxQubits> seen{};
  for (std::size_t j = 0; j < mapping.size(); ++j) {
    const int v = mapping[j];
    if (v < 0 || v >= w.n_ || seen[v]) throw InvalidArgument("mapping is not a permutation");
    seen[v] = true;
    w.map_[j] = static_cast<std::uint8_t>(v);
  }
  return w;
}

QubitPermutation QubitPermutation::inverse() const {
  QubitPermutation out(n_);
  for (int j = 0; j < n_; ++j) out.map_[map_[j]] = static_cast<std::uint8_t>(j);
  return out;
}

bool QubitPermutation::is_identity() const {
  for (int j = 0; j < n_; ++j) {
    if (map_[j] != j) return false;
  }
  return true;
}

Tableau QubitPermutation::tableau() const {
  Tableau t(n_);
  for (int j = 0; j < n_; ++j) {
    t.set_bit(map_[j], j, 1);
    t.set_bit(n_ + map_[j], n_ + j, 1);
  }
  return t;
}

const std::vector<QubitPermutation>& QubitPermutation::all(int n) {
  static const std::array<std::vector<QubitPermutation>, kMaxQubits + 1> tables = [] {
    std::array<std::vector<QubitPermutation>, kMaxQubits + 1> out;
    for (int m = 1; m <= kMaxQubits; ++m) {
      std::vector<int> p(m);
      std::iota(p.begin(), p.end(), 0);
      do {
        out[m].push_back(from_mapping(p));
      } while (std::next_permutation(p.begin(), p.end()));
    }
    return out;
  }();
  if (n < 1 || n > kMaxQubits) throw InvalidArgument("qubit count must be in 1..6");
  return tables[n];
}

bool QubitPermutation::operator==(const QubitPermutation& other) const {
  return n_ == other.n_ && std::equal(map_.begin(), map_.begin() + n_, other.map_.begin());
}

Tableau conjugate(const Tableau& u, const QubitPermutation& w) {
  const int n = u.num_qubits();
  Tableau out(n);
  std::array<int, 2 * kMaxQubits> src{};
  for (int a = 0; a < n; ++a) {
    src[a] = w(a);
    src[n + a] = n + w(a);
  }
  for (int a = 0; a < 2 * n; ++a) {
    const Row in = u.row(src[a]);
    Row row = 0;
    for (int b = 0; b < 2 * n; ++b) row |= static_cast<Row>(((in >> src[b]) & 1u) << b);
    out.set_row(a, row);
  }
  return out;
}

Tableau random_clifford(int n, int word_length, std::uint64_t seed) {
  Tableau t = Tableau::identity(n);
  if (word_length <= 0) return t;
  std::vector<Gate> pool;
  for (int q = 0; q < n; ++q) {
    pool.push_back(Gate::h(q));
    pool.push_back(Gate::p(q));
  }
  for (int c = 0; c < n; ++c) {
    for (int tq = 0; tq < n; ++tq) {
      if (c != tq) pool.push_back(Gate::cnot(c, tq));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int i = 0; i < word_length; ++i) t.apply(pool[pick(rng)]);
  return t;
}

}  // namespace cliffopt
