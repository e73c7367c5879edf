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

#include "cliffopt/design2.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <json.hpp>
#include <optional>
#include <random>
#include <thread>

#include "cliffopt/reduce.hpp"
#include "cliffopt/synth.hpp"

namespace cliffopt {

namespace {

std::int64_t pow3(int e) {
  std::int64_t p = 1;
  while (e-- > 0) p *= 3;
  return p;
}

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// counts[a * 2^n + b] = sum over W of #{x' : chi(x') = a, chi(W^-1 U W x') = b}.
std::vector<std::int64_t> support_counts(const Tableau& u) {
  const int n = u.num_qubits();
  const std::uint32_t subsets = 1u << n;
  std::vector<std::int64_t> counts(std::size_t{subsets} * subsets, 0);
  for (const QubitPermutation& w : QubitPermutation::all(n)) {
    const Tableau uw = conjugate(u, w);
    for (std::uint32_t x = 1; x < (1u << (2 * n)); ++x) {
      const Row y = apply_to_vector(uw, static_cast<Row>(x));
      ++counts[std::size_t{support(n, static_cast<Row>(x))} * subsets + support(n, y)];
    }
  }
  return counts;
}

Rational support_g(int n, const std::vector<std::int64_t>& counts, std::uint32_t a, std::uint32_t b) {
  const std::int64_t den = factorial(n) * pow3(std::popcount(a) + std::popcount(b));
  return Rational(counts[std::size_t{a} * (1u << n) + b], den);
}

void check_lp_shape(const DesignLP& lp) {
  if (lp.a.size() != lp.b.size()) throw InvalidArgument("LP row count mismatch");
  for (const auto& row : lp.a)
    if (row.size() != lp.num_variables()) throw InvalidArgument("LP column count mismatch");
}

// ---- dense two-phase simplex ----------------------------------------------

template <class T>
struct Arith;

template <>
struct Arith<Rational> {
  static bool positive(const Rational& v) { return v > 0; }
  static bool negative(const Rational& v) { return v < 0; }
  static bool zero(const Rational& v) { return v == 0; }
  static bool less(const Rational& a, const Rational& b) { return a < b; }
  static bool equal(const Rational& a, const Rational& b) { return a == b; }
  static void clean(Rational&) {}
  static Rational from(const Rational& v) { return v; }
};

template <>
struct Arith<double> {
  static constexpr double kTol = 1e-9;
  static bool positive(double v) { return v > kTol; }
  static bool negative(double v) { return v < -kTol; }
  static bool zero(double v) { return std::fabs(v) <= kTol; }
  static bool less(double a, double b) { return a < b - kTol; }
  static bool equal(double a, double b) { return std::fabs(a - b) <= kTol; }
  static void clean(double& v) {
    if (std::fabs(v) < 1e-13) v = 0;
  }
  static double from(const Rational& v) { return static_cast<double>(v); }
};

template <class T>
struct SimplexResult {
  std::vector<T> x;
  std::vector<std::size_t> basis;
  std::size_t pivots = 0;
  std::size_t dropped_rows = 0;
};

template <class T>
class Simplex {
 public:
  using A = Arith<T>;

  Simplex(const DesignLP& lp) : m_(lp.num_rows()), nvar_(lp.num_variables()) {
    width_ = nvar_ + m_ + 1;
    t_.assign(m_, std::vector<T>(width_, T(0)));
    for (std::size_t i = 0; i < m_; ++i) {
      // Every right-hand side is nonnegative, so artificials start feasible.
      for (std::size_t j = 0; j < nvar_; ++j) t_[i][j] = A::from(lp.a[i][j]);
      t_[i][nvar_ + i] = T(1);
      t_[i][width_ - 1] = A::from(lp.b[i]);
      if (A::negative(t_[i][width_ - 1])) throw InvalidArgument("LP right-hand side must be nonnegative");
    }
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = nvar_ + i;
    cost_.reserve(nvar_);
    for (int c : lp.costs) cost_.push_back(T(c));
  }

  SimplexResult<T> solve() {
    // Phase 1: minimize the sum of artificials.
    z_.assign(width_, T(0));
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < nvar_; ++j) z_[j] -= t_[i][j];
    for (std::size_t i = 0; i < m_; ++i) z_[width_ - 1] -= t_[i][width_ - 1];
    run(nvar_ + m_);
    if (A::negative(z_[width_ - 1])) throw InvalidArgument("2-design LP is infeasible");

    // Drive zero-level artificials out of the basis; rows where no original
    // column can replace them are linear combinations of the others.
    for (std::size_t i = 0; i < t_.size();) {
      if (basis_[i] < nvar_) {
        ++i;
        continue;
      }
      std::size_t col = nvar_;
      for (std::size_t j = 0; j < nvar_; ++j) {
        if (!A::zero(t_[i][j])) {
          col = j;
          break;
        }
      }
      if (col == nvar_) {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        ++dropped_;
        continue;
      }
      pivot(i, col);
      ++i;
    }

    // Phase 2 over the original columns.
    z_.assign(width_, T(0));
    for (std::size_t j = 0; j < nvar_; ++j) z_[j] = cost_[j];
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const T cb = cost_[basis_[i]];
      if (A::zero(cb)) continue;
      for (std::size_t j = 0; j < width_; ++j) z_[j] -= cb * t_[i][j];
    }
    run(nvar_);

    SimplexResult<T> out;
    out.x.assign(nvar_, T(0));
    for (std::size_t i = 0; i < t_.size(); ++i) out.x[basis_[i]] = t_[i][width_ - 1];
    out.basis = basis_;
    std::sort(out.basis.begin(), out.basis.end());
    out.pivots = pivots_;
    out.dropped_rows = dropped_;
    return out;
  }

 private:
  // Bland's rule: lowest-index improving column, then the lowest basic
  // variable among tied minimum ratios.
  void run(std::size_t allowed) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (A::negative(z_[j])) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return;
      std::size_t leave = t_.size();
      T best{};
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (!A::positive(t_[i][enter])) continue;
        const T ratio = t_[i][width_ - 1] / t_[i][enter];
        if (leave == t_.size() || A::less(ratio, best) || (A::equal(ratio, best) && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == t_.size()) throw InvalidArgument("2-design LP is unbounded");
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t col) {
    ++pivots_;
    std::vector<T>& pr = t_[r];
    const T inv = T(1) / pr[col];
    for (T& v : pr) {
      if (v != T(0)) v *= inv;
    }
    pr[col] = T(1);
    auto eliminate = [&](std::vector<T>& row) {
      const T f = row[col];
      if (f == T(0)) return;
      for (std::size_t j = 0; j < width_; ++j) {
        if (pr[j] == T(0)) continue;
        row[j] -= f * pr[j];
        A::clean(row[j]);
      }
      row[col] = T(0);
    };
    for (std::size_t i = 0; i < t_.size(); ++i)
      if (i != r) eliminate(t_[i]);
    eliminate(z_);
    basis_[r] = col;
  }

  std::size_t m_;
  std::size_t nvar_;
  std::size_t width_ = 0;
  std::vector<std::vector<T>> t_;
  std::vector<T> z_;
  std::vector<T> cost_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
  std::size_t dropped_ = 0;
};

// Solves m z = rhs by Gauss-Jordan elimination, free variables set to zero.
// Returns nullopt when the system is inconsistent; *rank receives the rank.
std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs,
                                                  std::size_t* rank) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    std::swap(rhs[p], rhs[r]);
    const Rational inv = 1 / m[r][c];
    for (Rational& v : m[r])
      if (v != 0) v *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (rank != nullptr) *rank = r;
  for (std::size_t i = r; i < rows; ++i)
    if (rhs[i] != 0) return std::nullopt;
  std::vector<Rational> z(cols);
  for (std::size_t i = 0; i < r; ++i) z[pivot_col[i]] = rhs[i];
  return z;
}

DesignEntry make_entry(const DesignLP& lp, std::size_t j) {
  DesignEntry e;
  e.variable = j;
  e.element = lp.elements[j];
  e.cost = lp.costs[j];
  return e;
}

}  // namespace

Row restricted_vector(int n, std::uint32_t z) {
  if (n < 1 || n > kMaxQubits || z >= (1u << n)) throw InvalidArgument("restricted vector out of range");
  return static_cast<Row>(z << n);
}

Rational g_coeff(const Tableau& u, Row x, Row y) {
  const int n = u.num_qubits();
  const Row limit = static_cast<Row>((1u << (2 * n)) - 1);
  if (x == 0 || y == 0) throw InvalidArgument("g is defined for nonzero vectors only");
  if ((x & ~limit) != 0 || (y & ~limit) != 0) throw InvalidArgument("vector wider than 2n bits");
  return support_g(n, support_counts(u), support(n, x), support(n, y));
}

std::vector<Rational> g_table(const Tableau& u) {
  const int n = u.num_qubits();
  const auto counts = support_counts(u);
  const std::uint32_t s = 1u << n;
  std::vector<Rational> out;
  out.reserve(std::size_t{s - 1} * (s - 1));
  for (std::uint32_t a = 1; a < s; ++a)
    for (std::uint32_t b = 1; b < s; ++b) out.push_back(support_g(n, counts, a, b));
  return out;
}

DesignLP build_lp(const Database& db, int threads) {
  const int n = db.num_qubits();
  DesignLP lp;
  lp.n = n;
  for (int k = 0; k <= db.k_max(); ++k) {
    for (const Record& r : db.shard(k).load_all()) {
      lp.classes.push_back(r.thin(n));
      lp.costs.push_back(k);
    }
  }
  const std::size_t vars = lp.classes.size();
  const std::size_t side = (std::size_t{1} << n) - 1;
  const std::size_t rows = 1 + side * side;
  lp.elements.resize(vars);
  lp.class_sizes.resize(vars);
  lp.a.assign(rows, std::vector<Rational>(vars));
  lp.b.assign(rows, Rational(1, static_cast<std::int64_t>((1u << (2 * n)) - 1)));
  lp.b[0] = 1;

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      lp.elements[j] = expand_thin(lp.classes[j]);
      lp.class_sizes[j] = class_stats(lp.elements[j]).class_size;
      const auto g = g_table(lp.elements[j]);
      lp.a[0][j] = 1;
      for (std::size_t i = 0; i < g.size(); ++i) lp.a[1 + i][j] = g[i];
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(vars, 1));
  std::vector<std::thread> pool;
  const std::size_t chunk = (vars + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t begin = std::min(vars, w * chunk), end = std::min(vars, begin + chunk);
    pool.emplace_back(work, begin, end);
  }
  work(0, std::min(vars, chunk));
  for (auto& t : pool) t.join();
  return lp;
}

DesignDistribution solve_lp(const DesignLP& lp, LpMode mode) {
  check_lp_shape(lp);
  DesignDistribution d;
  d.n = lp.n;
  d.exact = mode == LpMode::kExact;
  if (d.exact) {
    const auto r = Simplex<Rational>(lp).solve();
    d.basis = r.basis;
    d.pivots = r.pivots;
    d.dropped_rows = r.dropped_rows;
    for (std::size_t j = 0; j < r.x.size(); ++j) {
      if (r.x[j] == 0) continue;
      DesignEntry e = make_entry(lp, j);
      e.probability = r.x[j];
      e.value = static_cast<double>(r.x[j]);
      d.average_cost_exact += r.x[j] * e.cost;
      d.entries.push_back(std::move(e));
    }
    d.average_cost = static_cast<double>(d.average_cost_exact);
  } else {
    const auto r = Simplex<double>(lp).solve();
    d.basis = r.basis;
    d.pivots = r.pivots;
    d.dropped_rows = r.dropped_rows;
    for (std::size_t j = 0; j < r.x.size(); ++j) {
      if (r.x[j] <= Arith<double>::kTol) continue;
      DesignEntry e = make_entry(lp, j);
      e.value = r.x[j];
      d.average_cost += r.x[j] * e.cost;
      d.entries.push_back(std::move(e));
    }
  }
  return d;
}

LpCertificate certify_basis(const DesignLP& lp, const std::vector<std::size_t>& basis) {
  check_lp_shape(lp);
  for (std::size_t j : basis)
    if (j >= lp.num_variables()) throw InvalidArgument("basis index out of range");
  const std::size_t m = lp.num_rows(), r = basis.size();
  LpCertificate cert;

  std::vector<std::vector<Rational>> ab(m, std::vector<Rational>(r));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < r; ++k) ab[i][k] = lp.a[i][basis[k]];
  std::size_t rank = 0;
  const auto x = solve_linear(ab, lp.b, &rank);
  if (!x || rank != r) return cert;

  std::vector<Rational> weights(lp.num_variables(), 0);
  cert.primal_feasible = true;
  for (std::size_t k = 0; k < r; ++k) {
    if ((*x)[k] < 0) cert.primal_feasible = false;
    weights[basis[k]] = (*x)[k];
    cert.objective += (*x)[k] * lp.costs[basis[k]];
  }
  if (cert.primal_feasible) {
    cert.distribution = weighted_distribution(lp, weights);
    cert.distribution.basis = basis;
  }

  // Duals from A_B^T y = c_B, then every reduced cost must be nonnegative.
  std::vector<std::vector<Rational>> abt(r, std::vector<Rational>(m));
  std::vector<Rational> cb(r);
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t i = 0; i < m; ++i) abt[k][i] = ab[i][k];
    cb[k] = lp.costs[basis[k]];
  }
  const auto y = solve_linear(std::move(abt), std::move(cb), nullptr);
  if (!y) return cert;
  cert.dual_feasible = true;
  for (std::size_t j = 0; j < lp.num_variables() && cert.dual_feasible; ++j) {
    Rational reduced = lp.costs[j];
    for (std::size_t i = 0; i < m; ++i)
      if ((*y)[i] != 0 && lp.a[i][j] != 0) reduced -= (*y)[i] * lp.a[i][j];
    if (reduced < 0) cert.dual_feasible = false;
  }
  return cert;
}

DesignDistribution weighted_distribution(const DesignLP& lp, const std::vector<Rational>& weights) {
  if (weights.size() != lp.num_variables()) throw InvalidArgument("one weight per class required");
  Rational total = 0;
  for (const Rational& w : weights) {
    if (w < 0) throw InvalidArgument("weights must be nonnegative");
    total += w;
  }
  if (total == 0) throw InvalidArgument("weights sum to zero");
  DesignDistribution d;
  d.n = lp.n;
  d.exact = true;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] == 0) continue;
    DesignEntry e = make_entry(lp, j);
    e.probability = weights[j] / total;
    e.value = static_cast<double>(e.probability);
    d.average_cost_exact += e.probability * e.cost;
    d.entries.push_back(std::move(e));
  }
  d.average_cost = static_cast<double>(d.average_cost_exact);
  return d;
}

void attach_circuits(DesignDistribution& dist, const Database& db) {
  for (DesignEntry& e : dist.entries) e.circuit = synthesize(e.element, db);
}

MixingReport verify_pauli_mixing(const DesignDistribution& dist, std::size_t samples, std::uint64_t seed) {
  const int n = dist.n;
  const std::uint32_t s = 1u << n;
  const std::int64_t nonzero = (std::int64_t{1} << (2 * n)) - 1;
  std::vector<std::vector<std::int64_t>> counts;
  counts.reserve(dist.entries.size());
  for (const DesignEntry& e : dist.entries) counts.push_back(support_counts(e.element));

  MixingReport report;
  report.exactly_zero = dist.exact;
  const Rational target(1, nonzero);
  auto residual = [&](std::uint32_t a, std::uint32_t b) {
    if (dist.exact) {
      Rational sum = 0;
      for (std::size_t i = 0; i < dist.entries.size(); ++i)
        sum += dist.entries[i].probability * support_g(n, counts[i], a, b);
      if (sum != target) report.exactly_zero = false;
      return std::fabs(static_cast<double>(sum - target));
    }
    double sum = 0;
    for (std::size_t i = 0; i < dist.entries.size(); ++i)
      sum += dist.entries[i].value * static_cast<double>(support_g(n, counts[i], a, b));
    return std::fabs(sum - 1.0 / static_cast<double>(nonzero));
  };
  for (std::uint32_t a = 1; a < s; ++a)
    for (std::uint32_t b = 1; b < s; ++b) report.max_residual = std::max(report.max_residual, residual(a, b));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(1, static_cast<std::uint32_t>(nonzero));
  for (std::size_t i = 0; i < samples; ++i) {
    const Row x = static_cast<Row>(pick(rng)), y = static_cast<Row>(pick(rng));
    report.max_unrestricted_residual =
        std::max(report.max_unrestricted_residual, residual(support(n, x), support(n, y)));
    ++report.unrestricted_checked;
  }
  return report;
}

struct DesignSampler::State {
  const DesignDistribution* dist = nullptr;
  std::mt19937_64 rng;
  std::discrete_distribution<std::size_t> entry;
  std::uniform_int_distribution<std::uint32_t> local;
  std::uniform_int_distribution<std::size_t> perm;
};

DesignSampler::DesignSampler(const DesignDistribution& dist, std::uint64_t seed) : state_(std::make_shared<State>()) {
  if (dist.entries.empty()) throw InvalidArgument("empty design");
  std::vector<double> weights;
  for (const DesignEntry& e : dist.entries) weights.push_back(e.value);
  state_->dist = &dist;
  state_->rng.seed(seed);
  state_->entry = std::discrete_distribution<std::size_t>(weights.begin(), weights.end());
  state_->local = std::uniform_int_distribution<std::uint32_t>(0, LocalElement::group_size(dist.n) - 1);
  state_->perm = std::uniform_int_distribution<std::size_t>(0, QubitPermutation::all(dist.n).size() - 1);
}

Tableau DesignSampler::next() {
  State& s = *state_;
  const int n = s.dist->n;
  last_ = s.entry(s.rng);
  const QubitPermutation& w = QubitPermutation::all(n)[s.perm(s.rng)];
  const LocalElement l = LocalElement::from_index(n, s.local(s.rng));
  const LocalElement r = LocalElement::from_index(n, s.local(s.rng));
  return multiply(multiply(l.tableau(), conjugate(s.dist->entries[last_].element, w)), r.tableau());
}

std::vector<Tableau> sample_design(const DesignDistribution& dist, std::size_t count, std::uint64_t seed) {
  DesignSampler sampler(dist, seed);
  std::vector<Tableau> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.next());
  return out;
}

std::string design_to_json(const DesignDistribution& dist, const MixingReport& report) {
  nlohmann::ordered_json doc;
  doc["qubits"] = dist.n;
  doc["mode"] = dist.exact ? "exact" : "float";
  if (dist.exact) doc["average_cost_exact"] = dist.average_cost_exact.str();
  doc["average_cost"] = dist.average_cost;
  doc["max_mixing_residual"] = report.max_residual;
  doc["pivots"] = dist.pivots;
  auto& entries = doc["entries"] = nlohmann::ordered_json::array();
  for (const DesignEntry& e : dist.entries) {
    nlohmann::ordered_json j;
    j["cost"] = e.cost;
    if (dist.exact) j["probability_exact"] = e.probability.str();
    j["probability"] = e.value;
    j["tableau"] = format_tableau(e.element);
    if (!e.circuit.gates.empty() || e.cost == 0) j["circuit"] = format_circuit(e.circuit);
    entries.push_back(std::move(j));
  }
  return doc.dump(2);
}

}  // namespace cliffopt
