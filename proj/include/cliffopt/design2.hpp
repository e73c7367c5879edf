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

// Minimum-average-cost Clifford 2-designs.
//
// A distribution eta over reduced classes induces the distribution
// L W^-1 U W R (U ~ eta; W, L, R uniform). It is a 2-design iff it is Pauli
// mixing: Pr[U x = y] = 1 / (4^n - 1) for every pair of nonzero vectors.
// Because local elements act transitively on the nonzero values of each
// qubit pair, the mixing probability only depends on the supports of x and
// y, so one row per pair of nonempty supports suffices.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cliffopt/database.hpp"
#include "cliffopt/symplectic.hpp"
#include "cliffopt/thin_matrix.hpp"

namespace cliffopt {

using Rational = boost::multiprecision::cpp_rational;

/// The vector 0^n z: Z component z on the qubits of z, no X component.
Row restricted_vector(int n, std::uint32_t z);

/// Probability that a uniform element of the class of u maps x to y.
/// Throws InvalidArgument when x or y is zero.
Rational g_coeff(const Tableau& u, Row x, Row y);

/// g for every restricted pair, row-major over (zx, zy) in [1, 2^n)^2.
std::vector<Rational> g_table(const Tableau& u);

/// Equality-form LP: minimize costs . eta subject to a eta = b, eta >= 0.
/// Row 0 is normalization; row 1 + (zx - 1)(2^n - 1) + (zy - 1) is the
/// mixing constraint for (0^n zx, 0^n zy).
struct DesignLP {
  int n = 0;
  std::vector<ThinMatrix> classes;
  std::vector<Tableau> elements;
  std::vector<int> costs;
  std::vector<UInt128> class_sizes;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;

  std::size_t num_rows() const { return a.size(); }
  std::size_t num_variables() const { return classes.size(); }
};

/// One variable per class of db. Assembly runs on `threads` workers.
DesignLP build_lp(const Database& db, int threads = 1);

enum class LpMode {
  kExact,  // rational pivoting
  kFloat,  // double with 1e-9 tolerances
};

struct DesignEntry {
  std::size_t variable = 0;
  Tableau element;
  int cost = 0;
  Rational probability;  // exact mode only; zero otherwise
  double value = 0;
  Circuit circuit;  // filled by attach_circuits
};

struct DesignDistribution {
  int n = 0;
  bool exact = false;
  std::vector<DesignEntry> entries;  // nonzero probabilities only
  Rational average_cost_exact;       // exact mode only
  double average_cost = 0;
  std::size_t pivots = 0;
  std::size_t dropped_rows = 0;  // linearly dependent constraints removed
  std::vector<std::size_t> basis;  // final basic variables (LP solutions only)
};

/// Optimal basic solution by two-phase dense simplex with Bland's rule.
/// Throws InvalidArgument on an infeasible or unbounded program.
DesignDistribution solve_lp(const DesignLP& lp, LpMode mode);

/// Exact re-check of a simplex basis: the basic solution is recomputed in
/// rationals (primal) and the reduced costs of all variables are evaluated
/// against the exact basic duals. Both flags set means the exact objective
/// is the LP optimum.
struct LpCertificate {
  bool primal_feasible = false;
  bool dual_feasible = false;
  Rational objective;
  DesignDistribution distribution;  // the exact basic solution
};

LpCertificate certify_basis(const DesignLP& lp, const std::vector<std::size_t>& basis);

/// The distribution with eta proportional to weights (need not be optimal).
DesignDistribution weighted_distribution(const DesignLP& lp, const std::vector<Rational>& weights);

/// Synthesizes an optimal circuit for every entry.
void attach_circuits(DesignDistribution& dist, const Database& db);

struct MixingReport {
  double max_residual = 0;  // over all restricted rows
  bool exactly_zero = false;  // exact mode: every row holds with equality
  double max_unrestricted_residual = 0;
  std::size_t unrestricted_checked = 0;
};

/// Recomputes g for the support of dist and measures the deviation from
/// 1 / (4^n - 1), on all restricted rows and on `samples` random general
/// nonzero pairs.
MixingReport verify_pauli_mixing(const DesignDistribution& dist, std::size_t samples = 64, std::uint64_t seed = 1);

/// Draws L W^-1 U_j W R with j ~ eta and W, L, R uniform.
class DesignSampler {
 public:
  DesignSampler(const DesignDistribution& dist, std::uint64_t seed);
  Tableau next();
  /// Index into dist.entries of the last draw.
  std::size_t last_entry() const { return last_; }

 private:
  struct State;
  std::shared_ptr<State> state_;
  std::size_t last_ = 0;
};

std::vector<Tableau> sample_design(const DesignDistribution& dist, std::size_t count, std::uint64_t seed);

/// JSON document with n, average cost, residual and the entries.
std::string design_to_json(const DesignDistribution& dist, const MixingReport& report);

}  // namespace cliffopt
