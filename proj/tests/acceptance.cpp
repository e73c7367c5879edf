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

// End-to-end acceptance report: one PASS/FAIL line per criterion.
//
// The five-qubit database is loaded from --db5 when present and otherwise
// generated and cached there (tens of minutes on one core). Criteria given
// with --expect-fail are known, documented shortfalls: the exit status is
// nonzero when any other criterion fails, or when an expected failure
// unexpectedly passes.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <thread>
#include <random>
#include <set>
#include <sstream>

#include "cliffopt/database.hpp"
#include "cliffopt/design2.hpp"
#include "cliffopt/reduce.hpp"
#include "cliffopt/synth.hpp"
#include "oracle.hpp"

namespace fs = std::filesystem;
using namespace cliffopt;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string join(const std::vector<std::uint64_t>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "[") << v[i];
  s << "]";
  return s.str();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

class Context {
 public:
  Context(fs::path db5, int threads) : db5_dir_(std::move(db5)), threads_(threads) {}

  const Database& db(int n) {
    auto& slot = dbs_[n];
    if (!slot) {
      if (n == 5) {
        slot = std::make_unique<Database>(load_or_build_n5());
      } else {
        slot = std::make_unique<Database>(Database::generate(n, GenerateOptions{.threads = threads_}));
        slot->augment(threads_);
      }
    }
    return *slot;
  }
  const fs::path& db5_dir() const { return db5_dir_; }
  int threads() const { return threads_; }

 private:
  Database load_or_build_n5() {
    if (fs::exists(Database::manifest_path(db5_dir_, 5))) return Database::load(db5_dir_, 5);
    std::fprintf(stderr, "no cached 5-qubit database in %s; generating (long)\n", db5_dir_.c_str());
    GenerateOptions opt{.threads = threads_};
    opt.progress = [](int k, std::size_t size) { std::fprintf(stderr, "  level %d: %zu\n", k, size); };
    Database db = Database::generate(5, opt);
    db.augment(threads_);
    fs::create_directories(db5_dir_);
    db.save(db5_dir_);
    return db;
  }

  fs::path db5_dir_;
  int threads_;
  std::map<int, std::unique_ptr<Database>> dbs_;
};

// 1. Per-cost class counts.
Outcome class_counts(Context& ctx) {
  const std::map<int, std::vector<std::uint64_t>> expected = {
      {2, {1, 1, 1, 1}},
      {3, {1, 1, 3, 8, 10, 3, 1}},
      {4, {1, 1, 4, 20, 112, 525, 1230, 453, 16, 1}},
  };
  Outcome o{true, ""};
  for (const auto& [n, want] : expected) {
    const auto got = ctx.db(n).class_counts();
    o.pass = o.pass && got == want;
    o.detail += "n=" + std::to_string(n) + " " + join(got) + " ";
  }
  o.detail += "k_max(4)=" + std::to_string(ctx.db(4).k_max());
  o.pass = o.pass && ctx.db(4).k_max() == 9 && ctx.db(4).total_classes() == 2363;
  return o;
}

// 2. Five qubits.
Outcome five_qubits(Context& ctx) {
  const Database& db = ctx.db(5);
  const std::vector<std::uint64_t> want = {1, 1, 4, 22, 183, 1958, 22257, 223723, 1441124, 2471855, 161458, 72, 1};
  const auto got = db.class_counts();
  std::uint64_t bytes = 0;
  for (int k = 0; k <= db.k_max(); ++k)
    bytes += fs::file_size(ctx.db5_dir() / ("r5_" + std::to_string(k) + ".bin"));
  const auto peak = std::max_element(got.begin(), got.end());
  Outcome o;
  o.pass = got == want && db.total_classes() == 4322659 && db.k_max() == 12 && *peak == 2471855 &&
           peak - got.begin() == 9 && bytes == 69162544;
  o.detail = "total=" + std::to_string(db.total_classes()) + " k_max=" + std::to_string(db.k_max()) +
             " peak=" + std::to_string(*peak) + "@" + std::to_string(peak - got.begin()) +
             " bytes=" + std::to_string(bytes);
  return o;
}

// 3. Sum of class sizes equals the group order.
Outcome group_counts(Context& ctx) {
  Outcome o{true, ""};
  const std::map<int, std::string> literal = {{2, "720"}, {3, "1451520"}, {4, "47377612800"}};
  for (int n = 2; n <= 4; ++n) {
    const CountReport r = verify_counts(ctx.db(n), ctx.threads());
    // Independent evaluation of 2^(n^2) prod (4^j - 1).
    UInt128 formula = UInt128{1} << (n * n);
    for (int j = 1; j <= n; ++j) formula *= (UInt128{1} << (2 * j)) - 1;
    o.pass = o.pass && r.ok && r.total == formula && to_string(formula) == literal.at(n);
    o.detail += "n=" + std::to_string(n) + " " + to_string(r.total) + " ";
  }
  return o;
}

// 4. Costs from the reduced pipeline against plain 0-1 BFS over the group.
Outcome oracle_equivalence(Context& ctx) {
  Outcome o{true, ""};
  for (int n : {2, 3}) {
    const oracle::Group g = oracle::enumerate_group(n);
    const std::vector<int> costs = oracle::zero_one_costs(g);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < g.elements.size(); ++i) mismatches += cost(g.elements[i], ctx.db(n)) != costs[i];
    o.pass = o.pass && mismatches == 0;
    o.detail += "n=" + std::to_string(n) + " " + std::to_string(g.elements.size()) + " elements, " +
                std::to_string(mismatches) + " mismatches; ";
  }
  return o;
}

// 5. Synthesis round trip.
Outcome synthesis_round_trip(Context& ctx) {
  Outcome o{true, ""};
  for (int n = 2; n <= 5; ++n) {
    const Database& db = ctx.db(n);
    std::size_t bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const Tableau u = random_clifford(n, 60 * n, 1000 * n + i);
      const Circuit c = synthesize(u, db);
      const int k = cost(u, db);
      bad += replay(c) != u || c.cnot_count() != k || k > db.k_max();
    }
    o.pass = o.pass && bad == 0;
    o.detail += "n=" + std::to_string(n) + " " + std::to_string(bad) + "/1000 bad; ";
  }
  return o;
}

// 6. Canonical form properties.
Outcome canonicity(Context&) {
  std::mt19937_64 rng(2026);
  auto random_local = [&](int n) {
    return LocalElement::from_index(n, static_cast<std::uint32_t>(rng() % LocalElement::group_size(n)));
  };
  std::size_t failures = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const Tableau u = random_clifford(n, 80, rng());
    const FullReduced r = reduce_full(u);
    const auto& perms = QubitPermutation::all(n);
    const Tableau moved = multiply(multiply(random_local(n).tableau(), conjugate(u, perms[rng() % perms.size()])),
                                   random_local(n).tableau());
    failures += reduce_full(moved).thin != r.thin;
    failures += reduce_full(r.v).thin != r.thin;
    const ReductionWitness& w = r.witness;
    failures += multiply(multiply(w.k.tableau(), conjugate(u, w.w)), w.l.tableau()) != r.v;
    const Row v = static_cast<Row>(1 + rng() % ((1u << (2 * n)) - 1));
    failures += chi(n, apply_to_vector(random_local(n).tableau(), v)) != chi(n, v);
    failures += kappa(multiply(multiply(random_local(n).tableau(), u), random_local(n).tableau())) != kappa(u);
  }
  return {failures == 0, "10000 trials, n in 2..5, " + std::to_string(failures) + " failures"};
}

// 7. Optimal 2-designs and full-group averages.
Outcome designs(Context& ctx) {
  Outcome o{true, ""};
  const DesignDistribution d2 = solve_lp(build_lp(ctx.db(2)), LpMode::kExact);
  const MixingReport m2 = verify_pauli_mixing(d2);
  const bool ok2 = d2.average_cost_exact == Rational(3, 2) && m2.exactly_zero;
  o.detail += "n=2 " + d2.average_cost_exact.str() + (m2.exactly_zero ? " (exact mixing)" : " (NOT mixing)");

  const DesignDistribution d3 = solve_lp(build_lp(ctx.db(3)), LpMode::kExact);
  const MixingReport m3 = verify_pauli_mixing(d3);
  const bool ok3 = std::fabs(d3.average_cost - 3.12363) <= 1e-4 && m3.exactly_zero;
  o.detail += "; n=3 " + fmt("%.6f", d3.average_cost);

  const DesignLP lp4 = build_lp(ctx.db(4), ctx.threads());
  const DesignDistribution d4 = solve_lp(lp4, LpMode::kFloat);
  const MixingReport m4 = verify_pauli_mixing(d4, 256);
  const LpCertificate c4 = certify_basis(lp4, d4.basis);
  const bool ok4 = std::fabs(d4.average_cost - 5.08034) <= 1e-4 && m4.max_residual <= 1e-8;
  o.detail += "; n=4 " + fmt("%.6f", d4.average_cost) + " residual " + fmt("%.1e", m4.max_residual) +
              (c4.primal_feasible && c4.dual_feasible ? " certified optimal = " + c4.objective.str() : " uncertified") +
              " (target 5.08034)";

  const double full3 = average_cost(verify_counts(ctx.db(3)).elements_per_cost).value;
  const double full4 = average_cost(verify_counts(ctx.db(4), ctx.threads()).elements_per_cost).value;
  const bool okfull = std::fabs(full3 - 3.50937) <= 1e-5 && std::fabs(full4 - 5.85856) <= 1e-5;
  o.detail += "; full-group " + fmt("%.6f", full3) + " / " + fmt("%.6f", full4);
  o.pass = ok2 && ok3 && ok4 && okfull;
  return o;
}

// 8. Analytic g against the class enumerated element by element.
Outcome g_oracle(Context& ctx) {
  const Database& db = ctx.db(2);
  std::size_t checked = 0, bad = 0, classes = 0;
  for (int k = 0; k <= db.k_max(); ++k) {
    for (const Record& rec : db.shard(k).load_all()) {
      ++classes;
      const Tableau u = expand_thin(rec.thin(2));
      std::set<std::uint64_t> seen;
      std::vector<Tableau> cls;
      for (const QubitPermutation& w : QubitPermutation::all(2))
        for (std::uint32_t l = 0; l < LocalElement::group_size(2); ++l)
          for (std::uint32_t r = 0; r < LocalElement::group_size(2); ++r) {
            const Tableau t = multiply(multiply(LocalElement::from_index(2, l).tableau(), conjugate(u, w)),
                                       LocalElement::from_index(2, r).tableau());
            if (seen.insert(oracle::key_of(t)).second) cls.push_back(t);
          }
      for (Row x = 1; x < 16; ++x)
        for (Row y = 1; y < 16; ++y) {
          std::int64_t hits = 0;
          for (const Tableau& t : cls) hits += apply_to_vector(t, x) == y;
          bad += g_coeff(u, x, y) != Rational(hits, static_cast<std::int64_t>(cls.size()));
          ++checked;
        }
    }
  }
  return {bad == 0 && classes == 4,
          std::to_string(classes) + " classes, " + std::to_string(checked) + " (x,y) pairs, " + std::to_string(bad) +
              " mismatches"};
}

// 9. Out-of-scope artifacts are refused or documented; advantage hits
// re-verified.
Outcome out_of_scope(Context& ctx) {
  Outcome o{true, ""};
  bool refused = false;
  try {
    (void)Database::generate(6);
  } catch (const InvalidArgument&) {
    refused = true;
  }
  o.pass = refused;
  o.detail = std::string("n=6 generation ") + (refused ? "refused without override" : "NOT refused");
  for (int n = 2; n <= 4; ++n) {
    const LinearDatabase linear = LinearDatabase::generate(n);
    const AdvantageReport r = advantage_scan(linear, ctx.db(n));
    std::size_t bad = 0;
    for (const AdvantageHit& h : r.hits)
      bad += replay(h.circuit) != linear.embed(h.code) || h.circuit.cnot_count() != h.clifford_cost ||
             h.clifford_cost >= h.cnot_cost;
    o.pass = o.pass && bad == 0;
    o.detail += "; advantage n=" + std::to_string(n) + ": " + std::to_string(r.hits.size()) + " hits, " +
                std::to_string(bad) + " unverified";
  }
  return o;
}

// 10. Timing (soft).
Outcome performance(Context& ctx) {
  using clock = std::chrono::steady_clock;
  double worst_reduce = 0, worst_synth = 0;
  std::string detail;
  for (int n = 2; n <= 5; ++n) {
    const Database& db = ctx.db(n);
    std::vector<Tableau> in;
    for (int i = 0; i < 10000; ++i) in.push_back(random_clifford(n, 60 * n, 77 + i));
    std::uint64_t sink = 0;
    auto t0 = clock::now();
    for (const Tableau& t : in) sink += reduce_full(t).thin.word1();
    auto t1 = clock::now();
    for (int i = 0; i < 1000; ++i) sink += synthesize(in[i], db).gates.size();
    auto t2 = clock::now();
    const double reduce_us = std::chrono::duration<double, std::micro>(t1 - t0).count() / in.size();
    const double synth_us = std::chrono::duration<double, std::micro>(t2 - t1).count() / 1000;
    worst_reduce = std::max(worst_reduce, reduce_us);
    worst_synth = std::max(worst_synth, synth_us);
    detail += "n=" + std::to_string(n) + " reduce " + fmt("%.2f", reduce_us) + "us synth " + fmt("%.1f", synth_us) +
              "us; ";
    if (sink == 42) detail += " ";
  }
  return {worst_reduce <= 10 && worst_synth <= 1000, detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance report"};
  std::string db5 = "db5";
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<int> expect_fail;
  std::vector<int> only;
  app.add_option("--db5", db5, "cache directory for the five-qubit database");
  app.add_option("-j,--threads", threads, "worker threads");
  app.add_option("--expect-fail", expect_fail, "criteria documented as unattainable");
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);

  Context ctx(db5, threads);
  const std::vector<std::pair<int, std::function<Outcome(Context&)>>> criteria = {
      {1, class_counts},   {2, five_qubits}, {3, group_counts}, {4, oracle_equivalence},
      {5, synthesis_round_trip}, {6, canonicity}, {7, designs}, {8, g_oracle},
      {9, out_of_scope},   {10, performance},
  };
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  int unexpected = 0;
  for (const auto& [id, run] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool known = expected.count(id) > 0;
    std::printf("criterion %2d: %s  %s [%.1fs]%s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), s,
                known ? (o.pass ? "  (expected to fail; now passes)" : "  (known shortfall, see README)") : "");
    std::fflush(stdout);
    if (o.pass == known) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
