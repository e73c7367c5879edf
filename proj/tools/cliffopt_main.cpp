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

// cliffopt: command-line front end.
//
//   cliffopt generate  -n 4 --db DIR          build, augment and save R_n
//   cliffopt verify    -n 4 --db DIR          group-order and cost checks
//   cliffopt stats     -n 4 --db DIR          class counts per cost
//   cliffopt cost      -n 4 --db DIR --tableau FILE
//   cliffopt synth     -n 4 --db DIR --tableau FILE | --random K
//   cliffopt design    -n 3 [--exact | --float]
//   cliffopt advantage -n 4
//   cliffopt bench     -n 5 --db DIR --count 10000
//
// Without --db, n <= 4 databases are generated in memory on the fly.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cliffopt/database.hpp"
#include "cliffopt/design2.hpp"
#include "cliffopt/reduce.hpp"
#include "cliffopt/synth.hpp"

namespace fs = std::filesystem;
using namespace cliffopt;

namespace {

struct Common {
  int qubits = 2;
  std::string db_dir;
  int threads = 1;
  std::uint64_t seed = 1;
  bool file_backed = false;
};

void add_common(CLI::App* cmd, Common& c, bool want_db = true) {
  cmd->add_option("-n,--qubits", c.qubits, "number of qubits")->required()->check(CLI::Range(1, kMaxQubits));
  if (want_db) {
    cmd->add_option("--db", c.db_dir, "database directory");
    cmd->add_flag("--file-backed", c.file_backed, "serve lookups from the shard files instead of RAM");
  }
  cmd->add_option("-j,--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "random seed");
}

Database open_db(const Common& c) {
  if (!c.db_dir.empty() && fs::exists(Database::manifest_path(c.db_dir, c.qubits)))
    return Database::load(c.db_dir, c.qubits, c.file_backed);
  if (c.qubits > 4) throw DatabaseError("no database at '" + c.db_dir + "'; run 'cliffopt generate' first");
  Database db = Database::generate(c.qubits, GenerateOptions{.threads = c.threads});
  db.augment(c.threads);
  return db;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_counts(const std::vector<std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    std::printf("k=%-3zu %12llu\n", k, static_cast<unsigned long long>(counts[k]));
    total += counts[k];
  }
  std::printf("total  %12llu\n", static_cast<unsigned long long>(total));
}

int cmd_generate(const Common& c, bool allow_n6) {
  if (c.db_dir.empty()) throw InvalidArgument("--db is required");
  const auto t0 = std::chrono::steady_clock::now();
  GenerateOptions opt{.threads = c.threads, .allow_n6 = allow_n6};
  opt.progress = [t0](int k, std::size_t size) {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "level %d: %zu classes (%.1fs)\n", k, size, s);
  };
  Database db = Database::generate(c.qubits, opt);
  db.augment(c.threads);
  fs::create_directories(c.db_dir);
  db.save(c.db_dir);
  print_counts(db.class_counts());
  std::printf("k_max  %d\nbytes  %llu\n", db.k_max(), static_cast<unsigned long long>(db.total_classes() * 16));
  return 0;
}

int cmd_verify(const Common& c) {
  const Database db = open_db(c);
  const CountReport r = verify_counts(db, c.threads);
  for (std::size_t k = 0; k < r.elements_per_cost.size(); ++k)
    std::printf("|C^%zu| = %s\n", k, to_string(r.elements_per_cost[k]).c_str());
  const AverageCost avg = average_cost(r.elements_per_cost);
  std::printf("total    %s\nexpected %s\naverage  %s/%s = %.8f\n%s\n", to_string(r.total).c_str(),
              to_string(r.expected).c_str(), to_string(avg.numerator).c_str(), to_string(avg.denominator).c_str(),
              avg.value, r.ok ? "OK" : "MISMATCH");
  return r.ok ? 0 : 1;
}

int cmd_stats(const Common& c) {
  const Database db = open_db(c);
  print_counts(db.class_counts());
  std::printf("k_max  %d\n", db.k_max());
  return 0;
}

std::vector<Tableau> inputs(const Common& c, const std::string& tableau_path, const std::string& circuit_path,
                            int random) {
  std::vector<Tableau> out;
  if (!tableau_path.empty()) out.push_back(parse_tableau(read_input(tableau_path)));
  if (!circuit_path.empty()) out.push_back(replay(parse_circuit(c.qubits, read_input(circuit_path))));
  for (int i = 0; i < random; ++i) out.push_back(random_clifford(c.qubits, 64 * c.qubits, c.seed + i));
  if (out.empty()) throw InvalidArgument("give --tableau, --circuit or --random");
  for (const Tableau& t : out) {
    if (t.num_qubits() != c.qubits) throw InvalidArgument("input qubit count differs from --qubits");
    if (!is_symplectic(t)) throw InvalidArgument("input tableau is not symplectic");
  }
  return out;
}

int cmd_cost(const Common& c, const std::vector<Tableau>& in) {
  const Database db = open_db(c);
  for (const Tableau& t : in) std::printf("%d\n", cost(t, db));
  return 0;
}

int cmd_synth(const Common& c, const std::vector<Tableau>& in, bool raw) {
  const Database db = open_db(c);
  for (const Tableau& t : in) {
    const Circuit circuit = synthesize(t, db, SynthesisOptions{.merge_single_qubit = !raw});
    if (replay(circuit) != t) throw DatabaseError("synthesized circuit failed replay");
    std::printf("# cnot %d\n%s", circuit.cnot_count(), format_circuit(circuit).c_str());
  }
  return 0;
}

int cmd_design(const Common& c, bool exact, bool floating, const std::string& json_path) {
  if (exact && floating) throw InvalidArgument("--exact and --float are exclusive");
  const Database db = open_db(c);
  const DesignLP lp = build_lp(db, c.threads);
  const LpMode mode = exact || (!floating && c.qubits <= 3) ? LpMode::kExact : LpMode::kFloat;
  DesignDistribution d = solve_lp(lp, mode);
  attach_circuits(d, db);
  const MixingReport r = verify_pauli_mixing(d, 256, c.seed);
  const std::string json = design_to_json(d, r);
  if (json_path.empty()) {
    std::printf("%s\n", json.c_str());
  } else {
    std::ofstream(json_path) << json << "\n";
    std::printf("average cost %.8f, %zu classes, residual %.3g\n", d.average_cost, d.entries.size(), r.max_residual);
  }
  return 0;
}

int cmd_advantage(const Common& c) {
  const Database db = open_db(c);
  const LinearDatabase linear = LinearDatabase::generate(c.qubits);
  const AdvantageReport r = advantage_scan(linear, db);
  std::printf("scanned %llu linear maps, %zu with a cheaper Clifford circuit\n",
              static_cast<unsigned long long>(r.scanned), r.hits.size());
  for (const AdvantageHit& h : r.hits)
    std::printf("# code %u: cnot-only %d, clifford %d\n%s", h.code, h.cnot_cost, h.clifford_cost,
                format_circuit(h.circuit).c_str());
  return 0;
}

int cmd_bench(const Common& c, int count) {
  const Database db = open_db(c);
  std::vector<Tableau> in;
  for (int i = 0; i < count; ++i) in.push_back(random_clifford(c.qubits, 64 * c.qubits, c.seed + i));
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  std::uint64_t sink = 0;
  for (const Tableau& t : in) sink += reduce_full(t).thin.word1();
  auto t1 = clock::now();
  int cnots = 0;
  for (const Tableau& t : in) cnots += synthesize(t, db).cnot_count();
  auto t2 = clock::now();
  const double per_reduce = std::chrono::duration<double, std::micro>(t1 - t0).count() / count;
  const double per_synth = std::chrono::duration<double, std::micro>(t2 - t1).count() / count;
  std::printf("reduce_full  %.2f us/call\nsynthesize   %.2f us/call\nmean cnot    %.4f\n(checksum %llu)\n", per_reduce,
              per_synth, static_cast<double>(cnots) / count, static_cast<unsigned long long>(sink & 0xFFFF));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CNOT-optimal Clifford databases, synthesis and cheap 2-designs"};
  app.require_subcommand(1);

  Common gen_c, ver_c, stats_c, cost_c, synth_c, design_c, adv_c, bench_c;
  bool allow_n6 = false, raw = false, exact = false, floating = false;
  std::string cost_tab, cost_circ, synth_tab, synth_circ, json_path;
  int cost_random = 0, synth_random = 0, bench_count = 10000;

  auto* gen = app.add_subcommand("generate", "build, augment and save the reduced database");
  add_common(gen, gen_c);
  gen->add_flag("--allow-n6", allow_n6, "permit n = 6 (terabyte scale; not supported at desk scale)");
  auto* ver = app.add_subcommand("verify", "check class sizes against the group order");
  add_common(ver, ver_c);
  auto* stats = app.add_subcommand("stats", "class counts per CNOT cost");
  add_common(stats, stats_c);
  auto* cst = app.add_subcommand("cost", "CNOT cost of a tableau or circuit");
  add_common(cst, cost_c);
  cst->add_option("--tableau", cost_tab, "file with a 2n x 2n 0/1 matrix ('-' for stdin)");
  cst->add_option("--circuit", cost_circ, "file with one gate per line ('-' for stdin)");
  cst->add_option("--random", cost_random, "also cost K random elements");
  auto* syn = app.add_subcommand("synth", "optimal circuit for a tableau");
  add_common(syn, synth_c);
  syn->add_option("--tableau", synth_tab, "file with a 2n x 2n 0/1 matrix ('-' for stdin)");
  syn->add_option("--circuit", synth_circ, "file with one gate per line ('-' for stdin)");
  syn->add_option("--random", synth_random, "synthesize K random elements");
  syn->add_flag("--raw", raw, "keep single-qubit gates as emitted");
  auto* des = app.add_subcommand("design", "minimum-cost Clifford 2-design by linear programming");
  add_common(des, design_c);
  des->add_flag("--exact", exact, "rational simplex (default for n <= 3)");
  des->add_flag("--float", floating, "double-precision simplex (default for n = 4)");
  des->add_option("--json", json_path, "write the design to this file");
  auto* adv = app.add_subcommand("advantage", "linear maps whose Clifford cost beats CNOT-only cost");
  add_common(adv, adv_c);
  auto* bench = app.add_subcommand("bench", "time reduce_full and synthesis on random elements");
  add_common(bench, bench_c);
  bench->add_option("--count", bench_count, "number of random elements")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*gen) return cmd_generate(gen_c, allow_n6);
    if (*ver) return cmd_verify(ver_c);
    if (*stats) return cmd_stats(stats_c);
    if (*cst) return cmd_cost(cost_c, inputs(cost_c, cost_tab, cost_circ, cost_random));
    if (*syn) return cmd_synth(synth_c, inputs(synth_c, synth_tab, synth_circ, synth_random), raw);
    if (*des) return cmd_design(design_c, exact, floating, json_path);
    if (*adv) return cmd_advantage(adv_c);
    if (*bench) return cmd_bench(bench_c, bench_count);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
