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

#include "cliffopt/database.hpp"

#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "cliffopt/generators.hpp"
#include "cliffopt/reduce.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace cliffopt;
using cliffopt::testing::small_db;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cliffopt_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Aut(U) from the definition: pairs (W, L) with U L^-1 W^-1 U^-1 W local.
std::uint64_t aut_by_definition(const Tableau& u) {
  const int n = u.num_qubits();
  const Tableau uinv = inverse(u);
  std::uint64_t count = 0;
  for (const QubitPermutation& w : QubitPermutation::all(n)) {
    const Tableau tail = multiply(multiply(w.inverse().tableau(), uinv), w.tableau());
    for (std::uint32_t i = 0; i < LocalElement::group_size(n); ++i) {
      const Tableau linv = LocalElement::from_index(n, i).inverse().tableau();
      if (is_local(multiply(multiply(u, linv), tail))) ++count;
    }
  }
  return count;
}

}  // namespace

TEST(generate, class_counts) {
  EXPECT_EQ(small_db(2).class_counts(), (std::vector<std::uint64_t>{1, 1, 1, 1}));
  EXPECT_EQ(small_db(3).class_counts(), (std::vector<std::uint64_t>{1, 1, 3, 8, 10, 3, 1}));
  EXPECT_EQ(small_db(4).class_counts(), (std::vector<std::uint64_t>{1, 1, 4, 20, 112, 525, 1230, 453, 16, 1}));
  EXPECT_EQ(small_db(4).total_classes(), 2363u);
  EXPECT_EQ(small_db(4).k_max(), 9);
}

TEST(generate, seeds_and_shard_invariants) {
  for (int n = 2; n <= 4; ++n) {
    const Database& db = small_db(n);
    EXPECT_EQ(db.shard(0).at(0).key(n), key_of(reduce_thin(Tableau::identity(n))));
    Tableau cx = Tableau::identity(n);
    cx.apply_cnot(0, 1);
    EXPECT_EQ(db.shard(1).at(0).key(n), key_of(reduce_thin(cx)));
    for (int k = 0; k <= db.k_max(); ++k) {
      const auto& recs = db.shard(k).records();
      for (std::size_t i = 0; i < recs.size(); ++i) {
        if (i > 0) ASSERT_LT(recs[i - 1].key(n), recs[i].key(n));
        const Tableau v = expand_thin(recs[i].thin(n));
        ASSERT_EQ(key_of(reduce_thin(v)), recs[i].key(n)) << "record is not a reduced fixed point";
      }
    }
  }
}

TEST(generate, refuses_six_qubits_without_override) {
  EXPECT_THROW(Database::generate(6), InvalidArgument);
  EXPECT_THROW(Database::generate(1), InvalidArgument);
}

TEST(generate, worker_count_does_not_change_output) {
  Database one = Database::generate(4, {.threads = 1});
  Database three = Database::generate(4, {.threads = 3});
  one.augment(1);
  three.augment(3);
  const fs::path a = scratch_dir("w1"), b = scratch_dir("w3");
  one.save(a);
  three.save(b);
  for (int k = 0; k <= one.k_max(); ++k) {
    const std::string name = "r4_" + std::to_string(k) + ".bin";
    ASSERT_EQ(slurp(a / name), slurp(b / name));
  }
  EXPECT_EQ(slurp(a / "r4_manifest.json"), slurp(b / "r4_manifest.json"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(augment, stored_generator_is_first_cost_reducing) {
  for (int n = 2; n <= 4; ++n) {
    const Database& db = small_db(n);
    const GeneratorSet& gens = GeneratorSet::get(n);
    EXPECT_EQ(db.shard(0).at(0).generator(n), kNoGenerator);
    for (int k = 1; k <= db.k_max(); ++k) {
      for (const Record& r : db.shard(k).records()) {
        const int b = r.generator(n);
        ASSERT_LT(b, gens.size());
        const Tableau v = expand_thin(r.thin(n));
        for (int a = 0; a <= b; ++a) {
          Tableau t = v;
          apply_generator(t, gens[a]);
          const auto hit = db.lookup(key_of(reduce_thin(t)));
          ASSERT_TRUE(hit.has_value());
          if (a < b) {
            ASSERT_NE(hit->cost, k - 1);
          } else {
            ASSERT_EQ(hit->cost, k - 1);
          }
        }
      }
    }
  }
}

TEST(augment, generator_chain_reaches_identity_in_k_steps) {
  const int n = 3;
  const Database& db = small_db(n);
  const GeneratorSet& gens = GeneratorSet::get(n);
  for (int k = 0; k <= db.k_max(); ++k) {
    for (const Record& start : db.shard(k).records()) {
      Record r = start;
      int steps = 0;
      while (r.generator(n) != kNoGenerator) {
        Tableau t = expand_thin(r.thin(n));
        apply_generator(t, gens[r.generator(n)]);
        const auto hit = db.lookup(key_of(reduce_thin(t)));
        ASSERT_TRUE(hit.has_value());
        r = hit->record;
        ++steps;
      }
      EXPECT_EQ(steps, k);
    }
  }
}

TEST(record, augmentation_bits_are_masked) {
  const ShardKey key{0x0123456789ull, 0x0FEDCBA987ull};
  for (int g : {0, 1, 89, 254}) {
    const Record r = Record::make(5, key, static_cast<std::uint8_t>(g));
    EXPECT_EQ(r.key(5), key);
    EXPECT_EQ(r.generator(5), g);
    EXPECT_EQ(r.word2 >> 56, static_cast<std::uint64_t>(g));
  }
  const ShardKey wide{0x0FFFFFFFFFFFFFFFull, 0x0ABCDEF012345678ull};
  for (int g : {0, 134, 0xFF}) {
    const Record r = Record::make(6, wide, static_cast<std::uint8_t>(g));
    EXPECT_EQ(r.key(6), wide);
    EXPECT_EQ(r.generator(6), g);
    EXPECT_EQ(r.word1 >> 60, static_cast<std::uint64_t>(g >> 4));
    EXPECT_EQ(r.word2 >> 60, static_cast<std::uint64_t>(g & 15));
  }
}

TEST(files, round_trip_and_file_backed_lookup) {
  const Database& db = small_db(4);
  const fs::path dir = scratch_dir("files");
  db.save(dir);
  std::uintmax_t total = 0;
  for (int k = 0; k <= db.k_max(); ++k) total += fs::file_size(dir / ("r4_" + std::to_string(k) + ".bin"));
  EXPECT_EQ(total, 37808u);

  const Database ram = Database::load(dir, 4, false);
  const Database disk = Database::load(dir, 4, true);
  EXPECT_TRUE(disk.augmented());
  EXPECT_EQ(ram.class_counts(), db.class_counts());
  for (int k = 0; k <= db.k_max(); ++k) {
    ASSERT_TRUE(disk.shard(k).file_backed());
    EXPECT_EQ(ram.shard(k).records(), db.shard(k).records());
    EXPECT_EQ(disk.shard(k).load_all(), db.shard(k).records());
    for (const Record& r : db.shard(k).records()) {
      const auto hit = disk.lookup(r.key(4));
      ASSERT_TRUE(hit.has_value());
      EXPECT_EQ(hit->cost, k);
      EXPECT_EQ(hit->record, r);
    }
  }
  // Non-members are reported absent.
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const ThinMatrix t = pack_thin(random_clifford(4, 200, rng()));
    const bool member = ram.lookup(key_of(t)).has_value();
    EXPECT_EQ(disk.lookup(key_of(t)).has_value(), member);
  }
  // Each file-backed probe reads at most one block per shard.
  const std::uint64_t before = disk.shard(6).block_reads();
  disk.shard(6).find(db.shard(6).at(700).key(4));
  EXPECT_LE(disk.shard(6).block_reads() - before, 1u);
  fs::remove_all(dir);
}

TEST(files, corruption_is_detected) {
  const fs::path dir = scratch_dir("corrupt");
  small_db(3).save(dir);
  {
    std::fstream f(dir / "r3_4.bin", std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(3);
    f.put('\x5a');
  }
  EXPECT_THROW(Database::load(dir, 3), DatabaseError);
  EXPECT_THROW(Database::load(dir / "missing", 3), DatabaseError);
  fs::remove_all(dir);
}

TEST(class_stats, matches_definition_and_sums_to_group_order) {
  for (int n = 2; n <= 3; ++n) {
    const Database& db = small_db(n);
    UInt128 sum = 0;
    for (int k = 0; k <= db.k_max(); ++k)
      for (const Record& r : db.shard(k).records()) {
        const Tableau u = expand_thin(r.thin(n));
        const ClassStats s = class_stats(u);
        ASSERT_EQ(s.aut_size, aut_by_definition(u));
        sum += s.class_size;
      }
    EXPECT_EQ(sum, group_order(n));
  }
}

TEST(class_stats, extreme_class_sizes) {
  for (int n = 2; n <= 4; ++n) {
    const Database& db = small_db(n);
    UInt128 six_n = 1;
    for (int i = 0; i < n; ++i) six_n *= 6;
    EXPECT_EQ(class_stats(expand_thin(db.shard(0).at(0).thin(n))).class_size, six_n);
    bool generic_seen = false;
    for (int k = 0; k <= db.k_max(); ++k)
      for (const Record& r : db.shard(k).records()) {
        const UInt128 size = class_stats(expand_thin(r.thin(n))).class_size;
        ASSERT_GE(size, six_n);
        ASSERT_LE(size, class_size_bound(n));
        generic_seen |= size == class_size_bound(n);
      }
    if (n == 4) EXPECT_TRUE(generic_seen);
  }
}

TEST(verify_counts, sums_to_group_order) {
  for (int n = 2; n <= 4; ++n) {
    const CountReport r = verify_counts(small_db(n));
    EXPECT_TRUE(r.ok) << n;
    EXPECT_EQ(r.total, group_order(n));
  }
  const CountReport r2 = verify_counts(small_db(2));
  EXPECT_EQ(r2.elements_per_cost[0], 36u);
}

TEST(oracle, database_cost_equals_full_group_search) {
  for (int n = 2; n <= 3; ++n) {
    const oracle::Group g = oracle::enumerate_group(n);
    const std::vector<int> costs = oracle::zero_one_costs(g);
    const Database& db = small_db(n);
    std::map<int, std::uint64_t> histogram;
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
      const auto hit = db.lookup(key_of(reduce_thin(g.elements[i])));
      ASSERT_TRUE(hit.has_value());
      ASSERT_EQ(hit->cost, costs[i]);
      ++histogram[costs[i]];
    }
    const CountReport r = verify_counts(db);
    for (auto [k, count] : histogram) EXPECT_EQ(r.elements_per_cost[k], count);
  }
}

TEST(linear, small_groups_and_swap) {
  const LinearDatabase l2 = LinearDatabase::generate(2);
  EXPECT_EQ(l2.size(), 6u);
  EXPECT_EQ(l2.cost(LinearDatabase::identity_code(2)), 0);
  // Exchange matrix: column 0 = e1, column 1 = e0.
  EXPECT_EQ(l2.cost(0b0110), 3);
  EXPECT_EQ(LinearDatabase::generate(3).size(), 168u);
  EXPECT_EQ(LinearDatabase::generate(4).size(), 20160u);
}

TEST(linear, neighbors_and_embedding) {
  const int n = 4;
  const LinearDatabase l = LinearDatabase::generate(n);
  std::uint32_t checked = 0;
  for (std::uint32_t code = 0; code < l.costs().size(); ++code) {
    if (l.cost(code) < 0) continue;
    for (int c = 0; c < n; ++c)
      for (int t = 0; t < n; ++t)
        if (c != t) ASSERT_LE(std::abs(l.cost(LinearDatabase::apply_cnot(n, code, c, t)) - l.cost(code)), 1);
    if (checked++ % 7 != 0) continue;
    const Circuit c = l.circuit(code);
    ASSERT_EQ(c.cnot_count(), l.cost(code));
    // Replay gives blockdiag(A, A^-T).
    const Tableau t = l.embed(code);
    Tableau a(n);
    for (int r = 0; r < n; ++r)
      for (int col = 0; col < n; ++col) a.set_bit(r, col, (code >> (col * n + r)) & 1);
    Tableau block(n);
    for (int r = 0; r < n; ++r)
      for (int col = 0; col < n; ++col) {
        block.set_bit(r, col, a.bit(r, col));
        ASSERT_EQ(t.bit(r, n + col), 0);
        ASSERT_EQ(t.bit(n + r, col), 0);
      }
    for (int r = 0; r < n; ++r)
      for (int col = 0; col < n; ++col) ASSERT_EQ(t.bit(r, col), a.bit(r, col));
    // Lower-right block times A^T is the identity.
    for (int r = 0; r < n; ++r)
      for (int col = 0; col < n; ++col) {
        int s = 0;
        for (int k = 0; k < n; ++k) s ^= t.bit(n + r, n + k) & a.bit(col, k);
        ASSERT_EQ(s, r == col ? 1 : 0);
      }
  }
}
