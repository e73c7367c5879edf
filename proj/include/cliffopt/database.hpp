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
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffopt/symplectic.hpp"
#include "cliffopt/thin_matrix.hpp"

namespace cliffopt {

/// Augmentation value of cost-0 records: there is no cost-reducing generator.
inline constexpr std::uint8_t kNoGenerator = 0xFF;

/// Masked (word1, word2) pair; the order of canonical representatives.
struct ShardKey {
  std::uint64_t word1 = 0;
  std::uint64_t word2 = 0;
  auto operator<=>(const ShardKey&) const = default;
};

inline ShardKey key_of(const ThinMatrix& t) { return {t.word1(), t.word2()}; }

/// One 16-byte database entry: payload words with the generator index in the
/// spare high bits. For n <= 5 the byte is bits 56..63 of word2; for n = 6
/// the high nibble is bits 60..63 of word1 and the low nibble bits 60..63 of
/// word2.
struct Record {
  std::uint64_t word1 = 0;
  std::uint64_t word2 = 0;

  static Record make(int n, ShardKey key, std::uint8_t generator);
  ShardKey key(int n) const;
  std::uint8_t generator(int n) const;
  ThinMatrix thin(int n) const;

  bool operator==(const Record&) const = default;
};

class DatabaseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sorted level R_n^k. Either resident in memory or backed by a record
/// file plus a stride-1024 key index kept in memory.
class Shard {
 public:
  static constexpr std::size_t kIndexStride = 1024;

  Shard() = default;
  Shard(int n, int k, std::vector<Record> records);
  static Shard open_file(int n, int k, const std::filesystem::path& records, const std::filesystem::path& index,
                         std::size_t count);

  int num_qubits() const { return n_; }
  int cost() const { return k_; }
  std::size_t size() const { return size_; }
  bool file_backed() const { return file_ != nullptr; }

  Record at(std::size_t i) const;
  std::optional<Record> find(ShardKey key) const;
  bool contains(ShardKey key) const { return find(key).has_value(); }

  /// All records; reads the file when file-backed.
  std::vector<Record> load_all() const;
  /// Resident records; empty for file-backed shards.
  const std::vector<Record>& records() const { return records_; }
  void set_generator(std::size_t i, std::uint8_t generator);

  /// Number of block reads issued by find() on a file-backed shard.
  std::uint64_t block_reads() const;

 private:
  struct File;

  int n_ = 0;
  int k_ = 0;
  std::size_t size_ = 0;
  std::vector<Record> records_;
  std::vector<ShardKey> index_;
  std::shared_ptr<File> file_;
};

struct GenerateOptions {
  int threads = 1;
  bool allow_n6 = false;
  /// Called after each completed level with (k, level size).
  std::function<void(int, std::size_t)> progress;
};

/// Thrown when generation cannot finish; carries the completed levels.
class GenerationError : public DatabaseError {
 public:
  GenerationError(const std::string& what, std::vector<std::size_t> completed)
      : DatabaseError(what), completed_(std::move(completed)) {}
  const std::vector<std::size_t>& completed_levels() const { return completed_; }

 private:
  std::vector<std::size_t> completed_;
};

struct LookupResult {
  int cost = -1;
  Record record;
};

class Database {
 public:
  Database() = default;

  /// Breadth-first search over reduced classes; augmentation bytes are left
  /// at kNoGenerator until augment() runs.
  static Database generate(int n, const GenerateOptions& options = {});

  /// Stores in every record of shard k >= 1 the first generator b with
  /// reduce(U G_b) in shard k-1.
  void augment(int threads = 1);
  bool augmented() const { return augmented_; }

  int num_qubits() const { return n_; }
  int k_max() const { return static_cast<int>(shards_.size()) - 1; }
  const Shard& shard(int k) const { return shards_[k]; }
  std::vector<std::uint64_t> class_counts() const;
  std::uint64_t total_classes() const;

  /// Probes shards in ascending cost.
  std::optional<LookupResult> lookup(ShardKey key) const;

  /// Writes r<n>_<k>.bin, r<n>_<k>.idx and r<n>_manifest.json into dir.
  void save(const std::filesystem::path& dir) const;
  /// Reads the manifest, verifies every checksum and record count.
  static Database load(const std::filesystem::path& dir, int n, bool file_backed = false);
  static std::filesystem::path manifest_path(const std::filesystem::path& dir, int n);

 private:
  int n_ = 0;
  bool augmented_ = false;
  std::vector<Shard> shards_;
};

/// Automorphism count and class size of a reduced element.
struct ClassStats {
  ThinMatrix element;
  std::uint64_t aut_size = 0;
  UInt128 class_size = 0;
};

/// |Aut(U)| = #{(W, L) : K W^-1 U W L = U for some local K}, solved block
/// by block per permutation; |[U]| = 6^(2n) n! / |Aut(U)|.
ClassStats class_stats(const Tableau& reduced);

/// 6^(2n) n!.
UInt128 class_size_bound(int n);

struct CountReport {
  std::vector<UInt128> elements_per_cost;  // |C_n^k|
  UInt128 total = 0;
  UInt128 expected = 0;
  bool ok = false;
};

/// Sums class sizes per level and compares with the group order.
CountReport verify_counts(const Database& db, int threads = 1);

/// Exact CNOT costs over GL(n, F2): costs[code] for the matrix whose column c
/// is bits [c*n, (c+1)*n) of code; 0xFF marks singular matrices.
class LinearDatabase {
 public:
  static LinearDatabase generate(int n);

  int num_qubits() const { return n_; }
  std::size_t size() const { return size_; }
  int cost(std::uint32_t code) const { return costs_[code] == 0xFF ? -1 : costs_[code]; }
  const std::vector<std::uint8_t>& costs() const { return costs_; }

  static std::uint32_t identity_code(int n);
  /// Code after right multiplication by CNOT(c, t): column c added to t.
  static std::uint32_t apply_cnot(int n, std::uint32_t code, int c, int t);
  /// An optimal CNOT-only circuit, by walking the cost gradient.
  Circuit circuit(std::uint32_t code) const;
  /// The symplectic image, obtained by replaying circuit(code).
  Tableau embed(std::uint32_t code) const;

 private:
  int n_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint8_t> costs_;
};

}  // namespace cliffopt
