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

#include <fcntl.h>
#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <deque>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <new>
#include <thread>

#include "cliffopt/generators.hpp"
#include "cliffopt/reduce.hpp"

namespace cliffopt {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kRecordBytes = 16;

std::uint64_t augmentation_mask(int n) {
  if (n <= 5) return std::uint64_t{0xFF} << 56;
  return std::uint64_t{0xF} << 60;
}

void store_le(unsigned char* out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<unsigned char>(v >> (8 * i));
}

std::uint64_t load_le(const unsigned char* in) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{in[i]} << (8 * i);
  return v;
}

void encode(const Record& r, unsigned char* out) {
  store_le(out, r.word1);
  store_le(out + 8, r.word2);
}

Record decode(const unsigned char* in) { return {load_le(in), load_le(in + 8)}; }

// Runs body(begin, end) over [0, count) split into contiguous blocks.
template <typename Body>
void parallel_blocks(std::size_t count, int threads, Body body) {
  threads = std::max(1, threads);
  if (threads == 1 || count < 1024) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  const std::size_t block = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::size_t begin = std::min(count, t * block);
    const std::size_t end = std::min(count, begin + block);
    pool.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

void sort_unique(std::vector<ShardKey>& keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
}

bool sorted_contains(const std::vector<ShardKey>& keys, ShardKey key) {
  return std::binary_search(keys.begin(), keys.end(), key);
}

std::string shard_name(int n, int k, const char* ext) {
  return "r" + std::to_string(n) + "_" + std::to_string(k) + ext;
}

std::uint32_t crc_of_file(const fs::path& path, std::uintmax_t& bytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatabaseError("cannot open " + path.string());
  std::vector<char> buf(1 << 20);
  uLong crc = crc32(0L, Z_NULL, 0);
  bytes = 0;
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const std::streamsize got = in.gcount();
    if (got <= 0) break;
    crc = crc32(crc, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(got));
    bytes += static_cast<std::uintmax_t>(got);
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

// ---------------------------------------------------------------------------
// Record

Record Record::make(int n, ShardKey key, std::uint8_t generator) {
  Record r{key.word1, key.word2};
  if (n <= 5) {
    r.word2 |= std::uint64_t{generator} << 56;
  } else {
    r.word1 |= static_cast<std::uint64_t>(generator >> 4) << 60;
    r.word2 |= static_cast<std::uint64_t>(generator & 0xFu) << 60;
  }
  return r;
}

ShardKey Record::key(int n) const {
  const std::uint64_t mask = ~augmentation_mask(n);
  return {word1 & mask, word2 & mask};
}

std::uint8_t Record::generator(int n) const {
  if (n <= 5) return static_cast<std::uint8_t>(word2 >> 56);
  return static_cast<std::uint8_t>(((word1 >> 60) << 4) | (word2 >> 60));
}

ThinMatrix Record::thin(int n) const {
  const ShardKey k = key(n);
  return ThinMatrix(n, k.word1, k.word2);
}

// ---------------------------------------------------------------------------
// Shard

struct Shard::File {
  int fd = -1;
  std::atomic<std::uint64_t> reads{0};
  ~File() {
    if (fd >= 0) ::close(fd);
  }
};

Shard::Shard(int n, int k, std::vector<Record> records)
    : n_(n), k_(k), size_(records.size()), records_(std::move(records)) {}

Shard Shard::open_file(int n, int k, const fs::path& records, const fs::path& index, std::size_t count) {
  Shard s;
  s.n_ = n;
  s.k_ = k;
  s.size_ = count;
  s.file_ = std::make_shared<File>();
  s.file_->fd = ::open(records.c_str(), O_RDONLY);
  if (s.file_->fd < 0) throw DatabaseError("cannot open " + records.string());
  std::ifstream in(index, std::ios::binary);
  if (!in) throw DatabaseError("cannot open " + index.string());
  const std::size_t entries = (count + kIndexStride - 1) / kIndexStride;
  std::vector<unsigned char> buf(entries * kRecordBytes);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (static_cast<std::size_t>(in.gcount()) != buf.size() || in.peek() != std::char_traits<char>::eof())
    throw DatabaseError("index size mismatch: " + index.string());
  s.index_.resize(entries);
  for (std::size_t i = 0; i < entries; ++i) {
    const Record r = decode(buf.data() + i * kRecordBytes);
    s.index_[i] = {r.word1, r.word2};
  }
  return s;
}

Record Shard::at(std::size_t i) const {
  if (i >= size_) throw InvalidArgument("shard index out of range");
  if (!file_) return records_[i];
  unsigned char buf[kRecordBytes];
  if (::pread(file_->fd, buf, kRecordBytes, static_cast<off_t>(i * kRecordBytes)) != kRecordBytes)
    throw DatabaseError("short read from shard file");
  return decode(buf);
}

std::optional<Record> Shard::find(ShardKey key) const {
  if (!file_) {
    auto it = std::lower_bound(records_.begin(), records_.end(), key,
                               [this](const Record& r, const ShardKey& k) { return r.key(n_) < k; });
    if (it != records_.end() && it->key(n_) == key) return *it;
    return std::nullopt;
  }
  // Last block whose first key is <= key.
  auto it = std::upper_bound(index_.begin(), index_.end(), key);
  if (it == index_.begin()) return std::nullopt;
  const std::size_t block = static_cast<std::size_t>(it - index_.begin()) - 1;
  const std::size_t begin = block * kIndexStride;
  const std::size_t count = std::min(kIndexStride, size_ - begin);
  std::vector<unsigned char> buf(count * kRecordBytes);
  file_->reads.fetch_add(1, std::memory_order_relaxed);
  const ssize_t want = static_cast<ssize_t>(buf.size());
  if (::pread(file_->fd, buf.data(), buf.size(), static_cast<off_t>(begin * kRecordBytes)) != want)
    throw DatabaseError("short read from shard file");
  std::size_t lo = 0, hi = count;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const Record r = decode(buf.data() + mid * kRecordBytes);
    const ShardKey k = r.key(n_);
    if (k == key) return r;
    if (k < key) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return std::nullopt;
}

std::vector<Record> Shard::load_all() const {
  if (!file_) return records_;
  std::vector<Record> out(size_);
  std::vector<unsigned char> buf(size_ * kRecordBytes);
  std::size_t done = 0;
  while (done < buf.size()) {
    const ssize_t got = ::pread(file_->fd, buf.data() + done, buf.size() - done, static_cast<off_t>(done));
    if (got <= 0) throw DatabaseError("short read from shard file");
    done += static_cast<std::size_t>(got);
  }
  for (std::size_t i = 0; i < size_; ++i) out[i] = decode(buf.data() + i * kRecordBytes);
  return out;
}

void Shard::set_generator(std::size_t i, std::uint8_t generator) {
  if (file_) throw DatabaseError("file-backed shards are read-only");
  records_[i] = Record::make(n_, records_[i].key(n_), generator);
}

std::uint64_t Shard::block_reads() const { return file_ ? file_->reads.load() : 0; }

// ---------------------------------------------------------------------------
// Generation

Database Database::generate(int n, const GenerateOptions& options) {
  if (n < 2 || n > kMaxQubits) throw InvalidArgument("database generation needs 2..6 qubits");
  if (n == 6 && !options.allow_n6)
    throw InvalidArgument("n = 6 needs terabytes of storage; pass the explicit override to proceed");
  const GeneratorSet& gens = GeneratorSet::get(n);

  std::vector<std::vector<ShardKey>> levels;
  std::vector<std::size_t> completed;
  auto finish_level = [&](std::vector<ShardKey> level) {
    completed.push_back(level.size());
    if (options.progress) options.progress(static_cast<int>(levels.size()), level.size());
    levels.push_back(std::move(level));
  };

  try {
    finish_level({key_of(reduce_thin(Tableau::identity(n)))});
    Tableau cx = Tableau::identity(n);
    cx.apply_cnot(0, 1);
    finish_level({key_of(reduce_thin(cx))});

    constexpr std::size_t kFlushSize = std::size_t{1} << 22;
    while (true) {
      const std::vector<ShardKey>& prev = levels.back();
      const std::vector<ShardKey>& prev2 = levels[levels.size() - 2];
      const int threads = std::max(1, options.threads);
      std::vector<std::vector<ShardKey>> buffers(static_cast<std::size_t>(threads));
      std::atomic<int> next_slot{0};
      parallel_blocks(prev.size(), threads, [&](std::size_t begin, std::size_t end) {
        std::vector<ShardKey>& out = buffers[static_cast<std::size_t>(next_slot.fetch_add(1))];
        std::size_t flushed = 0;
        for (std::size_t i = begin; i < end; ++i) {
          const Tableau v = expand_thin(ThinMatrix(n, prev[i].word1, prev[i].word2));
          for (const Generator& g : gens) {
            Tableau t = v;
            apply_generator(t, g);
            const ShardKey key = key_of(reduce_thin(t));
            if (sorted_contains(prev, key) || sorted_contains(prev2, key)) continue;
            out.push_back(key);
          }
          if (out.size() - flushed > kFlushSize) {
            sort_unique(out);
            flushed = out.size();
          }
        }
        sort_unique(out);
      });
      std::vector<ShardKey> next;
      for (auto& b : buffers) {
        if (next.empty()) {
          next.swap(b);
          continue;
        }
        std::vector<ShardKey> merged;
        merged.reserve(next.size() + b.size());
        std::set_union(next.begin(), next.end(), b.begin(), b.end(), std::back_inserter(merged));
        next.swap(merged);
        std::vector<ShardKey>().swap(b);
      }
      if (next.empty()) break;
      finish_level(std::move(next));
    }
  } catch (const std::bad_alloc&) {
    throw GenerationError("out of memory during generation after " + std::to_string(completed.size()) + " levels",
                          completed);
  }

  Database db;
  db.n_ = n;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    std::vector<Record> records;
    records.reserve(levels[k].size());
    for (const ShardKey& key : levels[k]) records.push_back(Record::make(n, key, kNoGenerator));
    std::vector<ShardKey>().swap(levels[k]);
    db.shards_.emplace_back(n, static_cast<int>(k), std::move(records));
  }
  return db;
}

void Database::augment(int threads) {
  const GeneratorSet& gens = GeneratorSet::get(n_);
  for (std::size_t k = 1; k < shards_.size(); ++k) {
    Shard& shard = shards_[k];
    if (shard.file_backed()) throw DatabaseError("cannot augment a file-backed database");
    const Shard& below = shards_[k - 1];
    parallel_blocks(shard.size(), threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const Tableau v = expand_thin(shard.records()[i].thin(n_));
        int found = -1;
        for (const Generator& g : gens) {
          Tableau t = v;
          apply_generator(t, g);
          if (below.contains(key_of(reduce_thin(t)))) {
            found = g.index;
            break;
          }
        }
        if (found < 0)
          throw DatabaseError("database corrupt: no cost-reducing generator at level " + std::to_string(k));
        shard.set_generator(i, static_cast<std::uint8_t>(found));
      }
    });
  }
  augmented_ = true;
}

std::vector<std::uint64_t> Database::class_counts() const {
  std::vector<std::uint64_t> out;
  for (const Shard& s : shards_) out.push_back(s.size());
  return out;
}

std::uint64_t Database::total_classes() const {
  std::uint64_t total = 0;
  for (const Shard& s : shards_) total += s.size();
  return total;
}

std::optional<LookupResult> Database::lookup(ShardKey key) const {
  for (const Shard& s : shards_) {
    if (auto r = s.find(key)) return LookupResult{s.cost(), *r};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Files

fs::path Database::manifest_path(const fs::path& dir, int n) {
  return dir / ("r" + std::to_string(n) + "_manifest.json");
}

void Database::save(const fs::path& dir) const {
  fs::create_directories(dir);
  nlohmann::json manifest;
  manifest["format"] = "cliffopt-shards-1";
  manifest["n"] = n_;
  manifest["k_max"] = k_max();
  manifest["augmented"] = augmented_;
  manifest["record_bytes"] = kRecordBytes;
  manifest["index_stride"] = Shard::kIndexStride;
  nlohmann::json list = nlohmann::json::array();
  for (const Shard& s : shards_) {
    const std::vector<Record> records = s.load_all();
    std::vector<unsigned char> bytes(records.size() * kRecordBytes);
    for (std::size_t i = 0; i < records.size(); ++i) encode(records[i], bytes.data() + i * kRecordBytes);
    std::vector<unsigned char> index;
    for (std::size_t i = 0; i < records.size(); i += Shard::kIndexStride) {
      const ShardKey key = records[i].key(n_);
      unsigned char buf[kRecordBytes];
      encode({key.word1, key.word2}, buf);
      index.insert(index.end(), buf, buf + kRecordBytes);
    }
    auto write_atomic = [](const fs::path& path, const std::vector<unsigned char>& data) {
      const fs::path tmp = path.string() + ".tmp";
      {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
        if (!out) throw DatabaseError("write failed: " + tmp.string());
      }
      fs::rename(tmp, path);
    };
    const std::string bin = shard_name(n_, s.cost(), ".bin");
    const std::string idx = shard_name(n_, s.cost(), ".idx");
    write_atomic(dir / bin, bytes);
    write_atomic(dir / idx, index);
    const uLong crc = crc32(crc32(0L, Z_NULL, 0), bytes.data(), static_cast<uInt>(bytes.size()));
    list.push_back({{"k", s.cost()}, {"file", bin}, {"index", idx}, {"records", records.size()}, {"crc32", crc}});
  }
  manifest["shards"] = list;
  const fs::path path = manifest_path(dir, n_);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << manifest.dump(2) << "\n";
    if (!out) throw DatabaseError("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

Database Database::load(const fs::path& dir, int n, bool file_backed) {
  const fs::path path = manifest_path(dir, n);
  std::ifstream in(path);
  if (!in) throw DatabaseError("no database manifest at " + path.string());
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw DatabaseError("malformed manifest " + path.string() + ": " + e.what());
  }
  if (manifest.value("n", 0) != n) throw DatabaseError("manifest qubit count mismatch");
  Database db;
  db.n_ = n;
  db.augmented_ = manifest.value("augmented", false);
  int expected_k = 0;
  for (const auto& entry : manifest.at("shards")) {
    const int k = entry.at("k").get<int>();
    if (k != expected_k++) throw DatabaseError("manifest shards out of order");
    const fs::path bin = dir / entry.at("file").get<std::string>();
    const fs::path idx = dir / entry.at("index").get<std::string>();
    const std::size_t count = entry.at("records").get<std::size_t>();
    std::uintmax_t bytes = 0;
    const std::uint32_t crc = crc_of_file(bin, bytes);
    if (bytes != count * kRecordBytes) throw DatabaseError("record count mismatch in " + bin.string());
    if (crc != entry.at("crc32").get<std::uint32_t>()) throw DatabaseError("checksum mismatch in " + bin.string());
    Shard shard = Shard::open_file(n, k, bin, idx, count);
    if (!file_backed) shard = Shard(n, k, shard.load_all());
    db.shards_.push_back(std::move(shard));
  }
  if (db.k_max() != manifest.at("k_max").get<int>()) throw DatabaseError("manifest k_max mismatch");
  return db;
}

// ---------------------------------------------------------------------------
// Class statistics

namespace {

// 2x2 blocks as 4-bit codes, entry (r, c) at bit 2r + c.
int mul2(int a, int b) {
  int out = 0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      int s = 0;
      for (int k = 0; k < 2; ++k) s ^= ((a >> (2 * r + k)) & 1) & ((b >> (2 * k + c)) & 1);
      out |= s << (2 * r + c);
    }
  return out;
}

struct BlockTables {
  std::array<int, Gl2::kOrder> code{};
  // solutions[b][t]: mask of g with b * g == t.
  std::array<std::array<std::uint8_t, 16>, 16> solutions{};
  // left[g][b] = g * b.
  std::array<std::array<int, 16>, Gl2::kOrder> left{};
  BlockTables() {
    for (int g = 0; g < Gl2::kOrder; ++g) {
      const Gl2 e = Gl2::from_index(g);
      code[g] = e.entry(0, 0) | e.entry(0, 1) << 1 | e.entry(1, 0) << 2 | e.entry(1, 1) << 3;
    }
    for (int b = 0; b < 16; ++b)
      for (int g = 0; g < Gl2::kOrder; ++g) {
        solutions[b][mul2(b, code[g])] |= static_cast<std::uint8_t>(1u << g);
        left[g][b] = mul2(code[g], b);
      }
  }
};

const BlockTables& block_tables() {
  static const BlockTables t;
  return t;
}

int block(const Tableau& u, int q, int j) {
  const int n = u.num_qubits();
  return u.bit(q, j) | u.bit(q, n + j) << 1 | u.bit(n + q, j) << 2 | u.bit(n + q, n + j) << 3;
}

// Counts L with K X L = U for some local K: K_q X_qj L_j = U_qj for all q, j.
std::uint64_t count_right_factors(const Tableau& x, const Tableau& u) {
  const int n = u.num_qubits();
  const BlockTables& t = block_tables();
  std::array<std::array<int, kMaxQubits>, kMaxQubits> xb{}, ub{};
  for (int q = 0; q < n; ++q)
    for (int j = 0; j < n; ++j) {
      xb[q][j] = block(x, q, j);
      ub[q][j] = block(u, q, j);
    }
  std::uint64_t total = 0;
  auto recurse = [&](auto& self, int q, std::array<std::uint8_t, kMaxQubits> masks) -> void {
    if (q == n) {
      std::uint64_t product = 1;
      for (int j = 0; j < n; ++j) product *= static_cast<std::uint64_t>(std::popcount(masks[j]));
      total += product;
      return;
    }
    for (int g = 0; g < Gl2::kOrder; ++g) {
      std::array<std::uint8_t, kMaxQubits> next = masks;
      bool alive = true;
      for (int j = 0; j < n && alive; ++j) {
        next[j] &= t.solutions[t.left[g][xb[q][j]]][ub[q][j]];
        alive = next[j] != 0;
      }
      if (alive) self(self, q + 1, next);
    }
  };
  std::array<std::uint8_t, kMaxQubits> all{};
  all.fill(0x3F);
  recurse(recurse, 0, all);
  return total;
}

}  // namespace

UInt128 class_size_bound(int n) {
  UInt128 v = 1;
  for (int i = 0; i < 2 * n; ++i) v *= 6;
  for (int i = 2; i <= n; ++i) v *= static_cast<unsigned>(i);
  return v;
}

ClassStats class_stats(const Tableau& reduced) {
  const KappaMatrix k = kappa(reduced);
  ClassStats s;
  s.element = pack_thin(reduced);
  for (const QubitPermutation& w : QubitPermutation::all(reduced.num_qubits())) {
    const Tableau x = conjugate(reduced, w);
    if (kappa(x) != k) continue;
    s.aut_size += count_right_factors(x, reduced);
  }
  if (s.aut_size == 0) throw DatabaseError("automorphism group is empty; input not a group element");
  const UInt128 bound = class_size_bound(reduced.num_qubits());
  if (bound % s.aut_size != 0) throw DatabaseError("automorphism count does not divide the class bound");
  s.class_size = bound / s.aut_size;
  return s;
}

CountReport verify_counts(const Database& db, int threads) {
  CountReport report;
  const int n = db.num_qubits();
  for (int k = 0; k <= db.k_max(); ++k) {
    const std::vector<Record> records = db.shard(k).load_all();
    std::mutex m;
    UInt128 level = 0;
    parallel_blocks(records.size(), threads, [&](std::size_t begin, std::size_t end) {
      UInt128 local = 0;
      for (std::size_t i = begin; i < end; ++i) local += class_stats(expand_thin(records[i].thin(n))).class_size;
      std::lock_guard<std::mutex> lock(m);
      level += local;
    });
    report.elements_per_cost.push_back(level);
    report.total += level;
  }
  report.expected = group_order(n);
  report.ok = report.total == report.expected;
  return report;
}

// ---------------------------------------------------------------------------
// GL(n, 2)

std::uint32_t LinearDatabase::identity_code(int n) {
  std::uint32_t code = 0;
  for (int c = 0; c < n; ++c) code |= 1u << (c * n + c);
  return code;
}

std::uint32_t LinearDatabase::apply_cnot(int n, std::uint32_t code, int c, int t) {
  const std::uint32_t col = (code >> (c * n)) & ((1u << n) - 1);
  return code ^ (col << (t * n));
}

LinearDatabase LinearDatabase::generate(int n) {
  if (n < 1 || n > 5) throw InvalidArgument("linear database supports 1..5 qubits");
  LinearDatabase db;
  db.n_ = n;
  db.costs_.assign(std::size_t{1} << (n * n), 0xFF);
  std::vector<std::uint32_t> frontier = {identity_code(n)};
  db.costs_[frontier[0]] = 0;
  db.size_ = 1;
  for (int level = 1; !frontier.empty(); ++level) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t code : frontier)
      for (int c = 0; c < n; ++c)
        for (int t = 0; t < n; ++t) {
          if (c == t) continue;
          const std::uint32_t v = apply_cnot(n, code, c, t);
          if (db.costs_[v] != 0xFF) continue;
          db.costs_[v] = static_cast<std::uint8_t>(level);
          next.push_back(v);
        }
    db.size_ += next.size();
    frontier.swap(next);
  }
  return db;
}

Circuit LinearDatabase::circuit(std::uint32_t code) const {
  int k = cost(code);
  if (k < 0) throw InvalidArgument("matrix is not invertible");
  std::vector<Gate> backwards;
  while (k > 0) {
    bool stepped = false;
    for (int c = 0; c < n_ && !stepped; ++c)
      for (int t = 0; t < n_ && !stepped; ++t) {
        if (c == t) continue;
        const std::uint32_t v = apply_cnot(n_, code, c, t);
        if (cost(v) == k - 1) {
          backwards.push_back(Gate::cnot(c, t));
          code = v;
          --k;
          stepped = true;
        }
      }
    if (!stepped) throw DatabaseError("linear database inconsistent");
  }
  Circuit out;
  out.n = n_;
  out.gates.assign(backwards.rbegin(), backwards.rend());
  return out;
}

Tableau LinearDatabase::embed(std::uint32_t code) const {
  Tableau t = Tableau::identity(n_);
  t.apply(circuit(code));
  return t;
}

}  // namespace cliffopt
