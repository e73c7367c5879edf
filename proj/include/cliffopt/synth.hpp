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

#include <cstdint>
#include <vector>

#include "cliffopt/database.hpp"
#include "cliffopt/reduce.hpp"
#include "cliffopt/symplectic.hpp"

namespace cliffopt {

struct CostQueryResult {
  int cost = -1;
  Record record;
  ReductionWitness witness;
};

/// CNOT cost of u: the level holding reduce(u), probed in ascending order.
/// Throws DatabaseError when no level holds it.
int cost(const Tableau& u, const Database& db);

/// Like cost() but also returns the stored record and the reduction witness.
CostQueryResult query(const Tableau& u, const Database& db);

struct CommutedGenerator {
  int b = -1;
  LocalElement m;
};

/// Solves W L G_a = G_b W M for the generator b and local M by searching
/// the b with G_b^-1 (W L G_a W^-1) local.
CommutedGenerator commute_generator(const QubitPermutation& w, const LocalElement& l, int a);

struct SynthesisOptions {
  /// Merge runs of single-qubit gates on each qubit between CNOTs.
  bool merge_single_qubit = true;
};

/// An optimal circuit for u: replay equals u and the CNOT count equals
/// cost(u). Needs an augmented database.
Circuit synthesize(const Tableau& u, const Database& db, const SynthesisOptions& options = {});

/// I g_1 g_2 ... for the gates of c.
Tableau replay(const Circuit& c);

/// Collapses each maximal run of single-qubit gates on a qubit into the
/// shortest equivalent word. Replay and CNOT count are unchanged.
Circuit merge_single_qubit_runs(const Circuit& c);

/// Exact average CNOT cost over the whole group.
struct AverageCost {
  UInt128 numerator = 0;
  UInt128 denominator = 1;
  double value = 0;
};

AverageCost average_cost(const std::vector<UInt128>& elements_per_cost);

/// A linear reversible map whose Clifford cost beats its CNOT-only cost.
struct AdvantageHit {
  std::uint32_t code = 0;
  int cnot_cost = 0;
  int clifford_cost = 0;
  Circuit circuit;
};

struct AdvantageReport {
  std::uint64_t scanned = 0;
  std::vector<AdvantageHit> hits;  // every circuit re-verified by replay
};

AdvantageReport advantage_scan(const LinearDatabase& linear, const Database& db);

}  // namespace cliffopt
