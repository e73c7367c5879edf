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

#include "cliffopt/synth.hpp"

#include <numeric>

#include "cliffopt/generators.hpp"

namespace cliffopt {

namespace {

void check_db(const Tableau& u, const Database& db) {
  if (u.num_qubits() != db.num_qubits()) throw InvalidArgument("tableau and database qubit counts differ");
}

UInt128 gcd128(UInt128 a, UInt128 b) {
  while (b != 0) {
    const UInt128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

int cost(const Tableau& u, const Database& db) {
  check_db(u, db);
  const auto hit = db.lookup(key_of(reduce_thin(u)));
  if (!hit) throw DatabaseError("element not found in any level; database incomplete");
  return hit->cost;
}

CostQueryResult query(const Tableau& u, const Database& db) {
  check_db(u, db);
  const FullReduced r = reduce_full(u, ReduceOptions{.streamlined = true});
  const auto hit = db.lookup(key_of(r.thin));
  if (!hit) throw DatabaseError("element not found in any level; database incomplete");
  return {hit->cost, hit->record, r.witness};
}

CommutedGenerator commute_generator(const QubitPermutation& w, const LocalElement& l, int a) {
  const int n = w.num_qubits();
  const GeneratorSet& gens = GeneratorSet::get(n);
  const Tableau wt = w.tableau();
  const Tableau winv = w.inverse().tableau();
  const Tableau t = multiply(multiply(multiply(wt, l.tableau()), gens[a].tableau), winv);
  for (const Generator& g : gens) {
    const Tableau rest = multiply(g.inverse, t);
    if (is_local(rest)) return {g.index, local_from_tableau(multiply(multiply(winv, rest), wt))};
  }
  throw InvalidArgument("no generator b with W L G_a = G_b W M");
}

Tableau replay(const Circuit& c) {
  c.validate();
  Tableau t = Tableau::identity(c.n);
  t.apply(c);
  return t;
}

Circuit synthesize(const Tableau& u, const Database& db, const SynthesisOptions& options) {
  check_db(u, db);
  if (!db.augmented()) throw DatabaseError("synthesis needs an augmented database");
  if (!is_symplectic(u)) throw InvalidArgument("input is not symplectic");
  const int n = u.num_qubits();
  const GeneratorSet& gens = GeneratorSet::get(n);

  // U G_b1 G_b2 ... G_bk = M with M local.
  std::vector<int> steps;
  Tableau current = u;
  CostQueryResult q = query(current, db);
  const int total = q.cost;
  for (int k = total; k > 0; --k) {
    const int a = q.record.generator(n);
    if (a == kNoGenerator || a >= gens.size()) throw DatabaseError("record lacks a cost-reducing generator");
    const CommutedGenerator c = commute_generator(q.witness.w, q.witness.l, a);
    steps.push_back(c.b);
    apply_generator(current, gens[c.b]);
    const FullReduced r = reduce_full(current, ReduceOptions{.streamlined = true});
    const auto rec = db.shard(k - 1).find(key_of(r.thin));
    if (!rec) throw DatabaseError("cost did not decrease along the stored generator");
    q = {k - 1, *rec, r.witness};
  }
  if (!is_local(current)) throw DatabaseError("cost-0 remainder is not local");

  // U = M G_bk^-1 ... G_b1^-1; each inverse is the reversed gate list.
  Circuit out = local_from_tableau(current).circuit();
  out.n = n;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) out.append(gens[*it].circuit.reversed());
  if (options.merge_single_qubit) out = merge_single_qubit_runs(out);
  return out;
}

Circuit merge_single_qubit_runs(const Circuit& c) {
  Circuit out;
  out.n = c.n;
  std::vector<Gl2> pending(static_cast<std::size_t>(c.n), Gl2::identity());
  auto flush = [&](int q) {
    for (char ch : pending[q].word()) out.gates.push_back(ch == 'h' ? Gate::h(q) : Gate::p(q));
    pending[q] = Gl2::identity();
  };
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::kH:
        pending[g.q0] = pending[g.q0] * Gl2::hadamard();
        break;
      case GateKind::kP:
        pending[g.q0] = pending[g.q0] * Gl2::phase();
        break;
      case GateKind::kCnot:
        flush(g.q0);
        flush(g.q1);
        out.gates.push_back(g);
        break;
    }
  }
  for (int q = 0; q < c.n; ++q) flush(q);
  return out;
}

AverageCost average_cost(const std::vector<UInt128>& elements_per_cost) {
  AverageCost a;
  UInt128 num = 0, den = 0;
  for (std::size_t k = 0; k < elements_per_cost.size(); ++k) {
    num += static_cast<UInt128>(k) * elements_per_cost[k];
    den += elements_per_cost[k];
  }
  if (den == 0) throw InvalidArgument("empty cost distribution");
  const UInt128 g = gcd128(num, den);
  a.numerator = num / g;
  a.denominator = den / g;
  a.value = static_cast<double>(a.numerator) / static_cast<double>(a.denominator);
  return a;
}

AdvantageReport advantage_scan(const LinearDatabase& linear, const Database& db) {
  const int n = linear.num_qubits();
  if (n != db.num_qubits()) throw InvalidArgument("linear and Clifford databases differ in qubit count");
  AdvantageReport report;
  const auto& costs = linear.costs();
  for (std::uint32_t code = 0; code < costs.size(); ++code) {
    if (costs[code] == 0xFF) continue;
    ++report.scanned;
    const Tableau t = linear.embed(code);
    const int clifford = cost(t, db);
    if (clifford >= costs[code]) continue;
    AdvantageHit hit{code, costs[code], clifford, synthesize(t, db)};
    if (replay(hit.circuit) != t || hit.circuit.cnot_count() != clifford)
      throw DatabaseError("advantage circuit failed replay verification");
    report.hits.push_back(std::move(hit));
  }
  return report;
}

}  // namespace cliffopt
