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

#include "cliffopt/generators.hpp"

#include <memory>
#include <mutex>

namespace cliffopt {

namespace {

constexpr Gl2 kPH = Gl2::from_index(4);
constexpr Gl2 kHP = Gl2::from_index(5);

}  // namespace

GeneratorSet::GeneratorSet(int n) : n_(n) {
  if (n < 2 || n > kMaxQubits) throw InvalidArgument("generators need 2..6 qubits");
  const std::array<std::pair<Gl2, Gl2>, 9> panels = {{{Gl2::identity(), Gl2::identity()},
                                                     {Gl2::identity(), kPH},
                                                     {Gl2::identity(), kHP},
                                                     {kPH, Gl2::identity()},
                                                     {kHP, Gl2::identity()},
                                                     {kPH, kPH},
                                                     {kPH, kHP},
                                                     {kHP, kPH},
                                                     {kHP, kHP}}};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (const auto& [a, b] : panels) {
        Generator g;
        g.index = static_cast<int>(generators_.size());
        g.i = i;
        g.j = j;
        g.a = a;
        g.b = b;
        g.circuit.n = n;
        for (char ch : a.word()) g.circuit.gates.push_back(ch == 'h' ? Gate::h(i) : Gate::p(i));
        for (char ch : b.word()) g.circuit.gates.push_back(ch == 'h' ? Gate::h(j) : Gate::p(j));
        g.circuit.gates.push_back(Gate::cnot(i, j));
        g.tableau = Tableau::identity(n);
        g.tableau.apply(g.circuit);
        g.inverse = cliffopt::inverse(g.tableau);
        generators_.push_back(std::move(g));
      }
    }
  }
}

const GeneratorSet& GeneratorSet::get(int n) {
  static std::array<std::unique_ptr<GeneratorSet>, kMaxQubits + 1> sets;
  static std::once_flag flags[kMaxQubits + 1];
  if (n < 2 || n > kMaxQubits) throw InvalidArgument("generators need 2..6 qubits");
  std::call_once(flags[n], [n] { sets[n].reset(new GeneratorSet(n)); });
  return *sets[n];
}

void apply_generator(Tableau& u, const Generator& g) {
  for (const Gate& gate : g.circuit.gates) u.apply(gate);
}

}  // namespace cliffopt
