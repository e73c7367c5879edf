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

#include <vector>

#include "cliffopt/symplectic.hpp"

namespace cliffopt {

/// A cost-1 generator a_i b_j CNOT(i, j) with i < j and a, b in {I, PH, HP}.
struct Generator {
  int index = 0;
  int i = 0;
  int j = 0;
  Gl2 a;
  Gl2 b;
  Tableau tableau;
  Tableau inverse;
  Circuit circuit;
};

/// The m = 9 n(n-1)/2 generators. Pairs (i, j) run in lexicographic order;
/// within a pair (a, b) runs (I,I) (I,PH) (I,HP) (PH,I) (HP,I) (PH,PH)
/// (PH,HP) (HP,PH) (HP,HP).
class GeneratorSet {
 public:
  static const GeneratorSet& get(int n);

  int num_qubits() const { return n_; }
  int size() const { return static_cast<int>(generators_.size()); }
  const Generator& operator[](int index) const { return generators_[index]; }
  auto begin() const { return generators_.begin(); }
  auto end() const { return generators_.end(); }

  static int count(int n) { return 9 * n * (n - 1) / 2; }

 private:
  explicit GeneratorSet(int n);

  int n_ = 0;
  std::vector<Generator> generators_;
};

/// U <- U G_index, applied as column operations.
void apply_generator(Tableau& u, const Generator& g);

}  // namespace cliffopt
