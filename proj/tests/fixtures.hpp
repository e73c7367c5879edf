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

#include <array>
#include <memory>
#include <mutex>

#include "cliffopt/database.hpp"

namespace cliffopt::testing {

/// Augmented in-memory databases for n = 2..4, built once per process.
inline const Database& small_db(int n) {
  static std::array<std::unique_ptr<Database>, 5> cache;
  static std::array<std::once_flag, 5> flags;
  std::call_once(flags[n], [n] {
    auto db = std::make_unique<Database>(Database::generate(n));
    db->augment();
    cache[n] = std::move(db);
  });
  return *cache[n];
}

}  // namespace cliffopt::testing
