// Copyright 2026 The whitewhale Authors
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

// Published reference values for the White Whale, compiled in for
// verification. Vertex counts are OEIS A034997.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "whitewhale/core.hpp"

namespace ww::known {

struct Sizes {
  int d;
  std::uint64_t a;  // vertices
  std::uint64_t e;  // edges
  std::uint64_t o;  // canonical vertices (orbits)
};

// d = 2..9; nullopt elsewhere.
std::optional<Sizes> sizes(int d);

// One canonical vertex of the reference layer tables. The subset is
// parent-th entry (1-based) of layer k - 1 plus generator `added`.
struct Row {
  int k;
  int parent;  // 0 for the origin
  GeneratorId added;
  std::vector<int> point;
  std::uint64_t orbit;
  int deg_below;
  int deg_above;
};

// Full rows for d = 3 and d = 4, layers 0 .. 2^(d-1) - 1 in table order;
// empty for other d.
std::span<const Row> rows(int d);

}  // namespace ww::known
