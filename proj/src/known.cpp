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

#include "whitewhale/known.hpp"

#include <array>

namespace ww::known {
namespace {

constexpr std::array<Sizes, 8> kSizes{{
    {2, 6, 6, 2},
    {3, 32, 48, 5},
    {4, 370, 760, 18},
    {5, 11292, 30540, 112},
    {6, 1066044, 3662064, 1512},
    {7, 347326352, 1463047264, 56220},
    {8, 419172756930, 2105325742608, 6942047},
    {9, 1955230985997140, 11463171860268180, 3140607258},
}};

const std::vector<Row> kRows3{
    {0, 0, 0, {0, 0, 0}, 2, 0, 3},
    {1, 1, 1, {0, 0, 1}, 6, 1, 2},
    {2, 1, 3, {0, 1, 2}, 12, 1, 2},
    {3, 1, 2, {0, 2, 2}, 6, 2, 1},
    {3, 1, 5, {1, 1, 3}, 6, 2, 1},
};

const std::vector<Row> kRows4{
    {0, 0, 0, {0, 0, 0, 0}, 2, 0, 4},
    {1, 1, 1, {0, 0, 0, 1}, 8, 1, 3},
    {2, 1, 3, {0, 0, 1, 2}, 24, 1, 3},
    {3, 1, 2, {0, 0, 2, 2}, 12, 2, 2},
    {3, 1, 5, {0, 1, 1, 3}, 24, 2, 2},
    {4, 1, 7, {0, 1, 3, 3}, 24, 1, 3},
    {4, 2, 7, {0, 2, 2, 4}, 24, 1, 3},
    {4, 2, 9, {1, 1, 1, 4}, 8, 3, 3},
    {5, 1, 5, {0, 2, 3, 4}, 48, 2, 2},
    {5, 1, 11, {1, 1, 4, 4}, 12, 2, 4},
    {5, 2, 9, {1, 2, 2, 5}, 24, 2, 2},
    {6, 1, 6, {0, 3, 4, 4}, 24, 2, 2},
    {6, 1, 11, {1, 2, 4, 5}, 48, 2, 2},
    {6, 3, 11, {2, 2, 3, 6}, 24, 2, 2},
    {7, 1, 4, {0, 4, 4, 4}, 8, 3, 1},
    {7, 1, 11, {1, 3, 5, 5}, 24, 3, 1},
    {7, 2, 9, {2, 2, 4, 6}, 24, 3, 1},
    {7, 3, 13, {3, 3, 3, 7}, 8, 3, 1},
};

}  // namespace

std::optional<Sizes> sizes(int d) {
  for (const auto& s : kSizes) {
    if (s.d == d) return s;
  }
  return std::nullopt;
}

std::span<const Row> rows(int d) {
  if (d == 3) return kRows3;
  if (d == 4) return kRows4;
  return {};
}

}  // namespace ww::known
