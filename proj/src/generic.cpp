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

#include <algorithm>
#include <map>
#include <numeric>

#include "whitewhale/engine.hpp"
#include "whitewhale/errors.hpp"

namespace ww::engine {
namespace {

void check_generators(const lp::IntVectors& gens) {
  if (gens.empty()) throw DomainError("generator list is empty");
  const std::size_t n = gens.front().size();
  if (n == 0) throw DomainError("generators must have positive dimension");
  for (const auto& g : gens) {
    if (g.size() != n) throw DomainError("generators of different dimensions");
    if (std::all_of(g.begin(), g.end(), [](auto x) { return x == 0; })) {
      throw DomainError("zero generator");
    }
  }
  // Two generators are parallel iff every 2x2 minor vanishes.
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      bool parallel = true;
      for (std::size_t i = 0; i < n && parallel; ++i) {
        for (std::size_t j = i + 1; j < n && parallel; ++j) {
          const __int128 minor = static_cast<__int128>(gens[a][i]) * gens[b][j] -
                                 static_cast<__int128>(gens[a][j]) * gens[b][i];
          parallel = minor == 0;
        }
      }
      if (parallel) {
        throw DomainError("generators " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                          " are collinear");
      }
    }
  }
}

// perm_image[t][j] = index of generator j after swapping coordinates t, t+1.
std::vector<std::vector<std::size_t>> adjacent_swap_images(const lp::IntVectors& gens) {
  std::map<lp::IntVector, std::size_t> index;
  for (std::size_t j = 0; j < gens.size(); ++j) index.emplace(gens[j], j);
  const std::size_t n = gens.front().size();
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t t = 0; t + 1 < n; ++t) {
    std::vector<std::size_t> image(gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
      lp::IntVector v = gens[j];
      std::swap(v[t], v[t + 1]);
      auto it = index.find(v);
      if (it == index.end()) {
        throw DomainError("generator set is not closed under coordinate permutations");
      }
      image[j] = it->second;
    }
    out.push_back(std::move(image));
  }
  return out;
}

lp::IntVector point_of_subset(const SubsetMask& s, const lp::IntVectors& gens) {
  lp::IntVector p(gens.front().size(), 0);
  for (GeneratorId j : s.ids()) {
    const auto& g = gens[j - 1];
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += g[i];
  }
  return p;
}

std::uint64_t permutation_orbit(lp::IntVector p) {
  std::sort(p.begin(), p.end());
  std::uint64_t orbit = 1;
  std::uint64_t run = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    run = (i > 0 && p[i] == p[i - 1]) ? run + 1 : 1;
    orbit = orbit * (i + 1) / run;
  }
  return orbit;
}

// Bubble-sorts the point with adjacent swaps, applying each swap to the
// subset as well.
GenericEntry canonical_entry(SubsetMask s, lp::IntVector p,
                             const std::vector<std::vector<std::size_t>>& swaps) {
  const std::size_t n = p.size();
  for (std::size_t pass = 0; pass < n; ++pass) {
    bool moved = false;
    for (std::size_t t = 0; t + 1 < n; ++t) {
      if (p[t] <= p[t + 1]) continue;
      std::swap(p[t], p[t + 1]);
      SubsetMask image(s.bit_count());
      for (GeneratorId j : s.ids()) image.insert(static_cast<GeneratorId>(swaps[t][j - 1] + 1));
      s = std::move(image);
      moved = true;
    }
    if (!moved) break;
  }
  return GenericEntry{std::move(s), std::move(p), 1};
}

}  // namespace

std::vector<GenericLayer> generate_generic(const lp::IntVectors& generators,
                                           const GenericOptions& options) {
  check_generators(generators);
  const std::vector<std::vector<std::size_t>> swaps =
      options.use_symmetry ? adjacent_swap_images(generators) : std::vector<std::vector<std::size_t>>{};
  const auto m = static_cast<GeneratorId>(generators.size());
  const int last = options.use_symmetry ? static_cast<int>(m / 2) : static_cast<int>(m);
  lp::GenericVertexOracle oracle(generators);

  std::vector<GenericLayer> layers;
  GenericEntry origin{SubsetMask(m), lp::IntVector(generators.front().size(), 0), 1};
  if (options.use_symmetry) origin.orbit_size = (m == 0) ? 1 : 2;
  layers.push_back(GenericLayer{0, {origin}});

  for (int k = 1; k <= last; ++k) {
    std::map<lp::IntVector, GenericEntry> next;
    for (const auto& parent : layers.back().entries) {
      for (GeneratorId j = 1; j <= m; ++j) {
        if (parent.subset.contains(j)) continue;
        if (options.pre_oracle && !options.pre_oracle(parent.subset, j)) continue;
        SubsetMask child = parent.subset.with(j);
        lp::IntVector p = point_of_subset(child, generators);
        if (options.use_symmetry) {
          GenericEntry e = canonical_entry(std::move(child), std::move(p), swaps);
          if (next.contains(e.point)) continue;
          if (!oracle.is_vertex(e.subset)) continue;
          const bool middle = 2 * static_cast<GeneratorId>(k) == m;
          e.orbit_size = permutation_orbit(e.point) * (middle ? 1 : 2);
          next.emplace(e.point, std::move(e));
        } else {
          if (next.contains(p)) continue;
          if (!oracle.is_vertex(child)) continue;
          next.emplace(p, GenericEntry{std::move(child), p, 1});
        }
      }
    }
    GenericLayer layer{k, {}};
    for (auto& [p, e] : next) layer.entries.push_back(std::move(e));
    layers.push_back(std::move(layer));
  }
  return layers;
}

}  // namespace ww::engine
