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

#include "whitewhale/comb.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "whitewhale/errors.hpp"

namespace ww::comb {

SubmaskTable::SubmaskTable(Dimension d) : d_(d) {
  const GeneratorId m = d.generator_count();
  table_.reserve(m);
  for (GeneratorId g = 1; g <= m; ++g) {
    SubsetMask s(m);
    for (GeneratorId h = g; h != 0; h = (h - 1) & g) s.insert(h);
    table_.push_back(std::move(s));
  }
}

std::size_t restricted_count(const SubsetMask& s, GeneratorId g, const SubmaskTable& table) {
  return s.intersect_count(table[g]);
}

bool oracle_O(const SubsetMask& s, GeneratorId g, const SubmaskTable& table) {
  const std::size_t need = (std::size_t{1} << (support(g) - 1)) - 1;
  return restricted_count(s, g, table) == need;
}

bool filter_ones(int k_next, Dimension d, GeneratorId g) noexcept {
  return !(g == d.ones() && k_next < static_cast<int>(d.half()));
}

bool filter_complement(const SubsetMask& s, GeneratorId g, Dimension d) noexcept {
  const GeneratorId bar = d.ones() - g;
  return bar == 0 || !s.contains(bar);
}

bool filter_sorted_extension(const Point& p, GeneratorId g, Dimension d) noexcept {
  const int n = d.value();
  for (int i = 0; i + 1 < n; ++i) {
    if (p[i] == p[i + 1] && coord_of(g, i, n) > coord_of(g, i + 1, n)) return false;
  }
  return true;
}

bool support_bound_filter(int k_next, GeneratorId g) noexcept {
  const long long need = (1LL << (support(g) - 1)) - 1;
  return need <= k_next - 1;
}

SubsetMask permute_subset(const SubsetMask& s, std::span<const int> perm, Dimension d) {
  const int n = d.value();
  SubsetMask out(s.bit_count());
  for (GeneratorId g : s.ids()) {
    GeneratorId h = 0;
    for (int i = 0; i < n; ++i) {
      h |= static_cast<GeneratorId>(coord_of(g, perm[i], n)) << (n - 1 - i);
    }
    out.insert(h);
  }
  return out;
}

std::vector<int> sorting_permutation(const Point& p) {
  std::vector<int> perm(static_cast<std::size_t>(p.dim()));
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return p[a] < p[b]; });
  return perm;
}

CanonicalVertex canonicalize(const SubsetMask& s, Dimension d) {
  const Point p = point_of(s, d);
  CanonicalVertex out;
  if (p.is_nondecreasing()) {
    out.subset = s;
    out.point = p;
  } else {
    const auto perm = sorting_permutation(p);
    out.subset = permute_subset(s, perm, d);
    out.point = point_of(out.subset, d);
  }
  out.orbit_size = orbit_size(out.point, d);
  return out;
}

std::uint64_t orbit_size(const Point& p, Dimension d) {
  const int n = d.value();
  std::array<int, kMaxDim> v{};
  for (int i = 0; i < n; ++i) v[i] = p[i];
  std::sort(v.begin(), v.begin() + n);
  std::uint64_t orbit = 1;  // multinomial n! / prod(run!), built incrementally
  int run = 0;
  for (int i = 0; i < n; ++i) {
    run = (i > 0 && v[i] == v[i - 1]) ? run + 1 : 1;
    orbit = orbit * static_cast<std::uint64_t>(i + 1) / static_cast<std::uint64_t>(run);
  }
  return 2 * orbit;
}

bool passes_filters(const FilterChain& chain, const SubsetMask& s, const Point& p, GeneratorId g,
                    int k_next, const SubmaskTable& table) {
  const Dimension d = table.dimension();
  const bool below_half = k_next < static_cast<int>(d.half());
  if (chain.ones && !filter_ones(k_next, d, g)) return false;
  if (chain.complement && below_half && !filter_complement(s, g, d)) return false;
  if (chain.sorted_extension && !filter_sorted_extension(p, g, d)) return false;
  if (chain.support_bound && !support_bound_filter(k_next, g)) return false;
  if (chain.oracle && !oracle_O(s, g, table)) return false;
  return true;
}

}  // namespace ww::comb
