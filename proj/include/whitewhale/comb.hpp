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

// Combinatorial pruning for the White Whale and orbit bookkeeping under
// coordinate permutations combined with central symmetry.
//
// All the filters below are necessary conditions: returning false proves
// that p(S + g) is not a (canonical, new) vertex, returning true proves
// nothing. The engine applies them cheapest first and only calls the LP on
// survivors.

#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "whitewhale/core.hpp"
#include "whitewhale/lp.hpp"

namespace ww::comb {

// table[g] = all non-zero h with h & g == h, i.e. the generators dominated
// coordinatewise by g. Built once per run, then shared read-only.
class SubmaskTable {
 public:
  explicit SubmaskTable(Dimension d);

  Dimension dimension() const noexcept { return d_; }
  const SubsetMask& operator[](GeneratorId g) const { return table_[g - 1]; }

 private:
  Dimension d_;
  std::vector<SubsetMask> table_;
};

struct CanonicalVertex {
  SubsetMask subset;
  Point point;
  std::uint64_t orbit_size = 0;
  // Primitive integer certificate; empty unless certificates are retained.
  lp::IntVector certificate;

  friend bool operator==(const CanonicalVertex& a, const CanonicalVertex& b) {
    return a.subset == b.subset && a.point == b.point && a.orbit_size == b.orbit_size;
  }
};

// Number of non-zero coordinates of g.
inline int support(GeneratorId g) noexcept { return std::popcount(g); }

// |S<g>| = number of members of S dominated by g.
std::size_t restricted_count(const SubsetMask& s, GeneratorId g, const SubmaskTable& table);

// For a vertex S and g outside S: false certifies that S + g is not a vertex,
// because S<g> must hold exactly one generator from each of the
// 2^(sigma(g)-1) - 1 pairs {h, g - h}.
bool oracle_O(const SubsetMask& s, GeneratorId g, const SubmaskTable& table);

// The all-ones generator can only belong to a vertex of at least 2^(d-1)
// generators. Returns false (reject) iff g is all-ones and k_next < 2^(d-1).
bool filter_ones(int k_next, Dimension d, GeneratorId g) noexcept;

// Below the halfway layer a vertex never holds both h and 1 - h, since
// together they could be traded for the all-ones generator. Returns false
// iff (1 - g) is in S. Meaningful only when |S| + 1 < 2^(d-1).
bool filter_complement(const SubsetMask& s, GeneratorId g, Dimension d) noexcept;

// Inside every block of tied coordinates of the canonical point p, only
// generators that are nondecreasing on the block are tried; any other one
// has a sorted sibling producing the same canonical child.
bool filter_sorted_extension(const Point& p, GeneratorId g, Dimension d) noexcept;

// oracle_O can only pass when 2^(sigma(g)-1) - 1 <= k_next - 1.
bool support_bound_filter(int k_next, GeneratorId g) noexcept;

// Applies a coordinate permutation: coordinate i of every image generator is
// coordinate perm[i] of the original one.
SubsetMask permute_subset(const SubsetMask& s, std::span<const int> perm, Dimension d);

// Stable permutation sorting p into nondecreasing order (perm[i] is the old
// index of the coordinate landing at position i).
std::vector<int> sorting_permutation(const Point& p);

// Canonical representative of a vertex subset: the permuted subset whose
// point is nondecreasing. Requires S to be a vertex, whose decomposition is
// unique; then every sorting permutation yields the same subset.
CanonicalVertex canonicalize(const SubsetMask& s, Dimension d);

// 2 d! / prod(mult_v!) where mult_v counts the coordinates equal to v. The
// factor 2 accounts for central symmetry, valid for layers below 2^(d-1).
std::uint64_t orbit_size(const Point& p, Dimension d);

// Which filters the engine applies; all on by default. The LP is always the
// final word.
struct FilterChain {
  bool ones = true;
  bool complement = true;
  bool sorted_extension = true;
  bool support_bound = true;
  bool oracle = true;

  static FilterChain none() { return {false, false, false, false, false}; }
  friend bool operator==(const FilterChain&, const FilterChain&) = default;
};

// Runs the enabled filters in cost order for extending canonical vertex
// (s, p) at layer k_next - 1 by g. True means "worth an LP call".
bool passes_filters(const FilterChain& chain, const SubsetMask& s, const Point& p, GeneratorId g,
                    int k_next, const SubmaskTable& table);

}  // namespace ww::comb
