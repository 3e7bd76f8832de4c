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

// Degrees, edge counts and the U / W vertex families.
//
// The edges of the White Whale are counted, never listed. Two vertices are
// adjacent iff they differ by a single generator, so the degree of p(S)
// splits into
//   below: g in S with S - g a vertex (edges into layer |S| - 1),
//   above: g not in S with S + g a vertex (edges into layer |S| + 1).
// Each edge between layers k - 1 and k is counted once from below by its
// upper end, and each edge between the two middle layers is counted once
// per endpoint there, which gives
//   e(d) = sum_{k <= h} sum_S |O| below(S)  +  sum_{S in layer h} |O| / 2,
// with h = 2^(d-1) - 1.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "whitewhale/comb.hpp"
#include "whitewhale/core.hpp"
#include "whitewhale/engine.hpp"
#include "whitewhale/lp.hpp"

namespace ww::analytics {

// Degree computations for one dimension. Not thread safe; use one per
// thread.
class DegreeCalculator {
 public:
  // With use_filters the combinatorial necessary conditions discard
  // candidates before the LP.
  explicit DegreeCalculator(Dimension d, bool use_filters = true);

  // Number of g in S such that S - g is a vertex. S must be a vertex.
  int below(const SubsetMask& s);
  // Number of g outside S such that S + g is a vertex. S must be a vertex.
  int above(const SubsetMask& s);

  std::uint64_t lp_calls() const noexcept { return oracle_.calls(); }

 private:
  Dimension d_;
  bool filters_;
  comb::SubmaskTable table_;
  lp::VertexOracle oracle_;
};

int degree_below(const SubsetMask& s, Dimension d);
int degree_above(const SubsetMask& s, Dimension d);

struct DegreeRecord {
  comb::CanonicalVertex canonical;
  int deg_below = 0;
  int deg_above = 0;
  int degree = 0;
};

struct DegreeLayer {
  int k = 0;
  std::vector<DegreeRecord> rows;
};

// Degrees of every entry, rows in layer order. Without with_above only
// deg_below is filled in (enough for the edge count).
DegreeLayer compute_degrees(const engine::LayerRecord& layer, int workers = 1,
                            bool use_filters = true, bool with_above = true);
// Serial, LP only.
DegreeLayer compute_degrees_reference(const engine::LayerRecord& layer);

struct EdgeCountReport {
  Dimension d;
  struct Term {
    int k;
    std::uint64_t weighted_below;  // sum of |O| * below over the layer
  };
  std::vector<Term> per_layer;
  std::uint64_t middle_term = 0;  // sum of |O| / 2 over layer 2^(d-1) - 1
  std::uint64_t e_total = 0;
};

// Needs every layer 1 .. 2^(d-1) - 1 (layer 0 is optional). Throws
// DomainError on a missing layer and ConsistencyError on an odd orbit in the
// middle layer.
EdgeCountReport count_edges(Dimension d, std::span<const DegreeLayer> layers);

// U_d^k: generators with last coordinate 1 and at most k non-zero
// coordinates. 1 <= k <= d - 1.
SubsetMask family_U(Dimension d, int k);
// W_d^k: generators supported on the last k coordinates, ids 1 .. 2^k - 1.
// 1 <= k <= d.
SubsetMask family_W(Dimension d, int k);

// Closed-form separating vectors for U_d^k, for U_d^k minus the generator
// 2^k - 1 (support k) and for U_d^k plus the generator 2^(k+1) - 1
// (support k + 1).
struct FamilyCertificates {
  SubsetMask own_subset, below_subset, above_subset;
  lp::IntVector own, below, above;
};
FamilyCertificates family_U_certificates(Dimension d, int k);

struct FamilyDegrees {
  int below = 0;
  int above = 0;
  int degree = 0;
  friend bool operator==(const FamilyDegrees&, const FamilyDegrees&) = default;
};

// (C(d-1, k-1), C(d-1, k), C(d, k)).
FamilyDegrees expected_family_degrees(Dimension d, int k);
// Degrees of p(U_d^k) by LP. Throws ConsistencyError naming d and k when
// they differ from expected_family_degrees.
FamilyDegrees family_degree_check(Dimension d, int k);

std::uint64_t binomial(int n, int k);

struct SizeRatios {
  double average_degree;  // 2 e / a
  double orbit_fill;      // a / (2 d! o), mean orbit size over the largest possible
};
SizeRatios size_ratios(Dimension d, std::uint64_t a, std::uint64_t e, std::uint64_t o);

// Every vertex subset by running the LP on all 2^|G| subsets. Refuses
// (DomainError) when |G| > 20.
std::vector<SubsetMask> brute_force_vertices(const lp::IntVectors& generators);
std::vector<SubsetMask> brute_force_vertices(Dimension d);

// All members of the orbit of a canonical vertex under coordinate
// permutations and the antipode, sorted. Explicit group action, d! images.
std::vector<SubsetMask> orbit_members(const comb::CanonicalVertex& v, Dimension d);

// log2 of the two sides of
//   (d+1)/2^(d+1) 2^(d^2 (1 - 10/ln d)) <= a(d) <= (d+4)/2^(3(d-1)) 2^(d^2).
struct VertexBounds {
  double log2_lower;
  double log2_a;
  double log2_upper;
  bool holds() const noexcept { return log2_lower <= log2_a && log2_a <= log2_upper; }
};
VertexBounds vertex_bounds(Dimension d, std::uint64_t a);

}  // namespace ww::analytics
