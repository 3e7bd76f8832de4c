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

// Exact vertex test for zonotopes.
//
// p(S) is a vertex of the zonotope generated by G iff some c satisfies
//
//     c.g >= 1  for g in S,      c.g <= -1  for g in G \ S.
//
// Writing a_g = +g for g in S and -g otherwise, this is a.c >= 1 for all rows,
// which by Farkas' lemma is infeasible iff y >= 0, sum(y) = 1, sum(y_g a_g) = 0
// has a solution. The solver runs phase one of the simplex method on that
// (dim + 1)-row system with a fraction-free integer tableau and Bland's rule;
// when phase one ends with a positive optimum, its dual multipliers give c.
// Every tableau entry is a minor of the input matrix, so for 0/1 generators
// 64-bit storage with 128-bit products never overflows; larger inputs fall
// back to arbitrary precision automatically.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "whitewhale/core.hpp"

namespace ww::lp {

using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<std::int64_t>;
using IntVectors = std::vector<IntVector>;

struct Certificate {
  std::vector<Rational> c;

  static Certificate from_integers(std::span<const std::int64_t> values);
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

enum class Feasibility { kFeasible, kInfeasible };

struct FeasibilityResult {
  Feasibility status = Feasibility::kInfeasible;
  std::optional<Certificate> certificate;  // present iff feasible

  bool feasible() const noexcept { return status == Feasibility::kFeasible; }
};

// Raw solver outcome. On success `certificate` is a primitive integer vector
// with rows.c >= 1; otherwise `farkas` holds y >= 0 (over the common
// denominator `farkas_scale`) with sum(y_j a_j) = 0, unless it overflowed
// 64 bits, in which case `farkas` is empty.
struct SeparationOutcome {
  bool feasible = false;
  IntVector certificate;
  // Set instead of `certificate` when an entry does not fit in 64 bits.
  std::vector<boost::multiprecision::cpp_int> wide_certificate;
  IntVector farkas;
  std::int64_t farkas_scale = 0;
  int pivots = 0;
};

// Decides a_j . c >= 1 for every row j of `rows` (row-major, rows x cols).
// Holds no state between calls.
class SeparationSolver {
 public:
  SeparationOutcome solve(std::span<const std::int64_t> rows, int row_count, int col_count);
};

// Reusable oracle for the White Whale, holding the precomputed generator
// coordinates and a solver workspace. Not thread-safe; keep one per worker.
// Every feasible verdict is re-checked against its certificate with integer
// arithmetic; a failure throws ConsistencyError.
class VertexOracle {
 public:
  explicit VertexOracle(Dimension d);

  Dimension dimension() const noexcept { return d_; }
  // True iff p(S) is a vertex of H(d). When `certificate` is non-null and the
  // answer is true, it receives a primitive integer certificate.
  bool is_vertex(const SubsetMask& s, IntVector* certificate = nullptr);
  std::uint64_t calls() const noexcept { return calls_; }

 private:
  Dimension d_;
  std::vector<std::int64_t> rows_;
  SeparationSolver solver_;
  std::uint64_t calls_ = 0;
};

// Same as VertexOracle for an arbitrary integer generator list. Bit j-1 of a
// mask refers to generators[j-1].
class GenericVertexOracle {
 public:
  // Throws DomainError on an empty list, ragged vectors or a zero vector.
  explicit GenericVertexOracle(IntVectors generators);

  const IntVectors& generators() const noexcept { return gens_; }
  int dim() const noexcept { return dim_; }
  bool is_vertex(const SubsetMask& s, Certificate* certificate = nullptr);

 private:
  IntVectors gens_;
  int dim_ = 0;
  std::vector<std::int64_t> rows_;
  SeparationSolver solver_;
};

// Vertex test over the generator ids `generators` of G_d.
FeasibilityResult vertex_feasible(const SubsetMask& s, std::span<const GeneratorId> generators,
                                  Dimension d);
// Vertex test over all of G_d.
FeasibilityResult vertex_feasible(const SubsetMask& s, Dimension d);
// Vertex test over an arbitrary integer generator list.
FeasibilityResult vertex_feasible(const SubsetMask& s, const IntVectors& generators);

// c.g >= 1 for g in S and c.g <= -1 for the other generators of G_d, exactly.
bool verify_certificate(const Certificate& c, const SubsetMask& s, Dimension d);
bool verify_certificate(const Certificate& c, const SubsetMask& s, const IntVectors& generators);
// Integer fast path used by the oracles.
bool verify_integer_certificate(std::span<const std::int64_t> c, const SubsetMask& s, Dimension d);

// All generators of G_d as coordinate vectors, in id order.
IntVectors whale_generators(Dimension d);

}  // namespace ww::lp
