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

// Core value types for the White Whale H(d): the zonotope generated by the
// 2^d - 1 non-zero 0/1 vectors of dimension d.
//
// A generator is identified with an integer in [1, 2^d - 1] whose binary
// digits are its coordinates. Coordinate 1 is the most significant bit and
// coordinate d the least significant one, so (0,...,0,1) is 1, (0,...,0,1,1)
// is 3 and (1,...,1) is 2^d - 1.

#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ww {

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 16;

class Dimension {
 public:
  // Throws DomainError unless kMinDim <= d <= kMaxDim.
  explicit Dimension(int d);

  constexpr int value() const noexcept { return d_; }
  // m = 2^d - 1, the number of generators.
  constexpr std::uint32_t generator_count() const noexcept {
    return (std::uint32_t{1} << d_) - 1;
  }
  // 2^(d-1): the half-size of the hypercube and the coordinate bound.
  constexpr std::uint32_t half() const noexcept {
    return std::uint32_t{1} << (d_ - 1);
  }
  // The all-ones generator.
  constexpr std::uint32_t ones() const noexcept { return generator_count(); }
  // Last layer built by the orbitwise generator: 2^(d-1) - 1.
  constexpr int last_layer() const noexcept { return static_cast<int>(half()) - 1; }

  friend constexpr bool operator==(Dimension, Dimension) = default;

 private:
  int d_;
};

using GeneratorId = std::uint32_t;

// Bitset over generator ids: bit (j - 1) is set iff generator j is in S.
// The width is chosen at construction, so one binary handles every d.
class SubsetMask {
 public:
  SubsetMask() = default;
  explicit SubsetMask(std::size_t bit_count);

  static SubsetMask full(std::size_t bit_count);
  static SubsetMask of(std::size_t bit_count, std::span<const GeneratorId> ids);
  static SubsetMask of(std::size_t bit_count, std::initializer_list<GeneratorId> ids);

  std::size_t bit_count() const noexcept { return bits_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool contains(GeneratorId j) const noexcept {
    const std::size_t b = j - 1;
    return (words_[b >> 6] >> (b & 63)) & 1U;
  }
  void insert(GeneratorId j) noexcept {
    const std::size_t b = j - 1;
    words_[b >> 6] |= std::uint64_t{1} << (b & 63);
  }
  void erase(GeneratorId j) noexcept {
    const std::size_t b = j - 1;
    words_[b >> 6] &= ~(std::uint64_t{1} << (b & 63));
  }
  SubsetMask with(GeneratorId j) const {
    SubsetMask out = *this;
    out.insert(j);
    return out;
  }
  SubsetMask without(GeneratorId j) const {
    SubsetMask out = *this;
    out.erase(j);
    return out;
  }

  std::size_t count() const noexcept;
  // popcount(this AND other)
  std::size_t intersect_count(const SubsetMask& other) const noexcept;
  bool is_subset_of(const SubsetMask& other) const noexcept;
  SubsetMask complement() const;

  // Member ids in ascending order.
  std::vector<GeneratorId> ids() const;

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;
  friend auto operator<=>(const SubsetMask& a, const SubsetMask& b) {
    return a.words_ <=> b.words_;
  }

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

// A point of H(d): d non-negative coordinates, each at most 2^(d-1).
class Point {
 public:
  using Coord = std::uint16_t;

  Point() = default;
  explicit Point(Dimension d) : dim_(d.value()) {}
  Point(Dimension d, std::initializer_list<int> coords);
  static Point from(Dimension d, std::span<const int> coords);

  int dim() const noexcept { return dim_; }
  Coord operator[](int i) const noexcept { return c_[i]; }
  Coord& operator[](int i) noexcept { return c_[i]; }
  std::span<const Coord> coords() const noexcept { return {c_.data(), static_cast<std::size_t>(dim_)}; }

  bool is_nondecreasing() const noexcept;
  std::string to_string(char sep = ',') const;

  friend bool operator==(const Point&, const Point&) = default;
  // Lexicographic on coordinates; unused slots are zero.
  friend auto operator<=>(const Point& a, const Point& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    return a.c_ <=> b.c_;
  }

  std::size_t hash() const noexcept;

 private:
  int dim_ = 0;
  std::array<Coord, kMaxDim> c_{};
};

// 0/1 coordinate vector of generator g (coordinate 1 first).
std::vector<int> vector_of(GeneratorId g, Dimension d);
// Inverse of vector_of. Throws DomainError on a zero or non-0/1 vector.
GeneratorId id_of(std::span<const int> v);

// Coordinate i (0-based) of generator g.
inline constexpr int coord_of(GeneratorId g, int i, int d) noexcept {
  return static_cast<int>((g >> (d - 1 - i)) & 1U);
}

// p(S): sum of the generators in S. p(empty) is the origin.
Point point_of(const SubsetMask& s, Dimension d);
// p + g, the incremental form of point_of.
Point point_increment(const Point& p, GeneratorId g, Dimension d);
// G_d \ S.
SubsetMask antipode(const SubsetMask& s);
// Mask of all 2^d - 1 generators.
SubsetMask full_mask(Dimension d);
SubsetMask empty_mask(Dimension d);

}  // namespace ww

template <>
struct std::hash<ww::Point> {
  std::size_t operator()(const ww::Point& p) const noexcept { return p.hash(); }
};
