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

#include "whitewhale/core.hpp"

#include <algorithm>

#include "whitewhale/errors.hpp"

namespace ww {

Dimension::Dimension(int d) : d_(d) {
  if (d < kMinDim || d > kMaxDim) {
    throw DomainError("dimension " + std::to_string(d) + " outside [" +
                      std::to_string(kMinDim) + ", " + std::to_string(kMaxDim) + "]");
  }
}

SubsetMask::SubsetMask(std::size_t bit_count)
    : bits_(bit_count), words_((bit_count + 63) / 64, 0) {}

SubsetMask SubsetMask::full(std::size_t bit_count) {
  SubsetMask s(bit_count);
  for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~std::uint64_t{0};
  if (const std::size_t tail = bit_count & 63; tail != 0) {
    s.words_.back() = (std::uint64_t{1} << tail) - 1;
  }
  return s;
}

SubsetMask SubsetMask::of(std::size_t bit_count, std::span<const GeneratorId> ids) {
  SubsetMask s(bit_count);
  for (GeneratorId j : ids) {
    if (j == 0 || j > bit_count) {
      throw DomainError("generator id " + std::to_string(j) + " outside [1, " +
                        std::to_string(bit_count) + "]");
    }
    s.insert(j);
  }
  return s;
}

SubsetMask SubsetMask::of(std::size_t bit_count, std::initializer_list<GeneratorId> ids) {
  return of(bit_count, std::span<const GeneratorId>(ids.begin(), ids.size()));
}

std::size_t SubsetMask::count() const noexcept {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t SubsetMask::intersect_count(const SubsetMask& other) const noexcept {
  std::size_t n = 0;
  const std::size_t words = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < words; ++w) {
    n += static_cast<std::size_t>(std::popcount(words_[w] & other.words_[w]));
  }
  return n;
}

bool SubsetMask::is_subset_of(const SubsetMask& other) const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

SubsetMask SubsetMask::complement() const {
  SubsetMask out = full(bits_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] &= ~words_[w];
  return out;
}

std::vector<GeneratorId> SubsetMask::ids() const {
  std::vector<GeneratorId> out;
  out.reserve(count());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word != 0) {
      const int b = std::countr_zero(word);
      out.push_back(static_cast<GeneratorId>(w * 64 + static_cast<std::size_t>(b) + 1));
      word &= word - 1;
    }
  }
  return out;
}

Point::Point(Dimension d, std::initializer_list<int> coords) : dim_(d.value()) {
  if (coords.size() != static_cast<std::size_t>(dim_)) {
    throw DomainError("point needs exactly " + std::to_string(dim_) + " coordinates");
  }
  int i = 0;
  for (int c : coords) {
    if (c < 0 || c > 0xFFFF) throw DomainError("point coordinate out of range");
    c_[i++] = static_cast<Coord>(c);
  }
}

Point Point::from(Dimension d, std::span<const int> coords) {
  if (coords.size() != static_cast<std::size_t>(d.value())) {
    throw DomainError("point needs exactly " + std::to_string(d.value()) + " coordinates");
  }
  Point p(d);
  for (int i = 0; i < d.value(); ++i) {
    if (coords[i] < 0 || coords[i] > 0xFFFF) throw DomainError("point coordinate out of range");
    p.c_[i] = static_cast<Coord>(coords[i]);
  }
  return p;
}

bool Point::is_nondecreasing() const noexcept {
  for (int i = 0; i + 1 < dim_; ++i) {
    if (c_[i] > c_[i + 1]) return false;
  }
  return true;
}

std::string Point::to_string(char sep) const {
  std::string out;
  for (int i = 0; i < dim_; ++i) {
    if (i != 0) out.push_back(sep);
    out += std::to_string(c_[i]);
  }
  return out;
}

std::size_t Point::hash() const noexcept {
  // FNV-1a over the used coordinates.
  std::uint64_t h = 1469598103934665603ULL;
  for (int i = 0; i < dim_; ++i) {
    h ^= c_[i];
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::vector<int> vector_of(GeneratorId g, Dimension d) {
  if (g < 1 || g > d.generator_count()) {
    throw DomainError("generator id " + std::to_string(g) + " outside [1, " +
                      std::to_string(d.generator_count()) + "]");
  }
  std::vector<int> v(static_cast<std::size_t>(d.value()));
  for (int i = 0; i < d.value(); ++i) v[i] = coord_of(g, i, d.value());
  return v;
}

GeneratorId id_of(std::span<const int> v) {
  if (v.empty() || v.size() > static_cast<std::size_t>(kMaxDim)) {
    throw DomainError("generator vector has unsupported length");
  }
  GeneratorId g = 0;
  for (int c : v) {
    if (c != 0 && c != 1) throw DomainError("generator vector is not 0/1-valued");
    g = (g << 1) | static_cast<GeneratorId>(c);
  }
  if (g == 0) throw DomainError("zero vector is not a generator");
  return g;
}

Point point_of(const SubsetMask& s, Dimension d) {
  Point p(d);
  for (GeneratorId g : s.ids()) p = point_increment(p, g, d);
  return p;
}

Point point_increment(const Point& p, GeneratorId g, Dimension d) {
  Point out = p;
  const int n = d.value();
  for (int i = 0; i < n; ++i) out[i] = static_cast<Point::Coord>(out[i] + coord_of(g, i, n));
  return out;
}

SubsetMask antipode(const SubsetMask& s) { return s.complement(); }

SubsetMask full_mask(Dimension d) { return SubsetMask::full(d.generator_count()); }

SubsetMask empty_mask(Dimension d) { return SubsetMask(d.generator_count()); }

}  // namespace ww
