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

#include "whitewhale/lp.hpp"

#include <limits>
#include <numeric>
#include <string>

#include "whitewhale/errors.hpp"

namespace ww::lp {
namespace {

using BigInt = boost::multiprecision::cpp_int;

struct Overflow {};

template <class Int, class Wide>
Int narrow(const Wide& w) {
  if constexpr (std::is_same_v<Int, Wide>) {
    return w;
  } else {
    if (w > std::numeric_limits<Int>::max() || w < std::numeric_limits<Int>::min()) {
      throw Overflow{};
    }
    return static_cast<Int>(w);
  }
}

// Phase one on  [ A^T | I | b ]  with b = (0, ..., 0, 1), A^T having an extra
// all-ones row. Entries are stored scaled by the running determinant `det`.
// Returns the final tableau state through the references.
template <class Int, class Wide>
struct PhaseOne {
  int m;  // structural columns (one per generator)
  int n;  // dimension
  int rows;
  int cols;
  std::vector<Int> t;
  std::vector<int> basis;
  Int det = 1;
  int pivots = 0;

  PhaseOne(std::span<const std::int64_t> a, int row_count, int col_count)
      : m(row_count), n(col_count), rows(col_count + 2), cols(row_count + col_count + 2) {
    t.assign(static_cast<std::size_t>(rows) * cols, Int(0));
    basis.resize(static_cast<std::size_t>(n + 1));
    const int obj = n + 1;
    for (int j = 0; j < m; ++j) {
      Int colsum = 0;
      for (int i = 0; i < n; ++i) {
        const Int v = Int(a[static_cast<std::size_t>(j) * n + i]);
        at(i, j) = v;
        colsum += v;
      }
      at(n, j) = 1;
      colsum += 1;
      at(obj, j) = -colsum;
    }
    for (int i = 0; i <= n; ++i) {
      at(i, m + i) = 1;
      basis[i] = m + i;
    }
    at(n, cols - 1) = 1;
    at(obj, cols - 1) = -1;
  }

  Int& at(int r, int c) { return t[static_cast<std::size_t>(r) * cols + c]; }

  void pivot(int r, int s) {
    const Int piv = at(r, s);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Int f = at(i, s);
      if (f == 0) {
        // (t_ij * piv) / det, exact.
        for (int j = 0; j < cols; ++j) {
          if (at(i, j) != 0) at(i, j) = narrow<Int>(Wide(at(i, j)) * Wide(piv) / Wide(det));
        }
        continue;
      }
      for (int j = 0; j < cols; ++j) {
        const Wide num = Wide(at(i, j)) * Wide(piv) - Wide(f) * Wide(at(r, j));
        at(i, j) = narrow<Int>(num / Wide(det));
      }
    }
    det = piv;
    basis[r] = s;
    ++pivots;
  }

  // Runs to optimality under Bland's rule.
  void run() {
    const int obj = n + 1;
    const int rhs = cols - 1;
    for (;;) {
      int s = -1;
      for (int j = 0; j < rhs; ++j) {
        if (at(obj, j) < 0) {
          s = j;
          break;
        }
      }
      if (s < 0) return;
      int r = -1;
      for (int i = 0; i <= n; ++i) {
        if (at(i, s) <= 0) continue;
        if (r < 0) {
          r = i;
          continue;
        }
        // rhs_i / t_is  vs  rhs_r / t_rs
        const Wide lhs = Wide(at(i, rhs)) * Wide(at(r, s));
        const Wide cur = Wide(at(r, rhs)) * Wide(at(i, s));
        if (lhs < cur || (lhs == cur && basis[i] < basis[r])) r = i;
      }
      if (r < 0) throw ConsistencyError("phase-one simplex reported an unbounded direction");
      pivot(r, s);
    }
  }
};

template <class Int>
std::int64_t to_i64(const Int& v) {
  if constexpr (std::is_same_v<Int, std::int64_t>) {
    return v;
  } else {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
      throw std::overflow_error("certificate entry exceeds 64 bits");
    }
    return static_cast<std::int64_t>(v);
  }
}

template <class Int, class Wide>
SeparationOutcome solve_with(std::span<const std::int64_t> rows, int row_count, int col_count) {
  PhaseOne<Int, Wide> p(rows, row_count, col_count);
  p.run();
  SeparationOutcome out;
  out.pivots = p.pivots;
  const int obj = col_count + 1;
  const int rhs = p.cols - 1;
  const int m = row_count;
  const int n = col_count;
  if (p.at(obj, rhs) == 0) {
    out.feasible = false;
    try {
      out.farkas.assign(static_cast<std::size_t>(m), 0);
      for (int i = 0; i <= n; ++i) {
        if (p.basis[i] < m) out.farkas[p.basis[i]] = to_i64(p.at(i, rhs));
      }
      out.farkas_scale = to_i64(p.det);
    } catch (const std::overflow_error&) {
      // Witness too wide for the 64-bit report; the verdict stands.
      out.farkas.clear();
      out.farkas_scale = 0;
    }
    return out;
  }
  // Dual multiplier of row i is (det - reduced cost of artificial i) / det;
  // c is the negated multiplier vector of the first n rows, scaled.
  std::vector<Int> c(static_cast<std::size_t>(n));
  Int g = 0;
  for (int i = 0; i < n; ++i) {
    c[i] = p.at(obj, m + i) - p.det;
    Int a = c[i] < 0 ? Int(-c[i]) : c[i];
    if constexpr (std::is_same_v<Int, std::int64_t>) {
      g = std::gcd(g, a);
    } else {
      g = boost::multiprecision::gcd(g, a);
    }
  }
  if (g == 0) throw ConsistencyError("phase-one simplex produced a zero certificate");
  out.feasible = true;
  for (auto& v : c) v /= g;
  if constexpr (std::is_same_v<Int, std::int64_t>) {
    out.certificate.assign(c.begin(), c.end());
  } else {
    try {
      out.certificate.resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) out.certificate[i] = to_i64(c[i]);
    } catch (const std::overflow_error&) {
      out.certificate.clear();
      out.wide_certificate.assign(c.begin(), c.end());
    }
  }
  return out;
}

}  // namespace

Certificate Certificate::from_integers(std::span<const std::int64_t> values) {
  Certificate out;
  out.c.reserve(values.size());
  for (std::int64_t v : values) out.c.emplace_back(v);
  return out;
}

SeparationOutcome SeparationSolver::solve(std::span<const std::int64_t> rows, int row_count,
                                          int col_count) {
  if (row_count <= 0 || col_count <= 0) throw DomainError("empty separation system");
  try {
    return solve_with<std::int64_t, __int128>(rows, row_count, col_count);
  } catch (const Overflow&) {
    return solve_with<BigInt, BigInt>(rows, row_count, col_count);
  }
}

VertexOracle::VertexOracle(Dimension d) : d_(d) {
  rows_.resize(static_cast<std::size_t>(d.generator_count()) * d.value());
}

bool VertexOracle::is_vertex(const SubsetMask& s, IntVector* certificate) {
  ++calls_;
  const int n = d_.value();
  const auto m = static_cast<int>(d_.generator_count());
  for (int j = 0; j < m; ++j) {
    const auto g = static_cast<GeneratorId>(j + 1);
    const std::int64_t sign = s.contains(g) ? 1 : -1;
    for (int i = 0; i < n; ++i) {
      rows_[static_cast<std::size_t>(j) * n + i] = sign * coord_of(g, i, n);
    }
  }
  SeparationOutcome r = solver_.solve(rows_, m, n);
  if (r.feasible) {
    if (!verify_integer_certificate(r.certificate, s, d_)) {
      throw ConsistencyError("vertex oracle produced a certificate that does not verify");
    }
    if (certificate != nullptr) *certificate = std::move(r.certificate);
  }
  return r.feasible;
}

GenericVertexOracle::GenericVertexOracle(IntVectors generators) : gens_(std::move(generators)) {
  if (gens_.empty()) throw DomainError("empty generator list");
  dim_ = static_cast<int>(gens_.front().size());
  if (dim_ == 0) throw DomainError("zero-dimensional generators");
  for (const auto& g : gens_) {
    if (static_cast<int>(g.size()) != dim_) throw DomainError("generators of mixed dimension");
    bool nonzero = false;
    for (std::int64_t v : g) nonzero = nonzero || v != 0;
    if (!nonzero) throw DomainError("zero generator");
  }
  rows_.resize(gens_.size() * static_cast<std::size_t>(dim_));
}

bool GenericVertexOracle::is_vertex(const SubsetMask& s, Certificate* certificate) {
  const auto m = static_cast<int>(gens_.size());
  for (int j = 0; j < m; ++j) {
    const std::int64_t sign = s.contains(static_cast<GeneratorId>(j + 1)) ? 1 : -1;
    for (int i = 0; i < dim_; ++i) rows_[static_cast<std::size_t>(j) * dim_ + i] = sign * gens_[j][i];
  }
  SeparationOutcome r = solver_.solve(rows_, m, dim_);
  if (r.feasible) {
    Certificate c;
    if (r.wide_certificate.empty()) {
      c = Certificate::from_integers(r.certificate);
    } else {
      for (const auto& v : r.wide_certificate) c.c.emplace_back(v);
    }
    if (!verify_certificate(c, s, gens_)) {
      throw ConsistencyError("vertex oracle produced a certificate that does not verify");
    }
    if (certificate != nullptr) *certificate = std::move(c);
  }
  return r.feasible;
}

IntVectors whale_generators(Dimension d) {
  IntVectors out;
  out.reserve(d.generator_count());
  for (GeneratorId g = 1; g <= d.generator_count(); ++g) {
    const auto v = vector_of(g, d);
    out.emplace_back(v.begin(), v.end());
  }
  return out;
}

FeasibilityResult vertex_feasible(const SubsetMask& s, std::span<const GeneratorId> generators,
                                  Dimension d) {
  if (generators.empty()) throw DomainError("empty generator list");
  IntVectors gens;
  gens.reserve(generators.size());
  SubsetMask local(generators.size());
  for (std::size_t j = 0; j < generators.size(); ++j) {
    const auto v = vector_of(generators[j], d);
    gens.emplace_back(v.begin(), v.end());
    if (s.contains(generators[j])) local.insert(static_cast<GeneratorId>(j + 1));
  }
  return vertex_feasible(local, gens);
}

FeasibilityResult vertex_feasible(const SubsetMask& s, Dimension d) {
  if (s.bit_count() != d.generator_count()) throw DomainError("mask width does not match dimension");
  VertexOracle oracle(d);
  IntVector c;
  FeasibilityResult out;
  if (oracle.is_vertex(s, &c)) {
    out.status = Feasibility::kFeasible;
    out.certificate = Certificate::from_integers(c);
  }
  return out;
}

FeasibilityResult vertex_feasible(const SubsetMask& s, const IntVectors& generators) {
  GenericVertexOracle oracle(generators);
  if (s.bit_count() != generators.size()) throw DomainError("mask width does not match generator count");
  Certificate c;
  FeasibilityResult out;
  if (oracle.is_vertex(s, &c)) {
    out.status = Feasibility::kFeasible;
    out.certificate = std::move(c);
  }
  return out;
}

bool verify_certificate(const Certificate& c, const SubsetMask& s, const IntVectors& generators) {
  if (s.bit_count() != generators.size()) return false;
  for (std::size_t j = 0; j < generators.size(); ++j) {
    const auto& g = generators[j];
    if (g.size() != c.c.size()) return false;
    Rational dot = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] != 0) dot += c.c[i] * g[i];
    }
    const bool inside = s.contains(static_cast<GeneratorId>(j + 1));
    if (inside ? dot < 1 : dot > -1) return false;
  }
  return true;
}

bool verify_certificate(const Certificate& c, const SubsetMask& s, Dimension d) {
  if (static_cast<int>(c.c.size()) != d.value() || s.bit_count() != d.generator_count()) return false;
  return verify_certificate(c, s, whale_generators(d));
}

bool verify_integer_certificate(std::span<const std::int64_t> c, const SubsetMask& s, Dimension d) {
  const int n = d.value();
  if (static_cast<int>(c.size()) != n || s.bit_count() != d.generator_count()) return false;
  for (GeneratorId g = 1; g <= d.generator_count(); ++g) {
    __int128 dot = 0;
    for (int i = 0; i < n; ++i) {
      if (coord_of(g, i, n) != 0) dot += c[i];
    }
    if (s.contains(g) ? dot < 1 : dot > -1) return false;
  }
  return true;
}

}  // namespace ww::lp
