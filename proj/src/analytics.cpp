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

#include "whitewhale/analytics.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

#include "whitewhale/errors.hpp"

namespace ww::analytics {

DegreeCalculator::DegreeCalculator(Dimension d, bool use_filters)
    : d_(d), filters_(use_filters), table_(d), oracle_(d) {}

int DegreeCalculator::below(const SubsetMask& s) {
  int count = 0;
  SubsetMask parent = s;
  for (GeneratorId g : s.ids()) {
    parent.erase(g);
    // If S - g is a vertex then adding g back has to pass oracle_O.
    if (!filters_ || comb::oracle_O(parent, g, table_)) {
      if (oracle_.is_vertex(parent)) ++count;
    }
    parent.insert(g);
  }
  return count;
}

int DegreeCalculator::above(const SubsetMask& s) {
  const int k_next = static_cast<int>(s.count()) + 1;
  const bool below_half = k_next < static_cast<int>(d_.half());
  int count = 0;
  SubsetMask child = s;
  for (GeneratorId g = 1; g <= d_.generator_count(); ++g) {
    if (s.contains(g)) continue;
    if (filters_) {
      if (!comb::filter_ones(k_next, d_, g)) continue;
      if (below_half && !comb::filter_complement(s, g, d_)) continue;
      if (!comb::oracle_O(s, g, table_)) continue;
    }
    child.insert(g);
    if (oracle_.is_vertex(child)) ++count;
    child.erase(g);
  }
  return count;
}

int degree_below(const SubsetMask& s, Dimension d) { return DegreeCalculator(d).below(s); }
int degree_above(const SubsetMask& s, Dimension d) { return DegreeCalculator(d).above(s); }

DegreeLayer compute_degrees(const engine::LayerRecord& layer, int workers, bool use_filters,
                            bool with_above) {
  DegreeLayer out{layer.k, std::vector<DegreeRecord>(layer.entries.size())};
  const auto n = static_cast<long>(layer.entries.size());
  std::exception_ptr failure;
#pragma omp parallel num_threads(std::max(1, workers))
  {
    DegreeCalculator calc(layer.d, use_filters);
#pragma omp for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) {
      try {
        const auto& e = layer.entries[static_cast<std::size_t>(i)];
        auto& row = out.rows[static_cast<std::size_t>(i)];
        row.canonical = e;
        row.deg_below = calc.below(e.subset);
        if (with_above) row.deg_above = calc.above(e.subset);
        row.degree = row.deg_below + row.deg_above;
      } catch (...) {
#pragma omp critical(ww_degree_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

DegreeLayer compute_degrees_reference(const engine::LayerRecord& layer) {
  DegreeCalculator calc(layer.d, false);
  DegreeLayer out{layer.k, {}};
  for (const auto& e : layer.entries) {
    DegreeRecord row{e, calc.below(e.subset), calc.above(e.subset), 0};
    row.degree = row.deg_below + row.deg_above;
    out.rows.push_back(std::move(row));
  }
  return out;
}

EdgeCountReport count_edges(Dimension d, std::span<const DegreeLayer> layers) {
  const int h = d.last_layer();
  std::vector<const DegreeLayer*> by_k(static_cast<std::size_t>(h + 1), nullptr);
  for (const auto& layer : layers) {
    if (layer.k < 0 || layer.k > h) throw DomainError("layer index out of range");
    by_k[static_cast<std::size_t>(layer.k)] = &layer;
  }
  EdgeCountReport report{d, {}, 0, 0};
  for (int k = 1; k <= h; ++k) {
    const DegreeLayer* layer = by_k[static_cast<std::size_t>(k)];
    if (layer == nullptr) throw DomainError("missing layer " + std::to_string(k));
    std::uint64_t sum = 0;
    for (const auto& row : layer->rows) {
      sum += row.canonical.orbit_size * static_cast<std::uint64_t>(row.deg_below);
    }
    report.per_layer.push_back({k, sum});
    report.e_total += sum;
  }
  for (const auto& row : by_k[static_cast<std::size_t>(h)]->rows) {
    if (row.canonical.orbit_size % 2 != 0) {
      throw ConsistencyError("odd orbit size at (" + row.canonical.point.to_string() + ")");
    }
    report.middle_term += row.canonical.orbit_size / 2;
  }
  report.e_total += report.middle_term;
  return report;
}

SubsetMask family_U(Dimension d, int k) {
  if (k < 1 || k > d.value() - 1) throw DomainError("U family needs 1 <= k <= d - 1");
  SubsetMask s(d.generator_count());
  for (GeneratorId g = 1; g <= d.generator_count(); g += 2) {
    if (comb::support(g) <= k) s.insert(g);
  }
  return s;
}

SubsetMask family_W(Dimension d, int k) {
  if (k < 1 || k > d.value()) throw DomainError("W family needs 1 <= k <= d");
  SubsetMask s(d.generator_count());
  for (GeneratorId g = 1; g < (GeneratorId{1} << k); ++g) s.insert(g);
  return s;
}

FamilyCertificates family_U_certificates(Dimension d, int k) {
  const SubsetMask u = family_U(d, k);
  const int n = d.value();
  const auto kk = static_cast<std::int64_t>(k);
  FamilyCertificates out;
  out.own_subset = u;
  out.below_subset = u.without((GeneratorId{1} << k) - 1);
  out.above_subset = u.with((GeneratorId{1} << (k + 1)) - 1);

  out.own.assign(static_cast<std::size_t>(n), -2);
  out.own.back() = 2 * kk - 1;

  out.below.assign(static_cast<std::size_t>(n), -3 * kk);
  for (int i = 0; i < n - k; ++i) out.below[static_cast<std::size_t>(i)] = 2 - 3 * kk;
  out.below.back() = 3 * kk * kk - 3 * kk - 1;

  out.above.assign(static_cast<std::size_t>(n), -2 * kk + 1);
  for (int i = 0; i < n - k - 1; ++i) out.above[static_cast<std::size_t>(i)] = -2 * kk - 1;
  out.above.back() = 2 * kk * kk - kk + 1;
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

SizeRatios size_ratios(Dimension d, std::uint64_t a, std::uint64_t e, std::uint64_t o) {
  if (a == 0 || o == 0) throw DomainError("size ratios need a > 0 and o > 0");
  double full_orbit = 2;
  for (int i = 2; i <= d.value(); ++i) full_orbit *= i;
  return {2.0 * static_cast<double>(e) / static_cast<double>(a),
          static_cast<double>(a) / (full_orbit * static_cast<double>(o))};
}

FamilyDegrees expected_family_degrees(Dimension d, int k) {
  const int n = d.value();
  return {static_cast<int>(binomial(n - 1, k - 1)), static_cast<int>(binomial(n - 1, k)),
          static_cast<int>(binomial(n, k))};
}

FamilyDegrees family_degree_check(Dimension d, int k) {
  const SubsetMask u = family_U(d, k);
  DegreeCalculator calc(d);
  FamilyDegrees got{calc.below(u), calc.above(u), 0};
  got.degree = got.below + got.above;
  const FamilyDegrees want = expected_family_degrees(d, k);
  if (got != want) {
    throw ConsistencyError("U family degrees differ at d=" + std::to_string(d.value()) +
                           " k=" + std::to_string(k));
  }
  return got;
}

std::vector<SubsetMask> brute_force_vertices(const lp::IntVectors& generators) {
  if (generators.size() > 20) {
    throw DomainError("brute force enumerates 2^|G| subsets; refusing |G| = " +
                      std::to_string(generators.size()) + " > 20");
  }
  const auto m = static_cast<GeneratorId>(generators.size());
  lp::GenericVertexOracle oracle(generators);
  std::vector<SubsetMask> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    SubsetMask s(m);
    for (GeneratorId j = 1; j <= m; ++j) {
      if ((bits >> (j - 1)) & 1) s.insert(j);
    }
    if (oracle.is_vertex(s)) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SubsetMask> brute_force_vertices(Dimension d) {
  return brute_force_vertices(lp::whale_generators(d));
}

std::vector<SubsetMask> orbit_members(const comb::CanonicalVertex& v, Dimension d) {
  std::vector<int> perm(static_cast<std::size_t>(d.value()));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<SubsetMask> out;
  do {
    SubsetMask s = comb::permute_subset(v.subset, perm, d);
    out.push_back(antipode(s));
    out.push_back(std::move(s));
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

VertexBounds vertex_bounds(Dimension d, std::uint64_t a) {
  const double n = d.value();
  const double sq = n * n;
  return {std::log2(n + 1) - (n + 1) + sq * (1 - 10 / std::log(n)),
          std::log2(static_cast<double>(a)), std::log2(n + 4) - 3 * (n - 1) + sq};
}

}  // namespace ww::analytics
