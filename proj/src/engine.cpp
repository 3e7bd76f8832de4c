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

#include "whitewhale/engine.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <exception>
#include <iostream>
#include <map>
#include <unordered_map>

#include "whitewhale/errors.hpp"

namespace ww::engine {
namespace {

using Clock = std::chrono::steady_clock;

lp::IntVector permute_certificate(const lp::IntVector& c, std::span<const int> perm) {
  lp::IntVector out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[perm[i]];
  return out;
}

Point sorted_point(const Point& p) {
  Point out = p;
  const int n = p.dim();
  std::sort(&out[0], &out[0] + n);
  return out;
}

// Canonical vertex for a confirmed vertex subset, carrying its certificate
// into the canonical frame when one was requested.
comb::CanonicalVertex make_canonical(const SubsetMask& s, const Point& p, lp::IntVector cert,
                                     Dimension d) {
  comb::CanonicalVertex v;
  if (p.is_nondecreasing()) {
    v.subset = s;
    v.point = p;
    v.certificate = std::move(cert);
  } else {
    const auto perm = comb::sorting_permutation(p);
    v.subset = comb::permute_subset(s, perm, d);
    v.point = sorted_point(p);
    if (!cert.empty()) v.certificate = permute_certificate(cert, perm);
  }
  v.orbit_size = comb::orbit_size(v.point, d);
  return v;
}

bool by_point(const comb::CanonicalVertex& a, const comb::CanonicalVertex& b) {
  return a.point < b.point;
}

}  // namespace

std::uint64_t LayerRecord::orbit_sum() const noexcept {
  std::uint64_t total = 0;
  for (const auto& e : entries) total += e.orbit_size;
  return total;
}

void RunConfig::validate() const {
  if (max_layer < 0 || max_layer > d.last_layer()) {
    throw DomainError("max_layer must lie in [0, " + std::to_string(d.last_layer()) + "]");
  }
  if (workers < 1) throw DomainError("worker count must be positive");
  if (shard && (shard->total < 1 || shard->index < 0 || shard->index >= shard->total)) {
    throw DomainError("shard index must lie in [0, total)");
  }
  if (resume_from && (*resume_from < 0 || *resume_from > max_layer)) {
    throw DomainError("resume layer must lie in [0, max_layer]");
  }
}

LayerRecord initial_layer(Dimension d, bool with_certificate) {
  comb::CanonicalVertex origin;
  origin.subset = empty_mask(d);
  origin.point = Point(d);
  origin.orbit_size = comb::orbit_size(origin.point, d);
  if (with_certificate) origin.certificate.assign(static_cast<std::size_t>(d.value()), -1);
  return LayerRecord{d, 0, {std::move(origin)}};
}

LayerRecord expand_layer(const LayerRecord& layer, const RunConfig& cfg, const Context& ctx,
                         LayerStats* stats) {
  const auto start = Clock::now();
  const Dimension d = ctx.d;
  const GeneratorId m = d.generator_count();
  const int k_next = layer.k + 1;
  const bool direct_canonical = cfg.filters.sorted_extension;
  const auto n_entries = static_cast<long>(layer.entries.size());
  const int workers = std::max(1, cfg.workers);

  using Local = std::unordered_map<Point, comb::CanonicalVertex>;
  std::vector<Local> locals(static_cast<std::size_t>(workers));
  std::uint64_t candidates = 0, hits = 0, lp_calls = 0;
  std::exception_ptr failure;

#pragma omp parallel num_threads(workers) reduction(+ : candidates, hits, lp_calls)
  {
    Local& local = locals[static_cast<std::size_t>(omp_get_thread_num())];
    lp::VertexOracle oracle(d);
    lp::IntVector cert;
    lp::IntVector* cert_out = cfg.store_certificates ? &cert : nullptr;

#pragma omp for schedule(dynamic, 8)
    for (long i = 0; i < n_entries; ++i) {
      if (cfg.shard && i % cfg.shard->total != cfg.shard->index) continue;
      try {
        const auto& parent = layer.entries[static_cast<std::size_t>(i)];
        SubsetMask child = parent.subset;
        for (GeneratorId g = 1; g <= m; ++g) {
          if (parent.subset.contains(g)) continue;
          if (!comb::passes_filters(cfg.filters, parent.subset, parent.point, g, k_next,
                                    ctx.submasks)) {
            continue;
          }
          ++candidates;
          const Point p = point_increment(parent.point, g, d);
          const Point key = direct_canonical ? p : sorted_point(p);
          if (cfg.dedup_before_lp && local.contains(key)) {
            ++hits;
            continue;
          }
          child.insert(g);
          ++lp_calls;
          const bool vertex = oracle.is_vertex(child, cert_out);
          if (vertex && !local.contains(key)) {
            local.emplace(key, make_canonical(child, p, cfg.store_certificates ? cert : lp::IntVector{}, d));
          }
          child.erase(g);
        }
      } catch (...) {
#pragma omp critical(ww_expand_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<LayerRecord> parts;
  parts.reserve(locals.size());
  for (auto& local : locals) {
    LayerRecord part{d, k_next, {}};
    part.entries.reserve(local.size());
    for (auto& [key, v] : local) part.entries.push_back(std::move(v));
    parts.push_back(std::move(part));
  }
  LayerRecord out = merge_layers(parts);
  out.k = k_next;
  if (stats != nullptr) {
    stats->k = k_next;
    stats->entries = out.entries.size();
    stats->candidates = candidates;
    stats->dedup_hits = hits;
    stats->lp_calls = lp_calls;
    stats->seconds = std::chrono::duration<double>(Clock::now() - start).count();
  }
  return out;
}

LayerRecord expand_layer_reference(const LayerRecord& layer, const comb::FilterChain& filters,
                                   const Context& ctx) {
  const Dimension d = ctx.d;
  const int k_next = layer.k + 1;
  lp::VertexOracle oracle(d);
  std::map<Point, comb::CanonicalVertex> next;
  for (const auto& parent : layer.entries) {
    for (GeneratorId g = 1; g <= d.generator_count(); ++g) {
      if (parent.subset.contains(g)) continue;
      if (!comb::passes_filters(filters, parent.subset, parent.point, g, k_next, ctx.submasks)) {
        continue;
      }
      const SubsetMask child = parent.subset.with(g);
      if (!oracle.is_vertex(child)) continue;
      comb::CanonicalVertex v = comb::canonicalize(child, d);
      next.try_emplace(v.point, std::move(v));
    }
  }
  LayerRecord out{d, k_next, {}};
  out.entries.reserve(next.size());
  for (auto& [p, v] : next) out.entries.push_back(std::move(v));
  return out;
}

LayerRecord merge_layers(std::span<const LayerRecord> parts) {
  if (parts.empty()) throw DomainError("nothing to merge");
  LayerRecord out{parts.front().d, parts.front().k, {}};
  std::size_t total = 0;
  for (const auto& part : parts) {
    if (part.d != out.d || part.k != out.k) throw DomainError("merging layers of different (d, k)");
    total += part.entries.size();
  }
  out.entries.reserve(total);
  for (const auto& part : parts) {
    out.entries.insert(out.entries.end(), part.entries.begin(), part.entries.end());
  }
  std::stable_sort(out.entries.begin(), out.entries.end(), by_point);
  std::vector<comb::CanonicalVertex> unique;
  unique.reserve(out.entries.size());
  for (auto& e : out.entries) {
    if (!unique.empty() && unique.back().point == e.point) {
      if (unique.back().subset != e.subset) {
        throw ConsistencyError("two subsets share the vertex point (" + e.point.to_string() + ")");
      }
      continue;
    }
    unique.push_back(std::move(e));
  }
  out.entries = std::move(unique);
  return out;
}

void print_progress(std::ostream& os, const LayerStats& s) {
  os << "layer " << s.k << ": " << s.entries << " entries, " << s.candidates << " candidates, "
     << s.lp_calls << " LP calls, " << s.seconds << " seconds\n";
}

void generate_from(const LayerRecord& start, const RunConfig& cfg, const LayerSink& sink) {
  cfg.validate();
  if (start.d != cfg.d) throw DomainError("start layer dimension does not match the run");
  const Context ctx(cfg.d);
  LayerRecord current = start;
  RunConfig unsharded = cfg;
  unsharded.shard.reset();
  while (current.k < cfg.max_layer) {
    LayerStats stats;
    LayerRecord next = expand_layer(current, unsharded, ctx, &stats);
    if (cfg.progress) print_progress(std::cerr, stats);
    sink(next, stats);
    current = std::move(next);
  }
}

void generate(const RunConfig& cfg, const LayerSink& sink) {
  cfg.validate();
  LayerRecord first = initial_layer(cfg.d, cfg.store_certificates);
  LayerStats stats;
  stats.entries = 1;
  sink(first, stats);
  generate_from(first, cfg, sink);
}

std::vector<LayerRecord> generate_all(const RunConfig& cfg) {
  std::vector<LayerRecord> out;
  generate(cfg, [&](const LayerRecord& layer, const LayerStats&) { out.push_back(layer); });
  return out;
}

PreOracle whale_pre_oracle(const Context& ctx) {
  return [&ctx](const SubsetMask& s, GeneratorId g) { return comb::oracle_O(s, g, ctx.submasks); };
}

}  // namespace ww::engine
