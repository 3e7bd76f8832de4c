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

// Layered, orbitwise vertex generation.
//
// Layer k holds the canonical vertices that are sums of exactly k generators.
// Every vertex of layer k + 1 is adjacent to a vertex of layer k (each edge
// of a zonotope is a translated generator), so layer k + 1 is found by trying
// every extension S + g of every S in layer k. Central symmetry lets the
// White Whale stop at layer 2^(d-1) - 1.
//
// expand_layer is the production kernel: entries of the current layer are
// split across OpenMP threads, each with a private oracle and candidate map,
// and the maps are merged and sorted by point. expand_layer_reference is the
// plain single-threaded loop in the textbook order (filters, LP, canonical
// form, dedup); tests and the benchmark compare the two.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "whitewhale/comb.hpp"
#include "whitewhale/core.hpp"
#include "whitewhale/lp.hpp"

namespace ww::engine {

struct LayerRecord {
  Dimension d;
  int k = 0;
  // Sorted by point; distinct points.
  std::vector<comb::CanonicalVertex> entries;

  std::uint64_t orbit_sum() const noexcept;
  friend bool operator==(const LayerRecord&, const LayerRecord&) = default;
};

struct Shard {
  int index = 0;
  int total = 1;
};

struct RunConfig {
  Dimension d;
  int max_layer;
  int workers = 1;
  std::optional<Shard> shard;
  std::optional<int> resume_from;
  bool store_certificates = false;
  comb::FilterChain filters;
  // Look a candidate's canonical point up before calling the LP.
  bool dedup_before_lp = true;
  // Print one progress line per layer on stderr.
  bool progress = false;

  explicit RunConfig(Dimension dim) : d(dim), max_layer(dim.last_layer()) {}
  // Throws DomainError on an out-of-range field.
  void validate() const;
};

struct LayerStats {
  int k = 0;                     // index of the layer produced
  std::size_t entries = 0;       // canonical vertices produced
  std::uint64_t candidates = 0;  // (S, g) pairs surviving the filter chain
  std::uint64_t dedup_hits = 0;  // candidates answered by the dedup set
  std::uint64_t lp_calls = 0;
  double seconds = 0;
};

// Shared read-only state for one dimension.
struct Context {
  explicit Context(Dimension dim) : d(dim), submasks(dim) {}
  Dimension d;
  comb::SubmaskTable submasks;
};

// Layer 0: the empty subset at the origin.
LayerRecord initial_layer(Dimension d, bool with_certificate = false);

// Layer k + 1 from a complete layer k. With cfg.shard set only entries with
// index % total == shard.index are expanded, giving a partial layer.
LayerRecord expand_layer(const LayerRecord& layer, const RunConfig& cfg, const Context& ctx,
                         LayerStats* stats = nullptr);

// Single-threaded reference: filters, then LP, then canonical form, then
// dedup, with no reordering or caching.
LayerRecord expand_layer_reference(const LayerRecord& layer, const comb::FilterChain& filters,
                                   const Context& ctx);

// Union of partial layers of the same (d, k), sorted by point. Throws
// ConsistencyError if two entries share a point but not a subset.
LayerRecord merge_layers(std::span<const LayerRecord> parts);

using LayerSink = std::function<void(const LayerRecord&, const LayerStats&)>;

// Emits layers 0 .. cfg.max_layer in order. Only the current and next layer
// are held in memory.
void generate(const RunConfig& cfg, const LayerSink& sink);
// Emits layers start.k + 1 .. cfg.max_layer.
void generate_from(const LayerRecord& start, const RunConfig& cfg, const LayerSink& sink);
// Convenience: every layer 0 .. cfg.max_layer in memory.
std::vector<LayerRecord> generate_all(const RunConfig& cfg);

void print_progress(std::ostream& os, const LayerStats& stats);

// ---------------------------------------------------------------------------
// Generic zonotopes (no White Whale specific pruning).

struct GenericEntry {
  SubsetMask subset;
  lp::IntVector point;
  std::uint64_t orbit_size = 1;

  friend bool operator==(const GenericEntry&, const GenericEntry&) = default;
};

struct GenericLayer {
  int k = 0;
  std::vector<GenericEntry> entries;  // sorted by point
};

// Called before the LP with (S, j): may return false to reject S + generator j
// (1-based). Must only reject non-vertices.
using PreOracle = std::function<bool(const SubsetMask&, GeneratorId)>;

struct GenericOptions {
  // false: every vertex, layers 0..m. true: canonical representatives under
  // coordinate permutations and central symmetry, layers 0..floor(m/2).
  bool use_symmetry = false;
  PreOracle pre_oracle;
};

// Throws DomainError on collinear generators, or when use_symmetry is set and
// the generator set is not closed under coordinate permutations.
std::vector<GenericLayer> generate_generic(const lp::IntVectors& generators,
                                           const GenericOptions& options);

// pre_oracle wrapping oracle_O for G_d given in id order.
PreOracle whale_pre_oracle(const Context& ctx);

}  // namespace ww::engine
