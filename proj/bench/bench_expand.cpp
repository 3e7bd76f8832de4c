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

// Serial reference against the OpenMP kernels: one layer expansion and the
// degrees of a whole run.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <map>

#include "whitewhale/analytics.hpp"
#include "whitewhale/engine.hpp"

namespace {

using ww::Dimension;
using ww::engine::LayerRecord;

const std::vector<LayerRecord>& layers(int d) {
  static std::map<int, std::vector<LayerRecord>> cache;
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, ww::engine::generate_all(ww::engine::RunConfig{Dimension(d)})).first;
  return it->second;
}

// The layer whose expansion produces the most entries.
const LayerRecord& busiest_parent(int d) {
  const auto& all = layers(d);
  const auto it = std::max_element(all.begin() + 1, all.end(), [](const auto& a, const auto& b) {
    return a.entries.size() < b.entries.size();
  });
  return *(it - 1);
}

void BM_ExpandReference(benchmark::State& state) {
  const Dimension d(static_cast<int>(state.range(0)));
  const LayerRecord& parent = busiest_parent(d.value());
  ww::engine::Context ctx(d);
  for (auto _ : state) {
    auto next = ww::engine::expand_layer_reference(parent, ww::comb::FilterChain{}, ctx);
    benchmark::DoNotOptimize(next);
  }
  state.counters["k"] = parent.k;
  state.counters["parent"] = static_cast<double>(parent.entries.size());
}

void BM_ExpandParallel(benchmark::State& state) {
  const Dimension d(static_cast<int>(state.range(0)));
  const LayerRecord& parent = busiest_parent(d.value());
  ww::engine::Context ctx(d);
  ww::engine::RunConfig cfg{d};
  cfg.workers = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto next = ww::engine::expand_layer(parent, cfg, ctx);
    benchmark::DoNotOptimize(next);
  }
  state.counters["k"] = parent.k;
  state.counters["parent"] = static_cast<double>(parent.entries.size());
}

void BM_DegreesReference(benchmark::State& state) {
  const auto& all = layers(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    for (const auto& l : all) benchmark::DoNotOptimize(ww::analytics::compute_degrees_reference(l));
  }
}

void BM_DegreesParallel(benchmark::State& state) {
  const auto& all = layers(static_cast<int>(state.range(0)));
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) {
    for (const auto& l : all) benchmark::DoNotOptimize(ww::analytics::compute_degrees(l, workers));
  }
}

}  // namespace

BENCHMARK(BM_ExpandReference)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExpandParallel)->ArgsProduct({{5, 6}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DegreesReference)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DegreesParallel)->ArgsProduct({{4, 5}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
