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

// Layer files, certificate files, summary.json and CSV reports.
//
// A layer file is ASCII:
//
//   WWLAYER1 d=3 k=3 entries=2 crc32=1c291ca3
//   1 2 3|0 2 2
//   1 3 5|1 1 3
//
// one entry per line, generator ids ascending, then "|" and the point. The
// checksum is the zlib CRC-32 of everything after the header line. Files are
// written to a temporary name and renamed, so a crash never leaves a
// half-written layer behind.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "whitewhale/analytics.hpp"
#include "whitewhale/engine.hpp"

namespace ww::io {

namespace fs = std::filesystem;

fs::path layer_path(const fs::path& dir, Dimension d, int k);
fs::path shard_path(const fs::path& dir, Dimension d, int k, engine::Shard shard);
fs::path certificate_path(const fs::path& dir, Dimension d, int k);
fs::path summary_path(const fs::path& dir);

std::string format_layer(const engine::LayerRecord& layer);
// `name` is used in error messages. Throws ChecksumError on a bad header,
// checksum or entry count, IoError on a malformed or inconsistent entry.
engine::LayerRecord parse_layer(std::string_view text, const std::string& name);

void write_layer(const fs::path& path, const engine::LayerRecord& layer);
engine::LayerRecord read_layer(const fs::path& path);

// Certificates of a layer, one line per entry in layer order. Reading
// attaches them to `layer` and checks each one separates its subset.
void write_certificates(const fs::path& path, const engine::LayerRecord& layer);
void read_certificates(const fs::path& path, engine::LayerRecord& layer);

struct LayerSummary {
  int k = 0;
  std::uint64_t canonical = 0;
  std::uint64_t orbit_sum = 0;
  friend bool operator==(const LayerSummary&, const LayerSummary&) = default;
};

struct Summary {
  int d = 0;
  std::uint64_t a = 0;
  std::optional<std::uint64_t> e;
  std::uint64_t o = 0;
  std::vector<LayerSummary> layers;
  double wall_seconds = 0;
};

void write_summary(const fs::path& path, const Summary& s);
Summary read_summary(const fs::path& path);

// Header "k,point,orbit,deg_below,deg_above,deg"; the point is written with
// spaces between coordinates. With below_only the last two fields are empty.
void write_degree_csv(std::ostream& os, std::span<const analytics::DegreeLayer> layers,
                      bool below_only = false);

// Writes `text` to path atomically.
void write_file(const fs::path& path, std::string_view text);
std::string read_file(const fs::path& path);

}  // namespace ww::io
