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

#include "whitewhale/io.hpp"

#include <zlib.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "whitewhale/errors.hpp"

namespace ww::io {
namespace {

constexpr std::string_view kLayerMagic = "WWLAYER1";
constexpr std::string_view kCertMagic = "WWCERT1";

std::uint32_t crc_of(std::string_view body) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large bodies in pieces.
  while (!body.empty()) {
    const auto n = static_cast<uInt>(std::min<std::size_t>(body.size(), 1U << 30));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(body.data()), n);
    body.remove_prefix(n);
  }
  return static_cast<std::uint32_t>(crc);
}

std::string header(std::string_view magic, Dimension d, int k, std::size_t entries,
                   std::string_view body) {
  char crc[16];
  std::snprintf(crc, sizeof crc, "%08x", crc_of(body));
  std::ostringstream os;
  os << magic << " d=" << d.value() << " k=" << k << " entries=" << entries << " crc32=" << crc
     << '\n';
  return os.str();
}

struct Header {
  int d = 0;
  int k = 0;
  std::size_t entries = 0;
  std::uint32_t crc = 0;
};

template <typename T>
bool parse_number(std::string_view s, T& out, int base = 10) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out, base);
  return ec == std::errc() && ptr == end;
}

// Splits header from body and validates the header fields and checksum.
Header check_header(std::string_view text, std::string_view magic, const std::string& name,
                    std::string_view& body) {
  const auto nl = text.find('\n');
  if (nl == std::string_view::npos) throw ChecksumError(name, "missing header line");
  std::istringstream hs{std::string(text.substr(0, nl))};
  body = text.substr(nl + 1);
  std::string word, d_field, k_field, n_field, crc_field;
  hs >> word >> d_field >> k_field >> n_field >> crc_field;
  Header h;
  auto field = [&](const std::string& f, std::string_view key) -> std::string_view {
    if (f.rfind(key, 0) != 0) throw ChecksumError(name, "malformed header");
    return std::string_view(f).substr(key.size());
  };
  if (word != magic) throw ChecksumError(name, "bad magic '" + word + "'");
  if (!parse_number(field(d_field, "d="), h.d) || !parse_number(field(k_field, "k="), h.k) ||
      !parse_number(field(n_field, "entries="), h.entries) ||
      !parse_number(field(crc_field, "crc32="), h.crc, 16)) {
    throw ChecksumError(name, "malformed header");
  }
  if (crc_of(body) != h.crc) throw ChecksumError(name, "checksum mismatch");
  return h;
}

std::vector<std::string_view> lines_of(std::string_view body) {
  std::vector<std::string_view> out;
  while (!body.empty()) {
    const auto nl = body.find('\n');
    out.push_back(body.substr(0, nl));
    if (nl == std::string_view::npos) break;
    body.remove_prefix(nl + 1);
  }
  return out;
}

template <typename T>
std::vector<T> numbers(std::string_view s, const std::string& name) {
  std::vector<T> out;
  while (!s.empty()) {
    const auto sp = s.find(' ');
    T v{};
    if (!parse_number(s.substr(0, sp), v)) throw IoError(name + ": malformed number");
    out.push_back(v);
    if (sp == std::string_view::npos) break;
    s.remove_prefix(sp + 1);
  }
  return out;
}

template <typename Range>
void join(std::ostream& os, const Range& values) {
  bool first = true;
  for (const auto& v : values) {
    if (!first) os << ' ';
    os << +v;
    first = false;
  }
}

}  // namespace

fs::path layer_path(const fs::path& dir, Dimension d, int k) {
  return dir / ("layer_d" + std::to_string(d.value()) + "_k" + std::to_string(k) + ".www");
}

fs::path shard_path(const fs::path& dir, Dimension d, int k, engine::Shard shard) {
  return dir / ("layer_d" + std::to_string(d.value()) + "_k" + std::to_string(k) + ".shard" +
                std::to_string(shard.index) + "of" + std::to_string(shard.total) + ".www");
}

fs::path certificate_path(const fs::path& dir, Dimension d, int k) {
  return dir / ("layer_d" + std::to_string(d.value()) + "_k" + std::to_string(k) + ".cert");
}

fs::path summary_path(const fs::path& dir) { return dir / "summary.json"; }

std::string format_layer(const engine::LayerRecord& layer) {
  std::ostringstream body;
  for (const auto& e : layer.entries) {
    join(body, e.subset.ids());
    body << '|';
    join(body, e.point.coords());
    body << '\n';
  }
  const std::string b = body.str();
  return header(kLayerMagic, layer.d, layer.k, layer.entries.size(), b) + b;
}

engine::LayerRecord parse_layer(std::string_view text, const std::string& name) {
  std::string_view body;
  const Header h = check_header(text, kLayerMagic, name, body);
  if (h.d < kMinDim || h.d > kMaxDim) throw ChecksumError(name, "dimension out of range");
  const Dimension d(h.d);
  const auto lines = lines_of(body);
  if (lines.size() != h.entries) throw ChecksumError(name, "entry count mismatch");
  engine::LayerRecord layer{d, h.k, {}};
  layer.entries.reserve(lines.size());
  for (const auto line : lines) {
    const auto bar = line.find('|');
    if (bar == std::string_view::npos) throw IoError(name + ": entry without '|'");
    const auto ids = numbers<GeneratorId>(line.substr(0, bar), name);
    const auto coords = numbers<int>(line.substr(bar + 1), name);
    comb::CanonicalVertex v;
    try {
      v.subset = SubsetMask::of(d.generator_count(), ids);
      v.point = Point::from(d, coords);
    } catch (const DomainError& e) {
      throw IoError(name + ": " + e.what());
    }
    if (v.subset.count() != static_cast<std::size_t>(h.k) || v.point != point_of(v.subset, d) ||
        !v.point.is_nondecreasing()) {
      throw IoError(name + ": entry '" + std::string(line) + "' is inconsistent");
    }
    if (!layer.entries.empty() && !(layer.entries.back().point < v.point)) {
      throw IoError(name + ": entries not sorted by point");
    }
    v.orbit_size = comb::orbit_size(v.point, d);
    layer.entries.push_back(std::move(v));
  }
  return layer;
}

void write_file(const fs::path& path, std::string_view text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_layer(const fs::path& path, const engine::LayerRecord& layer) {
  write_file(path, format_layer(layer));
}

engine::LayerRecord read_layer(const fs::path& path) {
  return parse_layer(read_file(path), path.string());
}

void write_certificates(const fs::path& path, const engine::LayerRecord& layer) {
  std::ostringstream body;
  for (const auto& e : layer.entries) {
    if (e.certificate.empty()) throw DomainError("layer entry has no certificate");
    join(body, e.certificate);
    body << '\n';
  }
  const std::string b = body.str();
  write_file(path, header(kCertMagic, layer.d, layer.k, layer.entries.size(), b) + b);
}

void read_certificates(const fs::path& path, engine::LayerRecord& layer) {
  const std::string name = path.string();
  const std::string text = read_file(path);
  std::string_view body;
  const Header h = check_header(text, kCertMagic, name, body);
  if (h.d != layer.d.value() || h.k != layer.k || h.entries != layer.entries.size()) {
    throw ChecksumError(name, "does not belong to this layer");
  }
  const auto lines = lines_of(body);
  if (lines.size() != h.entries) throw ChecksumError(name, "entry count mismatch");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto c = numbers<std::int64_t>(lines[i], name);
    if (!lp::verify_integer_certificate(c, layer.entries[i].subset, layer.d)) {
      throw IoError(name + ": certificate " + std::to_string(i + 1) + " does not verify");
    }
    layer.entries[i].certificate = std::move(c);
  }
}

void write_summary(const fs::path& path, const Summary& s) {
  nlohmann::ordered_json j;
  j["d"] = s.d;
  j["a"] = s.a;
  j["e"] = s.e ? nlohmann::ordered_json(*s.e) : nlohmann::ordered_json(nullptr);
  j["o"] = s.o;
  j["layers"] = nlohmann::ordered_json::array();
  for (const auto& l : s.layers) {
    j["layers"].push_back({{"k", l.k}, {"canonical", l.canonical}, {"orbit_sum", l.orbit_sum}});
  }
  j["wall_seconds"] = s.wall_seconds;
  write_file(path, j.dump(2) + "\n");
}

Summary read_summary(const fs::path& path) {
  try {
    const auto j = nlohmann::json::parse(read_file(path));
    Summary s;
    s.d = j.at("d").get<int>();
    s.a = j.at("a").get<std::uint64_t>();
    if (j.contains("e") && !j.at("e").is_null()) s.e = j.at("e").get<std::uint64_t>();
    s.o = j.at("o").get<std::uint64_t>();
    for (const auto& l : j.at("layers")) {
      s.layers.push_back({l.at("k").get<int>(), l.at("canonical").get<std::uint64_t>(),
                          l.at("orbit_sum").get<std::uint64_t>()});
    }
    s.wall_seconds = j.value("wall_seconds", 0.0);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_degree_csv(std::ostream& os, std::span<const analytics::DegreeLayer> layers,
                      bool below_only) {
  os << "k,point,orbit,deg_below,deg_above,deg\n";
  for (const auto& layer : layers) {
    for (const auto& row : layer.rows) {
      os << layer.k << ',';
      join(os, row.canonical.point.coords());
      os << ',' << row.canonical.orbit_size << ',' << row.deg_below << ',';
      if (below_only) {
        os << ",\n";
      } else {
        os << row.deg_above << ',' << row.degree << '\n';
      }
    }
  }
}

}  // namespace ww::io
