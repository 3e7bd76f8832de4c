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

#include <random>
#include <sstream>

#include "doctest.h"
#include "whitewhale/cli.hpp"
#include "whitewhale/errors.hpp"
#include "whitewhale/io.hpp"

using namespace ww;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("wwhale_test_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result wwhale(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) { return io::read_file(p); }

std::vector<engine::LayerRecord> run(int dim) {
  return engine::generate_all(engine::RunConfig{Dimension(dim)});
}

}  // namespace

TEST_CASE("layer file format") {
  const auto layers = run(3);
  const std::string text = io::format_layer(layers[3]);
  CHECK(text.rfind("WWLAYER1 d=3 k=3 entries=2 crc32=", 0) == 0);
  CHECK(text.substr(text.find('\n') + 1) == "1 2 3|0 2 2\n1 3 5|1 1 3\n");
  CHECK(io::format_layer(layers[0]).substr(io::format_layer(layers[0]).find('\n') + 1) == "|0 0 0\n");
}

TEST_CASE("layer file round trip is byte identical") {
  TempDir dir;
  for (const auto& layer : run(5)) {
    const fs::path p = io::layer_path(dir.path(), layer.d, layer.k);
    io::write_layer(p, layer);
    const std::string first = slurp(p);
    const auto back = io::read_layer(p);
    CHECK(back == layer);
    io::write_layer(p, back);
    CHECK(slurp(p) == first);
  }
}

TEST_CASE("tampered layer files are rejected with the file name") {
  TempDir dir;
  const auto layers = run(4);
  const fs::path p = io::layer_path(dir.path(), Dimension(4), 5);
  io::write_layer(p, layers[5]);
  std::string text = slurp(p);
  const auto pos = text.rfind("4 4");
  text[pos] = '3';
  io::write_file(p, text);
  try {
    io::read_layer(p);
    FAIL("expected a checksum error");
  } catch (const ChecksumError& e) {
    CHECK(e.file() == p.string());
    CHECK(std::string(e.what()).find(p.string()) != std::string::npos);
  }
  CHECK_THROWS_AS(io::parse_layer("garbage", "x"), ChecksumError);
  CHECK_THROWS_AS(io::parse_layer("WWLAYER1 d=3 k=1 entries=1 crc32=zz\n1|0 0 1\n", "x"), ChecksumError);
}

TEST_CASE("inconsistent entries are rejected even with a valid checksum") {
  engine::LayerRecord bad{Dimension(3), 1, {comb::canonicalize(SubsetMask::of(7, {1}), Dimension(3))}};
  std::string text = io::format_layer(bad);
  CHECK_NOTHROW(io::parse_layer(text, "ok"));
  bad.entries[0].point = Point(Dimension(3), {0, 1, 1});
  CHECK_THROWS_AS(io::parse_layer(io::format_layer(bad), "bad"), IoError);
}

TEST_CASE("certificate files") {
  TempDir dir;
  engine::RunConfig cfg{Dimension(4)};
  cfg.store_certificates = true;
  auto layers = engine::generate_all(cfg);
  const fs::path p = io::certificate_path(dir.path(), Dimension(4), 6);
  io::write_certificates(p, layers[6]);
  auto copy = layers[6];
  for (auto& e : copy.entries) e.certificate.clear();
  io::read_certificates(p, copy);
  for (std::size_t i = 0; i < copy.entries.size(); ++i) {
    CHECK(copy.entries[i].certificate == layers[6].entries[i].certificate);
  }
  CHECK_THROWS_AS(io::read_certificates(p, layers[5]), ChecksumError);
}

TEST_CASE("summary json") {
  TempDir dir;
  io::Summary s{4, 370, std::nullopt, 18, {{0, 1, 2}, {1, 1, 8}}, 0.25};
  io::write_summary(io::summary_path(dir.path()), s);
  const std::string text = slurp(io::summary_path(dir.path()));
  for (const char* key : {"\"d\"", "\"a\"", "\"e\"", "\"o\"", "\"layers\"", "\"canonical\"",
                          "\"orbit_sum\"", "\"wall_seconds\""}) {
    CHECK(text.find(key) != std::string::npos);
  }
  auto back = io::read_summary(io::summary_path(dir.path()));
  CHECK(back.a == 370);
  CHECK_FALSE(back.e.has_value());
  CHECK(back.layers == s.layers);
  s.e = 760;
  io::write_summary(io::summary_path(dir.path()), s);
  CHECK(io::read_summary(io::summary_path(dir.path())).e == 760);
}

TEST_CASE("degree csv header") {
  std::vector<analytics::DegreeLayer> deg{analytics::compute_degrees(run(3)[2])};
  std::ostringstream os;
  io::write_degree_csv(os, deg);
  CHECK(os.str() == "k,point,orbit,deg_below,deg_above,deg\n2,0 1 2,12,1,2,3\n");
}

TEST_CASE("generate d = 3") {
  TempDir dir;
  const auto r = wwhale({"generate", "-d", "3", "--layers-dir", dir.str(), "--quiet"});
  CHECK(r.code == cli::kOk);
  for (int k = 0; k <= 3; ++k) CHECK(fs::exists(io::layer_path(dir.path(), Dimension(3), k)));
  CHECK_FALSE(fs::exists(io::layer_path(dir.path(), Dimension(3), 4)));
  const auto s = io::read_summary(io::summary_path(dir.path()));
  CHECK(s.a == 32);
  CHECK(s.o == 5);
}

TEST_CASE("repeated runs are byte identical across thread counts") {
  TempDir a, b;
  REQUIRE(wwhale({"generate", "-d", "5", "--layers-dir", a.str(), "--quiet"}).code == 0);
  REQUIRE(wwhale({"generate", "-d", "5", "--layers-dir", b.str(), "--threads", "3", "--quiet"}).code == 0);
  for (int k = 0; k <= 15; ++k) {
    CHECK(slurp(io::layer_path(a.path(), Dimension(5), k)) == slurp(io::layer_path(b.path(), Dimension(5), k)));
  }
}

TEST_CASE("resume reproduces the full run") {
  TempDir full, part;
  REQUIRE(wwhale({"generate", "-d", "5", "--layers-dir", full.str(), "--quiet"}).code == 0);
  REQUIRE(wwhale({"generate", "-d", "5", "--layers-dir", part.str(), "--max-layer", "8", "--quiet"}).code == 0);
  CHECK_FALSE(fs::exists(io::layer_path(part.path(), Dimension(5), 9)));
  REQUIRE(wwhale({"generate", "-d", "5", "--layers-dir", part.str(), "--resume-from", "8", "--quiet"}).code == 0);
  for (int k = 0; k <= 15; ++k) {
    CHECK(slurp(io::layer_path(full.path(), Dimension(5), k)) ==
          slurp(io::layer_path(part.path(), Dimension(5), k)));
  }
  const auto s1 = io::read_summary(io::summary_path(full.path()));
  const auto s2 = io::read_summary(io::summary_path(part.path()));
  CHECK(s1.a == s2.a);
  CHECK(s1.o == s2.o);
  CHECK(s1.layers == s2.layers);

  // Summary arithmetic matches the layer files.
  std::uint64_t a = 0, o = 0;
  for (int k = 0; k <= 15; ++k) {
    const auto l = io::read_layer(io::layer_path(part.path(), Dimension(5), k));
    a += l.orbit_sum();
    o += l.entries.size();
  }
  CHECK(a == s2.a);
  CHECK(o == s2.o);
}

TEST_CASE("resume from a tampered layer fails with an I/O exit code") {
  TempDir dir;
  REQUIRE(wwhale({"generate", "-d", "4", "--layers-dir", dir.str(), "--max-layer", "3", "--quiet"}).code == 0);
  const fs::path p = io::layer_path(dir.path(), Dimension(4), 3);
  std::string text = slurp(p);
  text.back() = ' ';
  io::write_file(p, text + "\n");
  const auto r = wwhale({"generate", "-d", "4", "--layers-dir", dir.str(), "--resume-from", "3", "--quiet"});
  CHECK(r.code == cli::kIoError);
  CHECK(r.err.find(p.string()) != std::string::npos);
  fs::remove(p);
  CHECK(wwhale({"generate", "-d", "4", "--layers-dir", dir.str(), "--resume-from", "3"}).code == cli::kIoError);
}

TEST_CASE("resume d = 4 from layer 3") {
  TempDir full, part;
  REQUIRE(wwhale({"generate", "-d", "4", "--layers-dir", full.str(), "--quiet"}).code == 0);
  REQUIRE(wwhale({"generate", "-d", "4", "--layers-dir", part.str(), "--max-layer", "3", "--quiet"}).code == 0);
  REQUIRE(wwhale({"generate", "-d", "4", "--layers-dir", part.str(), "--resume-from", "3", "--quiet"}).code == 0);
  for (int k = 4; k <= 7; ++k) {
    CHECK(slurp(io::layer_path(full.path(), Dimension(4), k)) ==
          slurp(io::layer_path(part.path(), Dimension(4), k)));
  }
}

TEST_CASE("sharded d = 5 run merges to the unsharded files") {
  TempDir full, sharded;
  REQUIRE(wwhale({"generate", "-d", "5", "--layers-dir", full.str(), "--quiet"}).code == 0);
  for (int k = 0; k < 15; ++k) {
    for (int i = 0; i < 4; ++i) {
      const auto r = wwhale({"generate", "-d", "5", "--layers-dir", sharded.str(), "--shard",
                             std::to_string(i) + "/4", "--resume-from", std::to_string(k), "--quiet"});
      REQUIRE(r.code == 0);
    }
    REQUIRE(wwhale({"merge", "-d", "5", "-k", std::to_string(k + 1), "--shards", "4", "--layers-dir",
                    sharded.str()})
                .code == 0);
    CHECK(slurp(io::layer_path(full.path(), Dimension(5), k + 1)) ==
          slurp(io::layer_path(sharded.path(), Dimension(5), k + 1)));
  }
  CHECK(wwhale({"merge", "-d", "5", "-k", "3", "--shards", "5", "--layers-dir", sharded.str()}).code ==
        cli::kIoError);
}

TEST_CASE("edges and degrees d = 4") {
  TempDir dir;
  REQUIRE(wwhale({"generate", "-d", "4", "--layers-dir", dir.str(), "--quiet"}).code == 0);
  auto r = wwhale({"edges", "-d", "4", "--layers-dir", dir.str()});
  CHECK(r.code == 0);
  CHECK(r.out.find("e(4) = 760") != std::string::npos);
  CHECK(r.out.find("2e/a = 4.108, a/(2 d! o) = 42.824%") != std::string::npos);
  CHECK(io::read_summary(io::summary_path(dir.path())).e == 760);
  CHECK(io::read_summary(io::summary_path(dir.path())).a == 370);

  r = wwhale({"degrees", "-d", "4", "--layers-dir", dir.str()});
  CHECK(r.code == 0);
  const std::string csv = slurp(dir.path() / "degrees_d4.csv");
  CHECK(csv.rfind("k,point,orbit,deg_below,deg_above,deg\n", 0) == 0);
  CHECK(csv.find("\n5,1 1 4 4,12,2,4,6\n") != std::string::npos);
  CHECK(csv.find("\n7,0 4 4 4,8,3,1,4\n") != std::string::npos);
  CHECK(csv.find("\n4,1 1 1 4,8,3,3,6\n") != std::string::npos);
  CHECK(r.out.find("maximum degree 6 at (1,1,1,4) (1,1,4,4)") != std::string::npos);
  CHECK(r.out.find("U family k=2 at (1,1,1,4): degree 6 (maximum)") != std::string::npos);
}

TEST_CASE("edges with missing layers") {
  TempDir dir;
  REQUIRE(wwhale({"generate", "-d", "4", "--layers-dir", dir.str(), "--max-layer", "5", "--quiet"}).code == 0);
  CHECK(wwhale({"edges", "-d", "4", "--layers-dir", dir.str()}).code == cli::kIoError);
  CHECK(wwhale({"degrees", "-d", "4", "--layers-dir", dir.str()}).code == cli::kIoError);
}

TEST_CASE("verify modes") {
  auto r = wwhale({"verify", "-d", "4", "--mode", "bruteforce"});
  CHECK(r.code == 0);
  CHECK(r.out.find("[PASS] brute force set equals layered set d=4") != std::string::npos);
  r = wwhale({"verify", "-d", "5", "--mode", "families"});
  CHECK(r.code == 0);
  CHECK(r.out.find("[PASS] U degrees d=5 k=4") != std::string::npos);
  r = wwhale({"verify", "-d", "3", "--mode", "tables"});
  CHECK(r.code == 0);
  CHECK(r.out.find("[PASS] degree table above d=3") != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
  CHECK(wwhale({"verify", "-d", "5", "--mode", "bruteforce"}).code == cli::kConfigError);
  CHECK(wwhale({"verify", "-d", "7", "--mode", "tables"}).code == cli::kConfigError);
  CHECK(wwhale({"verify", "-d", "4", "--mode", "nonsense"}).code == cli::kConfigError);
}

TEST_CASE("verify tables counts only from layer files") {
  TempDir dir;
  REQUIRE(wwhale({"generate", "-d", "5", "--layers-dir", dir.str(), "--quiet"}).code == 0);
  cli::VerifyOptions opt;
  opt.d = 5;
  opt.mode = "tables";
  opt.layers_dir = dir.path();
  std::ostringstream out, err;
  CHECK(cli::cmd_verify(opt, out, err) == 0);
  CHECK(out.str().find("[PASS] vertex count a(5)") != std::string::npos);
}

TEST_CASE("configuration errors") {
  CHECK(wwhale({}).code == cli::kConfigError);
  CHECK(wwhale({"generate"}).code == cli::kConfigError);
  CHECK(wwhale({"generate", "-d", "1"}).code == cli::kConfigError);
  CHECK(wwhale({"generate", "-d", "8"}).code == cli::kConfigError);
  CHECK(wwhale({"generate", "-d", "3", "--max-layer", "9"}).code == cli::kConfigError);
  CHECK(wwhale({"generate", "-d", "3", "--shard", "4/4"}).code == cli::kConfigError);
  CHECK(wwhale({"generate", "-d", "3", "--shard", "x"}).code == cli::kConfigError);
  CHECK(wwhale({"--help"}).code == cli::kOk);
}

TEST_CASE("pad-layers") {
  TempDir dir;
  REQUIRE(wwhale({"generate", "-d", "3", "--layers-dir", dir.str(), "--quiet"}).code == 0);
  REQUIRE(wwhale({"generate", "-d", "4", "--layers-dir", dir.str(), "--quiet"}).code == 0);
  REQUIRE(wwhale({"generate", "-d", "5", "--layers-dir", dir.str(), "--quiet"}).code == 0);

  auto r = wwhale({"pad-layers", "--from-d", "3", "--to-d", "4", "-k", "2", "--layers-dir", dir.str()});
  CHECK(r.code == 0);
  auto l = io::read_layer(io::layer_path(dir.path(), Dimension(4), 2));
  REQUIRE(l.entries.size() == 1);
  CHECK(l.entries[0].point == Point(Dimension(4), {0, 0, 1, 2}));

  r = wwhale({"pad-layers", "--from-d", "4", "--to-d", "5", "-k", "4", "--layers-dir", dir.str()});
  CHECK(r.code == 0);
  l = io::read_layer(io::layer_path(dir.path(), Dimension(5), 4));
  REQUIRE(l.entries.size() == 3);
  CHECK(l.entries[0].point == Point(Dimension(5), {0, 0, 1, 3, 3}));
  CHECK(l.entries[1].point == Point(Dimension(5), {0, 0, 2, 2, 4}));
  CHECK(l.entries[2].point == Point(Dimension(5), {0, 1, 1, 1, 4}));

  // Exact up to k = from-d; resuming from the padded layer matches a fresh run.
  TempDir fresh;
  REQUIRE(wwhale({"generate", "-d", "6", "--layers-dir", fresh.str(), "--quiet"}).code == 0);
  r = wwhale({"pad-layers", "--from-d", "5", "--to-d", "6", "-k", "5", "--layers-dir", dir.str()});
  CHECK(r.code == 0);
  CHECK(slurp(io::layer_path(dir.path(), Dimension(6), 5)) == slurp(io::layer_path(fresh.path(), Dimension(6), 5)));

  // Past k = from-d the padded layer misses vertices (8 of 10 at 5 -> 6,
  // k = 8), so the cross-check refuses to write it.
  r = wwhale({"pad-layers", "--from-d", "5", "--to-d", "6", "-k", "8", "--layers-dir", dir.str()});
  CHECK(r.code == cli::kConsistencyError);
  CHECK(r.err.find("8 entries") != std::string::npos);
  CHECK(r.err.find("10") != std::string::npos);
  CHECK_FALSE(fs::exists(io::layer_path(dir.path(), Dimension(6), 8)));

  CHECK(wwhale({"pad-layers", "--from-d", "5", "--to-d", "7", "-k", "8", "--layers-dir", dir.str()}).code ==
        cli::kConfigError);
  CHECK(wwhale({"pad-layers", "--from-d", "3", "--to-d", "3", "-k", "2", "--layers-dir", dir.str()}).code ==
        cli::kConfigError);
  TempDir empty;
  CHECK(wwhale({"pad-layers", "--from-d", "3", "--to-d", "4", "-k", "2", "--layers-dir", empty.str()}).code ==
        cli::kIoError);
}
