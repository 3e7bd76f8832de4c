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

#include "whitewhale/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "whitewhale/analytics.hpp"
#include "whitewhale/errors.hpp"
#include "whitewhale/io.hpp"
#include "whitewhale/known.hpp"

namespace ww::cli {
namespace {

using engine::LayerRecord;
using Clock = std::chrono::steady_clock;

template <typename F>
int guarded(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kConsistencyError;
  }
}

io::LayerSummary summary_of(const LayerRecord& l) {
  return {l.k, l.entries.size(), l.orbit_sum()};
}

io::Summary make_summary(Dimension d, const std::vector<io::LayerSummary>& layers, double seconds) {
  io::Summary s;
  s.d = d.value();
  s.layers = layers;
  for (const auto& l : layers) {
    s.a += l.orbit_sum;
    s.o += l.canonical;
  }
  s.wall_seconds = seconds;
  return s;
}

LayerRecord read_layer_checked(const fs::path& dir, Dimension d, int k) {
  const fs::path p = io::layer_path(dir, d, k);
  if (!fs::exists(p)) throw IoError("missing layer file " + p.string());
  LayerRecord l = io::read_layer(p);
  if (l.d != d || l.k != k) throw IoError(p.string() + ": header does not match its file name");
  return l;
}

std::vector<LayerRecord> read_all_layers(const fs::path& dir, Dimension d) {
  std::vector<LayerRecord> out;
  for (int k = 0; k <= d.last_layer(); ++k) out.push_back(read_layer_checked(dir, d, k));
  return out;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Checker {
  std::ostream& out;
  int failures = 0;

  void operator()(const std::string& name, bool ok, const std::string& detail = {}) {
    out << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) out << ": " << detail;
    out << '\n';
    if (!ok) ++failures;
  }
};

std::string vs(std::uint64_t got, std::uint64_t want) {
  return std::to_string(got) + " (expected " + std::to_string(want) + ")";
}

void verify_tables(Dimension d, const VerifyOptions& opt, Checker& check) {
  const auto ref = known::sizes(d.value());
  if (!ref) throw DomainError("no reference values for d=" + std::to_string(d.value()));
  std::vector<LayerRecord> layers;
  if (d.value() >= 7) {
    if (!opt.layers_dir) {
      throw DomainError("tables mode needs --layers-dir for d >= 7 (count-only comparison)");
    }
    layers = read_all_layers(*opt.layers_dir, d);
  } else {
    engine::RunConfig cfg(d);
    cfg.workers = opt.threads;
    layers = engine::generate_all(cfg);
  }
  std::uint64_t a = 0, o = 0;
  for (const auto& l : layers) {
    a += l.orbit_sum();
    o += l.entries.size();
  }
  const std::string tag = "d=" + std::to_string(d.value());
  check("vertex count a(" + std::to_string(d.value()) + ")", a == ref->a, vs(a, ref->a));
  check("orbit count o(" + std::to_string(d.value()) + ")", o == ref->o, vs(o, ref->o));

  if (d.value() >= 7) {
    const fs::path sp = io::summary_path(*opt.layers_dir);
    if (fs::exists(sp)) {
      const auto s = io::read_summary(sp);
      if (s.e) check("edge count e(" + std::to_string(d.value()) + ")", *s.e == ref->e, vs(*s.e, ref->e));
    }
    return;
  }

  std::vector<analytics::DegreeLayer> deg;
  for (const auto& l : layers) deg.push_back(analytics::compute_degrees(l, opt.threads));
  const auto report = analytics::count_edges(d, deg);
  check("edge count e(" + std::to_string(d.value()) + ")", report.e_total == ref->e,
        vs(report.e_total, ref->e));

  const auto rows = known::rows(d.value());
  if (rows.empty()) return;
  std::size_t r = 0;
  bool points = true, orbits = true, chains = true, below = true, above = true;
  for (const auto& layer : deg) {
    for (const auto& row : layer.rows) {
      if (r >= rows.size()) {
        points = false;
        break;
      }
      const auto& want = rows[r++];
      const auto c = row.canonical.point.coords();
      points = points && want.k == layer.k && std::equal(c.begin(), c.end(), want.point.begin(), want.point.end());
      orbits = orbits && row.canonical.orbit_size == want.orbit;
      if (want.k > 0) {
        const auto& parents = layers[static_cast<std::size_t>(want.k - 1)].entries;
        chains = chains && want.parent >= 1 && static_cast<std::size_t>(want.parent) <= parents.size() &&
                 parents[static_cast<std::size_t>(want.parent - 1)].subset.with(want.added) ==
                     row.canonical.subset;
      }
      below = below && row.deg_below == want.deg_below;
      above = above && row.deg_above == want.deg_above;
    }
  }
  points = points && r == rows.size();
  check("layer table points " + tag, points, std::to_string(r) + " rows");
  check("layer table orbit sizes " + tag, orbits);
  check("layer table subset chains " + tag, chains);
  check("degree table below " + tag, below);
  check("degree table above " + tag, above);
}

void verify_bruteforce(Dimension d, Checker& check) {
  if (d.value() > 4) throw DomainError("bruteforce mode needs d <= 4");
  const auto brute = analytics::brute_force_vertices(d);
  std::set<SubsetMask> expanded;
  for (const auto& l : engine::generate_all(engine::RunConfig(d))) {
    for (const auto& e : l.entries) {
      const auto m = analytics::orbit_members(e, d);
      expanded.insert(m.begin(), m.end());
    }
  }
  const std::set<SubsetMask> bset(brute.begin(), brute.end());
  check("brute force count d=" + std::to_string(d.value()),
        brute.size() == known::sizes(d.value())->a, vs(brute.size(), known::sizes(d.value())->a));
  check("brute force set equals layered set d=" + std::to_string(d.value()), bset == expanded);
}

void verify_families(Dimension d, Checker& check) {
  const int n = d.value();
  for (int k = 1; k < n; ++k) {
    const std::string tag = "d=" + std::to_string(n) + " k=" + std::to_string(k);
    const auto want = analytics::expected_family_degrees(d, k);
    analytics::DegreeCalculator calc(d);
    const SubsetMask u = analytics::family_U(d, k);
    const analytics::FamilyDegrees got{calc.below(u), calc.above(u), 0};
    const int degree = got.below + got.above;
    check("U degrees " + tag, got.below == want.below && got.above == want.above && degree == want.degree,
          "(" + std::to_string(got.below) + "," + std::to_string(got.above) + "," +
              std::to_string(degree) + ") expected (" + std::to_string(want.below) + "," +
              std::to_string(want.above) + "," + std::to_string(want.degree) + ")");
    const auto c = analytics::family_U_certificates(d, k);
    check("U certificates " + tag,
          lp::verify_integer_certificate(c.own, c.own_subset, d) &&
              lp::verify_integer_certificate(c.below, c.below_subset, d) &&
              lp::verify_integer_certificate(c.above, c.above_subset, d));
  }
  for (int k = 1; k <= n; ++k) {
    const SubsetMask w = analytics::family_W(d, k);
    const bool ok = w.count() == (std::size_t{1} << k) - 1 && lp::vertex_feasible(w, d).feasible();
    check("W vertex in layer 2^k-1 d=" + std::to_string(n) + " k=" + std::to_string(k), ok);
  }
}

engine::Shard parse_shard(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) throw std::invalid_argument(s);
    return {std::stoi(s.substr(0, slash)), std::stoi(s.substr(slash + 1))};
  } catch (const std::logic_error&) {
    throw DomainError("shard must look like i/n, got '" + s + "'");
  }
}

}  // namespace

int cmd_generate(const GenerateOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Dimension d(opt.d);
    if (opt.d >= 8 && !opt.i_know) {
      err << "error: d=" << opt.d
          << " is far beyond desk scale (months of CPU time); pass --i-know to run anyway\n";
      return static_cast<int>(kConfigError);
    }
    engine::RunConfig cfg(d);
    if (opt.max_layer) cfg.max_layer = *opt.max_layer;
    cfg.workers = opt.threads;
    cfg.shard = opt.shard;
    cfg.resume_from = opt.resume_from;
    cfg.store_certificates = opt.store_certificates;
    cfg.progress = opt.progress;
    cfg.validate();
    if (opt.shard && opt.store_certificates) {
      throw DomainError("--store-certificates cannot be combined with --shard");
    }
    fs::create_directories(opt.layers_dir);
    const auto start = Clock::now();

    if (opt.shard) {
      const int k = opt.resume_from.value_or(0);
      if (k >= cfg.max_layer) throw DomainError("nothing to expand past layer " + std::to_string(k));
      const fs::path in_path = io::layer_path(opt.layers_dir, d, k);
      const LayerRecord in = (k == 0 && !fs::exists(in_path)) ? engine::initial_layer(d)
                                                              : read_layer_checked(opt.layers_dir, d, k);
      const engine::Context ctx(d);
      engine::LayerStats stats;
      const LayerRecord part = engine::expand_layer(in, cfg, ctx, &stats);
      if (opt.progress) engine::print_progress(err, stats);
      const fs::path p = io::shard_path(opt.layers_dir, d, k + 1, *opt.shard);
      io::write_layer(p, part);
      out << "wrote " << p.string() << " (" << part.entries.size() << " entries)\n";
      return static_cast<int>(kOk);
    }

    std::vector<io::LayerSummary> summaries;
    LayerRecord current = engine::initial_layer(d, opt.store_certificates);
    auto persist = [&](const LayerRecord& layer) {
      io::write_layer(io::layer_path(opt.layers_dir, d, layer.k), layer);
      if (opt.store_certificates) {
        io::write_certificates(io::certificate_path(opt.layers_dir, d, layer.k), layer);
      }
      summaries.push_back(summary_of(layer));
      io::write_summary(io::summary_path(opt.layers_dir), make_summary(d, summaries, seconds_since(start)));
    };
    if (opt.resume_from) {
      for (int k = 0; k <= *opt.resume_from; ++k) {
        LayerRecord l = read_layer_checked(opt.layers_dir, d, k);
        summaries.push_back(summary_of(l));
        if (k == *opt.resume_from) current = std::move(l);
      }
    } else {
      persist(current);
    }
    engine::generate_from(current, cfg, [&](const LayerRecord& l, const engine::LayerStats&) { persist(l); });
    const io::Summary s = make_summary(d, summaries, seconds_since(start));
    io::write_summary(io::summary_path(opt.layers_dir), s);
    out << "d=" << opt.d << " layers 0.." << cfg.max_layer << ": a=" << s.a << " o=" << s.o << " ("
        << s.wall_seconds << " s)\n";
    return static_cast<int>(kOk);
  });
}

int cmd_merge(const MergeOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Dimension d(opt.d);
    if (opt.shards < 1) throw DomainError("--shards must be positive");
    std::vector<LayerRecord> parts;
    for (int i = 0; i < opt.shards; ++i) {
      const fs::path p = io::shard_path(opt.layers_dir, d, opt.k, {i, opt.shards});
      if (!fs::exists(p)) throw IoError("missing shard file " + p.string());
      parts.push_back(io::read_layer(p));
    }
    const LayerRecord merged = engine::merge_layers(parts);
    if (merged.d != d || merged.k != opt.k) throw IoError("shard headers do not match d and k");
    const fs::path p = io::layer_path(opt.layers_dir, d, opt.k);
    io::write_layer(p, merged);
    out << "wrote " << p.string() << " (" << merged.entries.size() << " entries)\n";
    return static_cast<int>(kOk);
  });
}

int cmd_edges(const EdgesOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Dimension d(opt.d);
    const auto layers = read_all_layers(opt.layers_dir, d);
    std::vector<analytics::DegreeLayer> deg;
    for (const auto& l : layers) deg.push_back(analytics::compute_degrees(l, opt.threads, true, false));
    const auto report = analytics::count_edges(d, deg);

    const fs::path csv = opt.layers_dir / ("edges_d" + std::to_string(opt.d) + ".csv");
    std::ostringstream os;
    io::write_degree_csv(os, deg, true);
    io::write_file(csv, os.str());

    const fs::path sp = io::summary_path(opt.layers_dir);
    io::Summary s;
    if (fs::exists(sp) && io::read_summary(sp).d == opt.d) {
      s = io::read_summary(sp);
    } else {
      std::vector<io::LayerSummary> ls;
      for (const auto& l : layers) ls.push_back(summary_of(l));
      s = make_summary(d, ls, 0);
    }
    s.e = report.e_total;
    io::write_summary(sp, s);

    for (const auto& t : report.per_layer) out << "layer " << t.k << ": " << t.weighted_below << '\n';
    out << "middle: " << report.middle_term << '\n';
    out << "e(" << opt.d << ") = " << report.e_total << '\n';
    const auto ratios = analytics::size_ratios(d, s.a, report.e_total, s.o);
    out << std::fixed << std::setprecision(3) << "2e/a = " << ratios.average_degree
        << ", a/(2 d! o) = " << 100 * ratios.orbit_fill << "%\n";
    return static_cast<int>(kOk);
  });
}

int cmd_degrees(const DegreesOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Dimension d(opt.d);
    const auto layers = read_all_layers(opt.layers_dir, d);
    std::vector<analytics::DegreeLayer> deg;
    for (const auto& l : layers) deg.push_back(analytics::compute_degrees(l, opt.threads));
    const fs::path csv = opt.layers_dir / ("degrees_d" + std::to_string(opt.d) + ".csv");
    std::ostringstream os;
    io::write_degree_csv(os, deg);
    io::write_file(csv, os.str());

    int best = 0;
    std::vector<std::string> argmax;
    for (const auto& layer : deg) {
      for (const auto& row : layer.rows) {
        if (row.degree > best) {
          best = row.degree;
          argmax.clear();
        }
        if (row.degree == best) argmax.push_back("(" + row.canonical.point.to_string() + ")");
      }
    }
    out << "wrote " << csv.string() << '\n';
    out << "maximum degree " << best << " at";
    for (const auto& p : argmax) out << ' ' << p;
    out << '\n';
    const int k = opt.d / 2;
    const auto u = comb::canonicalize(analytics::family_U(d, k), d);
    for (const auto& row : deg[u.subset.count()].rows) {
      if (row.canonical.point == u.point) {
        out << "U family k=" << k << " at (" << u.point.to_string() << "): degree " << row.degree
            << (row.degree == best ? " (maximum)" : " (below maximum)") << '\n';
      }
    }
    return static_cast<int>(kOk);
  });
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Dimension d(opt.d);
    Checker check{out};
    const std::string& m = opt.mode;
    if (m != "tables" && m != "bruteforce" && m != "families" && m != "all") {
      throw DomainError("unknown verify mode '" + m + "'");
    }
    if (m == "tables" || m == "all") verify_tables(d, opt, check);
    if (m == "bruteforce" || (m == "all" && opt.d <= 4)) verify_bruteforce(d, check);
    if (m == "families" || m == "all") verify_families(d, check);
    out << (check.failures == 0 ? "all checks passed\n" : std::to_string(check.failures) + " check(s) failed\n");
    return static_cast<int>(check.failures == 0 ? kOk : kVerifyFailed);
  });
}

int cmd_pad_layers(const PadOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Dimension from(opt.from_d), to(opt.to_d);
    if (opt.to_d <= opt.from_d) throw DomainError("--to-d must exceed --from-d");
    if (opt.k < 0 || opt.k > from.last_layer()) {
      throw DomainError("k must lie in [0, " + std::to_string(from.last_layer()) + "]");
    }
    if (opt.k > opt.from_d && opt.to_d > 6) {
      throw DomainError("padding is only known to be exact for k <= from-d; refusing k=" +
                        std::to_string(opt.k) + " without a fresh run to compare against");
    }
    const LayerRecord src = read_layer_checked(opt.layers_dir, from, opt.k);
    LayerRecord padded{to, opt.k, {}};
    for (const auto& e : src.entries) {
      const auto ids = e.subset.ids();
      padded.entries.push_back(comb::canonicalize(SubsetMask::of(to.generator_count(), ids), to));
    }
    if (opt.to_d <= 6) {
      engine::RunConfig cfg(to);
      cfg.max_layer = opt.k;
      LayerRecord fresh{to, 0, {}};
      engine::generate(cfg, [&](const LayerRecord& l, const engine::LayerStats&) {
        if (l.k == opt.k) fresh = l;
      });
      if (fresh != padded) {
        err << "cross-check failed: padded layer has " << padded.entries.size()
            << " entries, a fresh d=" << opt.to_d << " run has " << fresh.entries.size()
            << "; not writing it\n";
        return static_cast<int>(kConsistencyError);
      }
      out << "cross-check against a fresh d=" << opt.to_d << " run: match\n";
    }
    const fs::path p = io::layer_path(opt.layers_dir, to, opt.k);
    io::write_layer(p, padded);
    out << "wrote " << p.string() << " (" << padded.entries.size() << " entries)\n";
    return static_cast<int>(kOk);
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Layered vertex generation for the White Whale zonotopes", "wwhale"};
  app.require_subcommand(1);

  GenerateOptions gen;
  std::string shard;
  std::string gen_dir = ".";
  auto* g = app.add_subcommand("generate", "Generate canonical layers and summary.json");
  g->add_option("-d", gen.d, "Dimension")->required();
  g->add_option("--layers-dir", gen_dir, "Directory for layer files");
  g->add_option("--max-layer", gen.max_layer, "Last layer to generate");
  g->add_option("--threads", gen.threads, "Worker threads");
  g->add_option("--shard", shard, "Expand one layer for shard i/n");
  g->add_option("--resume-from", gen.resume_from, "Continue from this persisted layer");
  g->add_flag("--store-certificates", gen.store_certificates, "Write certificate files");
  g->add_flag("--i-know", gen.i_know, "Allow d >= 8");
  bool quiet = false;
  g->add_flag("--quiet", quiet, "No progress lines");

  MergeOptions merge;
  std::string merge_dir = ".";
  auto* mg = app.add_subcommand("merge", "Merge shard files of one layer");
  mg->add_option("-d", merge.d, "Dimension")->required();
  mg->add_option("-k", merge.k, "Layer")->required();
  mg->add_option("--shards", merge.shards, "Number of shards")->required();
  mg->add_option("--layers-dir", merge_dir, "Directory for layer files");

  EdgesOptions edges;
  std::string edges_dir = ".";
  auto* ed = app.add_subcommand("edges", "Count edges from persisted layers");
  ed->add_option("-d", edges.d, "Dimension")->required();
  ed->add_option("--layers-dir", edges_dir, "Directory for layer files");
  ed->add_option("--threads", edges.threads, "Worker threads");

  DegreesOptions degrees;
  std::string degrees_dir = ".";
  auto* dg = app.add_subcommand("degrees", "Degree table from persisted layers");
  dg->add_option("-d", degrees.d, "Dimension")->required();
  dg->add_option("--layers-dir", degrees_dir, "Directory for layer files");
  dg->add_option("--threads", degrees.threads, "Worker threads");

  VerifyOptions verify;
  std::string verify_dir;
  auto* vf = app.add_subcommand("verify", "Compare against reference values");
  vf->add_option("-d", verify.d, "Dimension")->required();
  vf->add_option("--mode", verify.mode, "tables|bruteforce|families|all")
      ->check(CLI::IsMember({"tables", "bruteforce", "families", "all"}));
  vf->add_option("--layers-dir", verify_dir, "Layer files for count-only checks at d >= 7");
  vf->add_option("--threads", verify.threads, "Worker threads");

  PadOptions pad;
  std::string pad_dir = ".";
  auto* pd = app.add_subcommand("pad-layers", "Re-embed a layer in a higher dimension");
  pd->add_option("--from-d", pad.from_d, "Source dimension")->required();
  pd->add_option("--to-d", pad.to_d, "Target dimension")->required();
  pd->add_option("-k", pad.k, "Layer")->required();
  pd->add_option("--layers-dir", pad_dir, "Directory for layer files");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  if (g->parsed()) {
    gen.layers_dir = gen_dir;
    gen.progress = !quiet;
    if (!shard.empty()) {
      try {
        gen.shard = parse_shard(shard);
      } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
      }
    }
    return cmd_generate(gen, out, err);
  }
  if (mg->parsed()) {
    merge.layers_dir = merge_dir;
    return cmd_merge(merge, out, err);
  }
  if (ed->parsed()) {
    edges.layers_dir = edges_dir;
    return cmd_edges(edges, out, err);
  }
  if (dg->parsed()) {
    degrees.layers_dir = degrees_dir;
    return cmd_degrees(degrees, out, err);
  }
  if (vf->parsed()) {
    if (!verify_dir.empty()) verify.layers_dir = verify_dir;
    return cmd_verify(verify, out, err);
  }
  pad.layers_dir = pad_dir;
  return cmd_pad_layers(pad, out, err);
}

}  // namespace ww::cli
