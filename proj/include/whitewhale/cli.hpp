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

// The wwhale command line: generate, merge, edges, degrees, verify and
// pad-layers. Each command is also callable directly with an options
// struct; run() parses an argument vector and dispatches.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "whitewhale/engine.hpp"

namespace ww::cli {

namespace fs = std::filesystem;

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kConfigError = 2,
  kIoError = 3,
  kConsistencyError = 4,
};

struct GenerateOptions {
  int d = 0;
  fs::path layers_dir = ".";
  std::optional<int> max_layer;
  int threads = 1;
  // Expand the single layer resume_from (default 0) and write a partial
  // next layer.
  std::optional<engine::Shard> shard;
  std::optional<int> resume_from;
  bool store_certificates = false;
  bool i_know = false;  // required for d >= 8
  bool progress = true;
};

struct MergeOptions {
  int d = 0;
  int k = 0;
  int shards = 0;
  fs::path layers_dir = ".";
};

struct EdgesOptions {
  int d = 0;
  fs::path layers_dir = ".";
  int threads = 1;
};

struct DegreesOptions {
  int d = 0;
  fs::path layers_dir = ".";
  int threads = 1;
};

struct VerifyOptions {
  int d = 0;
  std::string mode = "all";  // tables | bruteforce | families | all
  std::optional<fs::path> layers_dir;  // count-only comparison for d >= 7
  int threads = 1;
};

struct PadOptions {
  int from_d = 0;
  int to_d = 0;
  int k = 0;
  fs::path layers_dir = ".";
};

int cmd_generate(const GenerateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_merge(const MergeOptions& opt, std::ostream& out, std::ostream& err);
int cmd_edges(const EdgesOptions& opt, std::ostream& out, std::ostream& err);
int cmd_degrees(const DegreesOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);
int cmd_pad_layers(const PadOptions& opt, std::ostream& out, std::ostream& err);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ww::cli
