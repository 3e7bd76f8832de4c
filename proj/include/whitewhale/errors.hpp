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

#pragma once

#include <stdexcept>
#include <string>

namespace ww {

// Argument outside the domain of an operation (bad dimension, id, k, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Filesystem trouble: missing files, unwritable directories, short reads.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A layer file whose header or body does not match its recorded checksum.
class ChecksumError : public IoError {
 public:
  ChecksumError(const std::string& file, const std::string& detail)
      : IoError("checksum error in " + file + ": " + detail), file_(file) {}
  const std::string& file() const noexcept { return file_; }

 private:
  std::string file_;
};

// An internal invariant failed (e.g. an odd orbit size where only even ones
// can occur). Always a bug or corrupted input, never a user error.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ww
