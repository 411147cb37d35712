// Copyright 2026 The StageCut Authors
//
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

// Shared fixtures: synthetic projects on disk and engines over them.

#ifndef STAGECUT_TESTS_SUPPORT_H_
#define STAGECUT_TESTS_SUPPORT_H_

#include <atomic>
#include <filesystem>
#include <string>
#include <unistd.h>

#include "stagecut/engine.h"

namespace support {

namespace fs = std::filesystem;

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("stagecut-" + tag + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

inline stagecut::SyntheticOptions Demo(std::uint64_t seed, int actors = 3, double secs = 60.0) {
  stagecut::SyntheticOptions o;
  o.seed = seed;
  o.actors = actors;
  o.secs = secs;
  return o;
}

// Writes the synthetic project to `dir` and loads it back through the
// manifest, exactly as the command-line tool would.
inline stagecut::Engine LoadSynthetic(const stagecut::SyntheticOptions& o, const fs::path& dir,
                                      stagecut::Exec exec = stagecut::Exec::kParallel) {
  const fs::path manifest = stagecut::WriteProject(stagecut::GenerateSyntheticProject(o), dir);
  return stagecut::Engine::Load(manifest, {}, {}, exec);
}

inline stagecut::EditRequest Request(stagecut::Strategy s, stagecut::Json overrides = stagecut::Json::object()) {
  stagecut::EditRequest r;
  r.strategy = s;
  r.overrides = std::move(overrides);
  return r;
}

}  // namespace support

#endif  // STAGECUT_TESTS_SUPPORT_H_
