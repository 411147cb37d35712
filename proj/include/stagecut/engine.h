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

#ifndef STAGECUT_ENGINE_H_
#define STAGECUT_ENGINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stagecut/edl_io.h"
#include "stagecut/parallel.h"
#include "stagecut/potential.h"
#include "stagecut/project_io.h"
#include "stagecut/shots.h"

namespace stagecut {

enum class Strategy { kGazed, kRandom, kWide, kGreedy, kSpeaker };

std::string_view StrategyName(Strategy s);
std::optional<Strategy> ParseStrategy(std::string_view name);

struct EditRequest {
  Strategy strategy = Strategy::kGazed;
  Json overrides = Json::object();  // cost keys only
  std::uint64_t seed = 1;
};

// A loaded project with its rushes and potential table. Immutable after
// construction; Run may be called concurrently.
class Engine {
 public:
  explicit Engine(Project project, const SubsetFilter& filter = {},
                  Exec exec = Exec::kParallel);

  // Parses `whitelist` against the project's actor ids.
  static Engine Load(const std::filesystem::path& manifest,
                     const std::vector<std::string>& overrides = {},
                     std::string_view whitelist = {}, Exec exec = Exec::kParallel);

  const Project& project() const { return project_; }
  const RushSet& rushes() const { return rushes_; }
  const PotentialTable& potentials() const { return table_; }
  const std::vector<RushInfo>& rush_info() const { return info_; }

  // Config with the request's overrides applied and validated. Throws
  // ParamError for keys that are unknown or not edit parameters.
  EngineConfig ResolveConfig(const Json& overrides) const;

  // Throws ParamError, DataError or InfeasibleError.
  EdlDocument Run(const EditRequest& req) const;

 private:
  Project project_;
  Exec exec_;
  RushSet rushes_;
  PotentialTable table_;
  std::vector<RushInfo> info_;
};

}  // namespace stagecut

#endif  // STAGECUT_ENGINE_H_
