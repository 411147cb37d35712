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

#ifndef STAGECUT_CONFIG_H_
#define STAGECUT_CONFIG_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "stagecut/costs.h"
#include "stagecut/potential.h"
#include "stagecut/shots.h"

namespace stagecut {

using Json = nlohmann::ordered_json;

// Every tunable of the engine. The scene's fps is copied into cost.fps at
// load time and is not part of the config file.
struct EngineConfig {
  FramingConfig framing;
  PotentialConfig potential;
  CostParams cost;
  double gap_fill_secs = 1.0;
  double silence_secs = 10.0;
  double brute_force_limit = 1e7;

  void Validate() const;
};

// Keys in file order.
const std::vector<std::string>& ConfigKeys();
// Keys that an edit request may override.
bool IsCostKey(std::string_view key);

// Flat object with every key. Unless `resolved`, an unset age cap is
// written as "auto" so that it keeps following m.
Json ConfigToJson(const EngineConfig& cfg, bool resolved = true);
// Applies the keys present in `j` on top of `base`. Unknown keys and
// mistyped values throw ParamError.
EngineConfig ConfigFromJson(const Json& j, EngineConfig base = {});
void ApplyOverride(EngineConfig& cfg, std::string_view key, const Json& value);
// "key=value" from the command line; numbers are parsed, anything else is
// taken as a string.
void ApplyOverrideText(EngineConfig& cfg, std::string_view assignment);

}  // namespace stagecut

#endif  // STAGECUT_CONFIG_H_
