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

#ifndef STAGECUT_BASELINES_H_
#define STAGECUT_BASELINES_H_

#include <cstdint>
#include <vector>

#include "stagecut/costs.h"
#include "stagecut/optimizer.h"
#include "stagecut/potential.h"
#include "stagecut/shots.h"

namespace stagecut {

// Frames [start_frame, end_frame) during which `speakers` talk; empty means
// silence.
struct SpeakerInterval {
  int start_frame = 0;
  int end_frame = 0;
  std::vector<int> speakers;  // actor ids
  bool operator==(const SpeakerInterval&) const = default;
};

// A new shot every l seconds after the establishing master, drawn uniformly
// from the rushes available over the whole block (excluding the shot on
// screen). Deterministic in `seed`.
EditDecisionList EditRandom(const RushSet& rushes, const CostParams& params,
                            std::uint64_t seed);

// The all-actor full shot for the entire video; no establishing master.
EditDecisionList EditWide(const RushSet& rushes);

// Highest-potential rush, re-evaluated every frame once the current shot has
// lasted l seconds. Ties go to the smaller window, then the lower id.
EditDecisionList EditGreedyGaze(const PotentialTable& table, const RushSet& rushes,
                                const CostParams& params);

// Shows whoever speaks (their exact-subset shot when several do), holds
// through pauses, and goes wide after `silence_secs` of continuous silence.
// Switches are delayed until the current shot has lasted l seconds.
EditDecisionList EditSpeaker(const std::vector<SpeakerInterval>& intervals,
                             const RushSet& rushes, const CostParams& params,
                             double silence_secs = 10.0);

}  // namespace stagecut

#endif  // STAGECUT_BASELINES_H_
