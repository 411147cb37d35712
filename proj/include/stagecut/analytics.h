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

#ifndef STAGECUT_ANALYTICS_H_
#define STAGECUT_ANALYTICS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stagecut/baselines.h"
#include "stagecut/costs.h"
#include "stagecut/optimizer.h"
#include "stagecut/scene.h"
#include "stagecut/shots.h"

namespace stagecut {

// What an EDL needs to know about a rush once detached from the RushSet.
struct RushInfo {
  int id = 0;
  std::vector<int> actor_ids;  // empty for the master
  Scale scale = Scale::kMaster;
  std::string label;
  bool operator==(const RushInfo&) const = default;
};

std::vector<RushInfo> DescribeRushes(const RushSet& rushes);

// Window on screen at each frame of the edit.
std::vector<CropWindow> SelectedWindows(const EditDecisionList& edl, const RushSet& rushes);

struct EditStats {
  int frame_count = 0;
  int segment_count = 0;
  int cut_count = 0;
  double mean_shot_secs = 0.0;
  double min_shot_secs = 0.0;
  double max_shot_secs = 0.0;
  // segments per shot size: "1", "2", ... and "master"
  std::map<std::string, int> size_histogram;
  int jump_cut_count = 0;
  bool min_length_violated = false;  // some non-final segment shorter than l
  std::optional<CostBreakdown> cost;
};

// Jump cuts are cuts whose windows on either side of the boundary overlap
// with IoU >= beta.
EditStats CutStats(const EditDecisionList& edl, std::span<const CropWindow> frame_windows,
                   const std::vector<RushInfo>& rushes, const CostParams& params);

// Fraction of frames assigned the same rush. Throws DataError on a length
// mismatch.
double Compare(const EditDecisionList& a, const EditDecisionList& b);

struct SyntheticOptions {
  std::uint64_t seed = 1;
  int actors = 3;
  double secs = 60.0;
  double fps = 24.0;
  int width = 1920;
  int height = 1080;
  int users = 5;
  Size display{1920, 1080};
  double jitter_frac = 0.02;  // gaze noise, fraction of width
  double walk_speed_frac = 0.035;  // rms walking speed, widths per second
  std::optional<int> lock_attention;  // actor index every epoch targets
};

struct SyntheticProject {
  SceneDims dims;
  Size display;
  std::vector<ActorTrack> tracks;
  std::vector<RawGazeSample> gaze;
  std::vector<SpeakerInterval> speakers;
};

// Random-walk performers, epoch-switching attention sampled at 60 Hz per
// virtual viewer, and speakers following the attention epochs.
SyntheticProject GenerateSyntheticProject(const SyntheticOptions& opts);

}  // namespace stagecut

#endif  // STAGECUT_ANALYTICS_H_
