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

#ifndef STAGECUT_SHOTS_H_
#define STAGECUT_SHOTS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stagecut/geometry.h"
#include "stagecut/parallel.h"
#include "stagecut/scene.h"

namespace stagecut {

enum class Scale { kMCU, kMS, kFS, kMaster };

std::string_view ScaleName(Scale s);
std::optional<Scale> ParseScale(std::string_view name);

// Bit i set = i-th actor (actors ordered by id) is in the shot.
using SubsetMask = std::uint32_t;

inline int SubsetSize(SubsetMask m) { return __builtin_popcount(m); }

struct FramingConfig {
  double ms_height_frac = 0.55;   // head to waist
  double mcu_height_frac = 0.40;  // head to mid-chest
  double headroom_frac = 0.10;    // of window height, above the box top
  double fs_padding_frac = 0.05;  // of union size, on each side
  double smooth_w1 = 10.0;
  double smooth_w2 = 400.0;  // at 24 fps
  Scale single_scale = Scale::kMS;
  int max_actors = 8;

  void Validate() const;
  // Second-difference weight rescaled by (fps / 24)^2.
  double W2At(double fps) const { return smooth_w2 * (fps / 24.0) * (fps / 24.0); }
};

// Non-empty subsets of n actors ordered by size, then lexicographically by
// member indices. Throws ParamError when n exceeds max_actors.
std::vector<SubsetMask> EnumerateSubsets(int n, int max_actors = 8);

// MS / MCU framing of one actor: height is a fraction of the box height,
// the top edge sits headroom above the box top, horizontally centered.
CropWindow FrameSingle(const BBox& box, Scale scale, const FramingConfig& cfg,
                       Size frame);

// Smallest master-aspect window containing the padded union of boxes,
// before any clamping.
CropWindow FrameGroupUnclamped(std::span<const BBox> boxes,
                               const FramingConfig& cfg, double aspect);
// Clamped version; a window larger than the frame becomes the full frame.
CropWindow FrameGroup(std::span<const BBox> boxes, const FramingConfig& cfg,
                      Size frame);

// Restricts which actor subsets get a rush.
struct SubsetFilter {
  std::vector<SubsetMask> masks;
  std::vector<int> sizes;

  bool Empty() const { return masks.empty() && sizes.empty(); }
  bool Accepts(SubsetMask m) const;
  // Comma-separated tokens: "1+3" (actor ids) or "size:2" (every subset of
  // that cardinality).
  static SubsetFilter Parse(std::string_view text, const std::vector<int>& actor_ids);
};

struct Rush {
  int id = 0;
  SubsetMask subset = 0;  // 0 for the master
  Scale scale = Scale::kMaster;
  std::string label;
  std::vector<CropWindow> windows;
  std::vector<std::uint8_t> available;

  bool IsMaster() const { return scale == Scale::kMaster; }
  bool AvailableAt(int t) const { return available[t] != 0; }
  bool AvailableOver(int begin, int end) const;
  int FrameCount() const { return static_cast<int>(windows.size()); }
};

struct RushSet {
  Size frame;
  double fps = 0.0;
  int frame_count = 0;
  std::vector<int> actor_ids;
  std::vector<std::string> actor_labels;
  std::vector<Rush> rushes;   // selectable shots, master last
  std::vector<Rush> singles;  // one per actor, independent of any filter
  int master_index = -1;
  int full_index = -1;  // rush covering every actor, -1 when filtered out

  int ActorCount() const { return static_cast<int>(actor_ids.size()); }
  int RushCount() const { return static_cast<int>(rushes.size()); }
  SubsetMask FullMask() const {
    return ActorCount() >= 32 ? ~SubsetMask{0} : (SubsetMask{1} << ActorCount()) - 1;
  }
  std::vector<int> SubsetActorIds(SubsetMask m) const;
  std::string SubsetLabel(SubsetMask m) const;
  int FindRush(SubsetMask m) const;  // -1 if absent
};

// Composes, stabilizes and clamps one rush per accepted subset, plus the
// master. A multi-actor rush needs all of its actors tracked at a frame;
// the all-actor rush instead frames whichever actors are tracked.
RushSet GenerateRushes(const std::vector<ActorTrack>& tracks, const SceneDims& dims,
                       const FramingConfig& cfg, const SubsetFilter& filter = {},
                       Exec exec = Exec::kParallel);

}  // namespace stagecut

#endif  // STAGECUT_SHOTS_H_
