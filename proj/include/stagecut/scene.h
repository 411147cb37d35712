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

#ifndef STAGECUT_SCENE_H_
#define STAGECUT_SCENE_H_

#include <optional>
#include <string>
#include <vector>

#include "stagecut/geometry.h"

namespace stagecut {

struct SceneDims {
  int width = 0;
  int height = 0;
  double fps = 0.0;
  int frame_count = 0;

  Size FrameSize() const { return {width, height}; }
  double Aspect() const { return FrameSize().Aspect(); }
  double DurationSecs() const { return frame_count / fps; }
  // Throws DataError unless every field is positive.
  void Validate() const;
};

struct ActorTrack {
  int actor_id = 0;
  std::string label;
  std::vector<std::optional<BBox>> boxes;  // indexed by frame

  bool TrackedAt(int t) const {
    return t >= 0 && t < static_cast<int>(boxes.size()) && boxes[t].has_value();
  }
};

// One timestamped eye-tracker reading in display coordinates.
struct RawGazeSample {
  double time_ms = 0.0;
  int user_id = 0;
  Point p;
};

// A gaze reading after mapping to master pixels and assignment to a frame.
struct GazeSample {
  int user_id = 0;
  int frame = 0;
  Point p;
};

struct GazeLoadStats {
  int total = 0;
  int clamped = 0;
  int dropped = 0;  // timestamps outside the video
  int users = 0;
  double samples_per_frame_per_user = 0.0;
};

// Per-frame gaze: one aggregate point per user that has samples in the frame.
struct GazeFrames {
  std::vector<std::vector<GazeSample>> frames;

  int FrameCount() const { return static_cast<int>(frames.size()); }
  std::vector<Point> PointsAt(int t) const;
};

struct MappedPoint {
  Point p;
  bool clamped = false;
};

// Independent per-axis rescale from display to master pixels, clamped to
// the master bounds.
MappedPoint MapGazeToMaster(Point raw, Size display, Size master);

// Maps every sample, assigns it to the nearest frame timestamp and averages
// per (frame, user).
GazeFrames AssignGaze(const std::vector<RawGazeSample>& raw, Size display,
                      const SceneDims& dims, GazeLoadStats* stats = nullptr);

enum class Severity { kWarning, kFatal };

struct Issue {
  Severity severity = Severity::kWarning;
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;
  std::string gap_policy;

  bool HasFatal() const;
  void Warn(std::string msg) { issues.push_back({Severity::kWarning, std::move(msg)}); }
  void Fatal(std::string msg) { issues.push_back({Severity::kFatal, std::move(msg)}); }
  std::string FatalSummary() const;
};

// Reports out-of-bounds boxes, track gaps, frames without gaze, duplicate
// actor ids and empty casts. Does not modify anything.
ValidationReport ValidateScene(const std::vector<ActorTrack>& tracks,
                               const GazeFrames& gaze, const SceneDims& dims);

// Clamps boxes into the frame and fills interior gaps: up to `max_interp_secs`
// by linear interpolation, longer ones by holding the nearest present box.
// Leading/trailing gaps are held only when no longer than `max_interp_secs`;
// longer ones mean the actor is off stage and stay empty.
void FillTrackGaps(ActorTrack& track, const SceneDims& dims,
                   double max_interp_secs, ValidationReport* report = nullptr);

}  // namespace stagecut

#endif  // STAGECUT_SCENE_H_
