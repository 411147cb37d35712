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

#ifndef STAGECUT_OPTIMIZER_H_
#define STAGECUT_OPTIMIZER_H_

#include <string>
#include <vector>

#include "stagecut/costs.h"
#include "stagecut/parallel.h"
#include "stagecut/potential.h"
#include "stagecut/shots.h"

namespace stagecut {

// Frames [start, end) shown from rush `rush_id`.
struct Segment {
  int start = 0;
  int end = 0;
  int rush_id = 0;

  int Length() const { return end - start; }
  bool operator==(const Segment&) const = default;
};

struct EditDecisionList {
  std::vector<Segment> segments;
  double total_cost = 0.0;
  CostBreakdown breakdown;

  int FrameCount() const { return segments.empty() ? 0 : segments.back().end; }
  int CutCount() const { return segments.empty() ? 0 : static_cast<int>(segments.size()) - 1; }
  std::vector<int> PerFrame() const;
  int RushAt(int t) const;
};

// Collapses a per-frame rush assignment into maximal segments.
std::vector<Segment> SegmentsFromFrames(const std::vector<int>& per_frame);

// Structural problems: partition of [0, T), distinct neighbours, availability.
// Empty when the EDL is valid.
std::vector<std::string> CheckEdl(const EditDecisionList& edl, const RushSet& rushes);

// Shot-selection objective over frames [E, T), E the establishing length:
// unary -ln G per frame plus transition, overlap and rhythm at each frame
// boundary. With cap_age the shot age is saturated at the DP's age cap,
// which is exactly what Optimize minimizes; without it the age is exact.
// `total` is accumulated in the same order as the DP.
CostBreakdown ScoreEdl(const EditDecisionList& edl, const PotentialTable& table,
                       const RushSet& rushes, const CostParams& params,
                       bool cap_age = true);

// Exact minimum over the (rush, age <= D) state space. The first E frames are
// the master and the shot at frame E is not the master unless nothing else
// is available. A shot is left only after MinShotFrames, except the
// establishing shot and a rush that becomes unavailable; the soft rhythm
// terms still apply on top of that. Ties go to fewer cuts, then the smaller window, then the
// lower rush id. Throws InfeasibleError when some frame has no rush.
EditDecisionList Optimize(const PotentialTable& table, const RushSet& rushes,
                          const CostParams& params, Exec exec = Exec::kParallel);

// Exhaustive enumeration of the sequences Optimize admits, with exact ages;
// the test oracle for Optimize.
// Refuses (ParamError) when rushes^(T-E) exceeds `limit`.
EditDecisionList BruteForceOptimize(const PotentialTable& table, const RushSet& rushes,
                                    const CostParams& params, double limit = 1e7);

}  // namespace stagecut

#endif  // STAGECUT_OPTIMIZER_H_
