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

#include "stagecut/baselines.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "stagecut/errors.h"

namespace stagecut {

namespace {

// Fills the establishing master and returns the first frame after it, or T
// if the video is no longer than the establishing shot.
int Establish(std::vector<int>& seq, const RushSet& rs, const CostParams& params) {
  const int E = std::min(params.EstablishFrames(), rs.frame_count);
  std::fill(seq.begin(), seq.begin() + E, rs.master_index);
  return E;
}

bool IsBetterPick(const RushSet& rs, int t, double v, int r, double best_v, int best_r) {
  if (best_r < 0) return true;
  if (v != best_v) return v > best_v;
  const double a = rs.rushes[r].windows[t].Area();
  const double b = rs.rushes[best_r].windows[t].Area();
  if (a != b) return a < b;
  return r < best_r;
}

EditDecisionList Finish(const std::vector<int>& seq) {
  EditDecisionList edl;
  edl.segments = SegmentsFromFrames(seq);
  return edl;
}

}  // namespace

EditDecisionList EditRandom(const RushSet& rs, const CostParams& params, std::uint64_t seed) {
  params.Validate();
  const int T = rs.frame_count;
  std::vector<int> seq(T, rs.master_index);
  const int block = params.MinShotFrames();
  std::mt19937_64 rng(seed);
  int current = rs.master_index;
  for (int start = Establish(seq, rs, params); start < T; start += block) {
    const int end = std::min(T, start + block);
    std::vector<int> choices;
    for (const Rush& r : rs.rushes) {
      if (r.id != current && r.AvailableOver(start, end)) choices.push_back(r.id);
    }
    if (!choices.empty()) {
      // Plain modulo keeps the draw identical across standard libraries.
      current = choices[rng() % choices.size()];
    }
    std::fill(seq.begin() + start, seq.begin() + end, current);
  }
  return Finish(seq);
}

EditDecisionList EditWide(const RushSet& rs) {
  if (rs.full_index < 0) throw DataError("wide: the all-actor rush was filtered out");
  EditDecisionList edl;
  edl.segments.push_back({0, rs.frame_count, rs.full_index});
  return edl;
}

EditDecisionList EditGreedyGaze(const PotentialTable& table, const RushSet& rs,
                                const CostParams& params) {
  params.Validate();
  const int T = rs.frame_count;
  const int min_len = params.MinShotFrames();
  std::vector<int> seq(T, rs.master_index);
  const int E = Establish(seq, rs, params);
  int current = rs.master_index;
  int shot_start = 0;
  for (int t = E; t < T; ++t) {
    const bool forced = !rs.rushes[current].AvailableAt(t);
    if (t == E || forced || t - shot_start >= min_len) {
      int best = -1;
      double best_v = 0.0;
      for (const Rush& r : rs.rushes) {
        if (!r.AvailableAt(t)) continue;
        if (t == E && E > 0 && r.IsMaster()) continue;
        const double v = table.At(t, r.id);
        if (IsBetterPick(rs, t, v, r.id, best_v, best)) {
          best = r.id;
          best_v = v;
        }
      }
      if (best < 0) best = rs.master_index;
      if (best != current) {
        current = best;
        shot_start = t;
      }
    }
    seq[t] = current;
  }
  return Finish(seq);
}

EditDecisionList EditSpeaker(const std::vector<SpeakerInterval>& intervals, const RushSet& rs,
                             const CostParams& params, double silence_secs) {
  params.Validate();
  const int T = rs.frame_count;
  if (rs.full_index < 0) throw DataError("speaker: the all-actor rush was filtered out");

  // Target rush per frame while someone speaks, -1 during silence.
  std::vector<int> speaking(T, -1);
  for (const SpeakerInterval& iv : intervals) {
    if (iv.speakers.empty()) continue;
    SubsetMask m = 0;
    for (int id : iv.speakers) {
      auto it = std::find(rs.actor_ids.begin(), rs.actor_ids.end(), id);
      if (it == rs.actor_ids.end()) {
        throw DataError("speaker: unknown actor id " + std::to_string(id));
      }
      m |= SubsetMask{1} << (it - rs.actor_ids.begin());
    }
    const int rush = rs.FindRush(m);
    if (rush < 0) {
      throw DataError("speaker: no rush for speaker set " + rs.SubsetLabel(m));
    }
    for (int t = std::max(0, iv.start_frame); t < std::min(T, iv.end_frame); ++t) {
      speaking[t] = rush;
    }
  }

  const int silence_frames = static_cast<int>(std::lround(silence_secs * rs.fps));
  const int min_len = params.MinShotFrames();
  std::vector<int> seq(T, rs.master_index);
  const int E = Establish(seq, rs, params);
  int current = rs.master_index;
  int shot_start = 0;
  int silent = 0;
  for (int t = 0; t < T; ++t) {
    silent = speaking[t] < 0 ? silent + 1 : 0;
    if (t < E) continue;
    int desired = current;
    if (speaking[t] >= 0) {
      desired = speaking[t];
    } else if (silent > silence_frames || t == E) {
      desired = rs.full_index;
    }
    if (!rs.rushes[desired].AvailableAt(t)) desired = current;
    const bool forced = !rs.rushes[current].AvailableAt(t);
    if (forced && !rs.rushes[desired].AvailableAt(t)) desired = rs.full_index;
    if (forced && !rs.rushes[desired].AvailableAt(t)) desired = rs.master_index;
    if (desired != current && (t == E || forced || t - shot_start >= min_len)) {
      current = desired;
      shot_start = t;
    }
    seq[t] = current;
  }
  return Finish(seq);
}

}  // namespace stagecut
