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

#include "stagecut/scene.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "stagecut/errors.h"

namespace stagecut {

void SceneDims::Validate() const {
  if (width <= 0 || height <= 0) throw DataError("scene: width and height must be positive");
  if (!(fps > 0.0)) throw DataError("scene: fps must be positive");
  if (frame_count <= 0) throw DataError("scene: frame_count must be positive");
}

std::vector<Point> GazeFrames::PointsAt(int t) const {
  std::vector<Point> out;
  if (t < 0 || t >= FrameCount()) return out;
  out.reserve(frames[t].size());
  for (const GazeSample& s : frames[t]) out.push_back(s.p);
  return out;
}

MappedPoint MapGazeToMaster(Point raw, Size display, Size master) {
  const double sx = static_cast<double>(master.width) / display.width;
  const double sy = static_cast<double>(master.height) / display.height;
  Point p{raw.x * sx, raw.y * sy};
  Point c{std::clamp(p.x, 0.0, static_cast<double>(master.width)),
          std::clamp(p.y, 0.0, static_cast<double>(master.height))};
  return {c, c.x != p.x || c.y != p.y};
}

GazeFrames AssignGaze(const std::vector<RawGazeSample>& raw, Size display,
                      const SceneDims& dims, GazeLoadStats* stats) {
  GazeLoadStats st;
  // (frame, user) -> running sum
  struct Acc {
    double x = 0, y = 0;
    int n = 0;
  };
  std::vector<std::map<int, Acc>> acc(dims.frame_count);
  std::set<int> users;
  for (const RawGazeSample& s : raw) {
    ++st.total;
    const double f = std::round(s.time_ms * 1e-3 * dims.fps);
    if (!(f >= 0.0) || f >= dims.frame_count) {
      ++st.dropped;
      continue;
    }
    const MappedPoint m = MapGazeToMaster(s.p, display, dims.FrameSize());
    if (m.clamped) ++st.clamped;
    Acc& a = acc[static_cast<int>(f)][s.user_id];
    a.x += m.p.x;
    a.y += m.p.y;
    ++a.n;
    users.insert(s.user_id);
  }
  GazeFrames out;
  out.frames.resize(dims.frame_count);
  for (int t = 0; t < dims.frame_count; ++t) {
    for (const auto& [user, a] : acc[t]) {
      out.frames[t].push_back({user, t, {a.x / a.n, a.y / a.n}});
    }
  }
  st.users = static_cast<int>(users.size());
  if (st.users > 0) {
    st.samples_per_frame_per_user = static_cast<double>(st.total - st.dropped) /
                                    (static_cast<double>(dims.frame_count) * st.users);
  }
  if (stats) *stats = st;
  return out;
}

bool ValidationReport::HasFatal() const {
  return std::any_of(issues.begin(), issues.end(),
                     [](const Issue& i) { return i.severity == Severity::kFatal; });
}

std::string ValidationReport::FatalSummary() const {
  std::string out;
  for (const Issue& i : issues) {
    if (i.severity != Severity::kFatal) continue;
    if (!out.empty()) out += "; ";
    out += i.message;
  }
  return out;
}

namespace {

std::string RangeText(int a, int b) {
  std::ostringstream os;
  os << "frames=[" << a << "," << b << "]";
  return os.str();
}

// Calls fn(first, last) for each maximal run of frames where pred holds.
template <typename Pred, typename Fn>
void ForEachRun(int n, Pred pred, Fn fn) {
  int t = 0;
  while (t < n) {
    if (!pred(t)) {
      ++t;
      continue;
    }
    const int start = t;
    while (t < n && pred(t)) ++t;
    fn(start, t - 1);
  }
}

}  // namespace

ValidationReport ValidateScene(const std::vector<ActorTrack>& tracks,
                               const GazeFrames& gaze, const SceneDims& dims) {
  ValidationReport report;
  if (tracks.empty()) report.Fatal("scene has zero actors");

  std::set<int> seen;
  for (const ActorTrack& tr : tracks) {
    if (!seen.insert(tr.actor_id).second) {
      report.Fatal("duplicate actor id " + std::to_string(tr.actor_id));
    }
  }

  const double w = dims.width;
  const double h = dims.height;
  for (const ActorTrack& tr : tracks) {
    const int n = std::min<int>(dims.frame_count, static_cast<int>(tr.boxes.size()));
    int first = -1;
    for (int t = 0; t < n; ++t) {
      if (!tr.boxes[t]) continue;
      if (first < 0) first = t;
      const BBox& b = *tr.boxes[t];
      if (b.x1 < 0 || b.y1 < 0 || b.x2 > w || b.y2 > h) {
        report.Warn("out-of-bounds box actor=" + std::to_string(tr.actor_id) +
                    " frame=" + std::to_string(t));
      }
    }
    if (first < 0) {
      report.Warn("actor " + std::to_string(tr.actor_id) + " is never tracked");
      continue;
    }
    ForEachRun(
        dims.frame_count, [&](int t) { return !tr.TrackedAt(t); },
        [&](int a, int b) {
          report.Warn("gap actor=" + std::to_string(tr.actor_id) + " " + RangeText(a, b));
        });
  }

  ForEachRun(
      dims.frame_count,
      [&](int t) { return t >= gaze.FrameCount() || gaze.frames[t].empty(); },
      [&](int a, int b) { report.Warn("no gaze " + RangeText(a, b)); });
  return report;
}

void FillTrackGaps(ActorTrack& track, const SceneDims& dims, double max_interp_secs,
                   ValidationReport* report) {
  const int n = dims.frame_count;
  track.boxes.resize(n);
  const Size frame = dims.FrameSize();
  for (auto& b : track.boxes) {
    if (!b) continue;
    *b = ClipToFrame(*b, frame);
    if (!b->IsValid()) b.reset();
  }
  const int max_gap = static_cast<int>(std::floor(max_interp_secs * dims.fps + 1e-9));
  int filled_interp = 0;
  int filled_hold = 0;
  int left_empty = 0;

  int t = 0;
  while (t < n) {
    if (track.boxes[t]) {
      ++t;
      continue;
    }
    const int a = t;
    while (t < n && !track.boxes[t]) ++t;
    const int b = t - 1;  // inclusive gap [a, b]
    const int len = b - a + 1;
    const bool has_prev = a > 0;
    const bool has_next = t < n;
    if (has_prev && has_next) {
      const BBox p = *track.boxes[a - 1];
      const BBox q = *track.boxes[t];
      for (int k = a; k <= b; ++k) {
        if (len <= max_gap) {
          const double s = static_cast<double>(k - (a - 1)) / (t - (a - 1));
          track.boxes[k] = BBox{p.x1 + s * (q.x1 - p.x1), p.y1 + s * (q.y1 - p.y1),
                                p.x2 + s * (q.x2 - p.x2), p.y2 + s * (q.y2 - p.y2)};
        } else {
          track.boxes[k] = (k - (a - 1) <= t - k) ? p : q;
        }
      }
      (len <= max_gap ? filled_interp : filled_hold) += len;
    } else if ((has_prev || has_next) && len <= max_gap) {
      const BBox hold = has_prev ? *track.boxes[a - 1] : *track.boxes[t];
      for (int k = a; k <= b; ++k) track.boxes[k] = hold;
      filled_hold += len;
    } else {
      left_empty += len;
    }
  }
  if (report) {
    std::ostringstream os;
    os << "actor=" << track.actor_id << " interpolated=" << filled_interp
       << " held=" << filled_hold << " offstage=" << left_empty;
    if (!report->gap_policy.empty()) report->gap_policy += "; ";
    report->gap_policy += os.str();
  }
}

}  // namespace stagecut
