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

#include "stagecut/analytics.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "stagecut/errors.h"

namespace stagecut {

std::vector<RushInfo> DescribeRushes(const RushSet& rs) {
  std::vector<RushInfo> out;
  for (const Rush& r : rs.rushes) {
    out.push_back({r.id, rs.SubsetActorIds(r.subset), r.scale, r.label});
  }
  return out;
}

std::vector<CropWindow> SelectedWindows(const EditDecisionList& edl, const RushSet& rs) {
  std::vector<CropWindow> out(edl.FrameCount());
  for (const Segment& s : edl.segments) {
    for (int t = s.start; t < s.end; ++t) out[t] = rs.rushes[s.rush_id].windows[t];
  }
  return out;
}

EditStats CutStats(const EditDecisionList& edl, std::span<const CropWindow> windows,
                   const std::vector<RushInfo>& rushes, const CostParams& params) {
  EditStats st;
  st.frame_count = edl.FrameCount();
  st.segment_count = static_cast<int>(edl.segments.size());
  st.cut_count = edl.CutCount();
  if (edl.segments.empty()) return st;
  const int min_len = params.MinShotFrames();
  int lo = edl.segments.front().Length(), hi = lo;
  for (size_t i = 0; i < edl.segments.size(); ++i) {
    const Segment& s = edl.segments[i];
    lo = std::min(lo, s.Length());
    hi = std::max(hi, s.Length());
    if (i + 1 < edl.segments.size() && s.Length() < min_len) st.min_length_violated = true;
    const RushInfo& info = rushes.at(s.rush_id);
    ++st.size_histogram[info.actor_ids.empty() ? "master" : std::to_string(info.actor_ids.size())];
    if (i > 0 && static_cast<size_t>(s.start) < windows.size()) {
      const double iou = Iou(windows[s.start - 1].ToRect(), windows[s.start].ToRect());
      if (iou >= params.beta) ++st.jump_cut_count;
    }
  }
  st.mean_shot_secs = static_cast<double>(st.frame_count) / st.segment_count / params.fps;
  st.min_shot_secs = lo / params.fps;
  st.max_shot_secs = hi / params.fps;
  return st;
}

double Compare(const EditDecisionList& a, const EditDecisionList& b) {
  if (a.FrameCount() != b.FrameCount()) {
    throw DataError("compare: EDLs cover " + std::to_string(a.FrameCount()) + " and " +
                    std::to_string(b.FrameCount()) + " frames");
  }
  const auto fa = a.PerFrame();
  const auto fb = b.PerFrame();
  if (fa.empty()) return 1.0;
  int same = 0;
  for (size_t t = 0; t < fa.size(); ++t) same += fa[t] == fb[t];
  return static_cast<double>(same) / fa.size();
}

namespace {

// Portable draws: the standard distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double Uniform() { return (eng_() >> 11) * 0x1.0p-53; }
  double Uniform(double a, double b) { return a + (b - a) * Uniform(); }
  int Index(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }
  double Normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    while (u <= 0.0) u = Uniform();
    const double v = Uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * std::numbers::pi * v);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * v);
  }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct Epoch {
  int start = 0;
  int end = 0;
  int a = 0;
  int b = -1;  // second actor when attention is split
  bool silent = false;
};

}  // namespace

SyntheticProject GenerateSyntheticProject(const SyntheticOptions& o) {
  if (o.actors < 1) throw ParamError("actors", "need at least one actor");
  if (o.users < 1) throw ParamError("users", "need at least one viewer");
  if (!(o.walk_speed_frac >= 0.0)) throw ParamError("walk_speed_frac", "must be >= 0");
  SyntheticProject proj;
  proj.dims = {o.width, o.height, o.fps, static_cast<int>(std::lround(o.secs * o.fps))};
  proj.dims.Validate();
  proj.display = o.display;
  const int T = proj.dims.frame_count;
  const int n = o.actors;
  const double W = o.width, H = o.height;
  Rng rng(o.seed);

  // Performers: ornstein-uhlenbeck velocity inside the stage band.
  std::vector<std::vector<BBox>> clean(n, std::vector<BBox>(T));
  for (int i = 0; i < n; ++i) {
    ActorTrack tr;
    tr.actor_id = i + 1;
    tr.label = std::string(1, static_cast<char>('A' + (i % 26)));
    const double bh = H * rng.Uniform(0.40, 0.55);
    const double bw = 0.32 * bh;
    const double lo = 0.04 * W + 0.5 * bw;
    const double hi = 0.96 * W - 0.5 * bw;
    double x = lo + (hi - lo) * (i + 0.5 + 0.3 * rng.Uniform(-1, 1)) / n;
    const double feet = H * rng.Uniform(0.82, 0.94);
    double v = 0.0;
    const double sigma = o.walk_speed_frac * W / o.fps * std::sqrt(1.0 - 0.96 * 0.96);
    tr.boxes.resize(T);
    for (int t = 0; t < T; ++t) {
      v = 0.96 * v + sigma * rng.Normal();
      x += v;
      if (x < lo) {
        x = 2 * lo - x;
        v = -v;
      }
      if (x > hi) {
        x = 2 * hi - x;
        v = -v;
      }
      x = std::clamp(x, lo, hi);
      clean[i][t] = {x - 0.5 * bw, feet - bh, x + 0.5 * bw, feet};
      // detector jitter
      const double jx = 2.0 * rng.Normal(), jy = 2.0 * rng.Normal();
      tr.boxes[t] = BBox{std::max(0.0, x - 0.5 * bw + jx), std::max(0.0, feet - bh + jy),
                         std::min(W, x + 0.5 * bw + jx), std::min(H, feet + jy)};
    }
    proj.tracks.push_back(std::move(tr));
  }

  // Attention epochs of 1-4 s, one lead actor drawing more attention.
  const int lead = rng.Index(n);
  std::vector<Epoch> epochs;
  for (int t = 0; t < T;) {
    Epoch e;
    e.start = t;
    e.end = std::min(T, t + static_cast<int>(std::lround(rng.Uniform(1.0, 4.0) * o.fps)));
    if (o.lock_attention) {
      e.a = std::clamp(*o.lock_attention, 0, n - 1);
    } else {
      const int pick = rng.Index(n + 1);
      e.a = pick == n ? lead : pick;
      if (n >= 2 && rng.Uniform() < 0.2) {
        e.b = (e.a + 1 + rng.Index(n - 1)) % n;
      }
      e.silent = rng.Uniform() < 0.15;
    }
    epochs.push_back(e);
    t = e.end;
  }

  // Viewers sample at 60 Hz with their own bias and reaction lag.
  const double sx = static_cast<double>(o.display.width) / W;
  const double sy = static_cast<double>(o.display.height) / H;
  const double jitter = o.jitter_frac * W;
  const double period_ms = 1000.0 / 60.0;
  const int samples = static_cast<int>(std::floor(T / o.fps * 60.0));
  for (int u = 0; u < o.users; ++u) {
    const double bias_x = 0.01 * W * rng.Normal();
    const double bias_y = 0.01 * W * rng.Normal();
    const double lag_s = rng.Uniform(0.0, 0.3);
    size_t ep = 0;
    for (int k = 0; k < samples; ++k) {
      const double time_ms = k * period_ms;
      if (rng.Uniform() < 0.05) continue;  // blink / dropout
      const int frame = std::clamp(
          static_cast<int>(std::floor((time_ms / 1000.0 - lag_s) * o.fps)), 0, T - 1);
      while (ep + 1 < epochs.size() && epochs[ep].end <= frame) ++ep;
      while (ep > 0 && epochs[ep].start > frame) --ep;
      const Epoch& e = epochs[ep];
      int who = e.a;
      if (e.b >= 0 && ((u + k / 30) % 2 == 1)) who = e.b;
      const BBox& b = clean[who][frame];
      const double gx = b.Center().x + bias_x + jitter * rng.Normal();
      const double gy = b.y1 + 0.12 * b.Height() + bias_y + jitter * rng.Normal();
      proj.gaze.push_back({time_ms, u + 1, {gx * sx, gy * sy}});
    }
  }
  std::stable_sort(proj.gaze.begin(), proj.gaze.end(),
                   [](const RawGazeSample& a, const RawGazeSample& b) { return a.time_ms < b.time_ms; });

  for (const Epoch& e : epochs) {
    std::vector<int> who;
    if (!e.silent) {
      who.push_back(e.a + 1);
      if (e.b >= 0) who.push_back(e.b + 1);
      std::sort(who.begin(), who.end());
    }
    if (!proj.speakers.empty() && proj.speakers.back().speakers == who) {
      proj.speakers.back().end_frame = e.end;
    } else {
      proj.speakers.push_back({e.start, e.end, who});
    }
  }
  return proj;
}

}  // namespace stagecut
