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

#include "stagecut/potential.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stagecut/errors.h"
#include "stagecut/kernels.h"

namespace stagecut {

void PotentialConfig::Validate() const {
  if (!(eps_d > 0.0)) throw ParamError("eps_d", "must be positive");
  if (!(smoothing_window >= 0.0)) throw ParamError("smoothing_window", "must be >= 0");
}

std::optional<double> DistanceToCenter(Point center, std::span<const Point> gaze,
                                       double eps_d) {
  if (gaze.empty()) return std::nullopt;
  double d = 0.0;
  for (const Point& g : gaze) d += std::hypot(center.x - g.x, center.y - g.y);
  return std::max(d, eps_d);
}

std::optional<std::vector<double>> OneShotPotentials(
    std::span<const std::optional<Point>> centers, std::span<const Point> gaze,
    double eps_d) {
  if (gaze.empty()) return std::nullopt;
  std::vector<double> inv(centers.size(), 0.0);
  double sum = 0.0;
  for (size_t i = 0; i < centers.size(); ++i) {
    if (!centers[i]) continue;
    inv[i] = 1.0 / *DistanceToCenter(*centers[i], gaze, eps_d);
    sum += inv[i];
  }
  if (sum <= 0.0) return std::nullopt;
  for (double& v : inv) v /= sum;
  return inv;
}

// Equal to a + b - |a - b|, without the cancellation.
double Combine(double a, double b) { return 2.0 * std::min(a, b); }

std::vector<int> ScreenOrder(std::span<const std::optional<Point>> centers) {
  std::vector<int> order(centers.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (centers[a].has_value() != centers[b].has_value()) return centers[a].has_value();
    if (!centers[a]) return false;
    return centers[a]->x < centers[b]->x;
  });
  return order;
}

namespace {

double RecursePotential(std::span<const int> members, std::span<const double> one_shot) {
  if (members.size() == 1) return one_shot[members.front()];
  return Combine(RecursePotential(members.first(members.size() - 1), one_shot),
                 RecursePotential(members.subspan(1), one_shot));
}

}  // namespace

double SubsetPotential(SubsetMask subset, std::span<const double> one_shot,
                       std::span<const int> screen_order) {
  std::vector<int> members;
  for (int a : screen_order) {
    if (subset & (SubsetMask{1} << a)) members.push_back(a);
  }
  if (members.empty()) return 0.0;
  return RecursePotential(members, one_shot);
}

namespace {

// Rush potential at one frame by direct recursion; the reference the
// parallel kernel is checked against.
void FramePotentialsReference(const RushSet& rs, std::span<const double> one_shot,
                              std::span<const int> order,
                              std::span<const std::uint8_t> tracked, int t,
                              std::span<double> out) {
  SubsetMask tracked_mask = 0;
  for (int i = 0; i < rs.ActorCount(); ++i) {
    if (tracked[i]) tracked_mask |= SubsetMask{1} << i;
  }
  for (const Rush& r : rs.rushes) {
    double v = 0.0;
    if (r.AvailableAt(t)) {
      if (r.IsMaster()) {
        v = tracked_mask ? SubsetPotential(tracked_mask, one_shot, order) : 1.0;
      } else {
        v = SubsetPotential(r.subset & tracked_mask, one_shot, order);
      }
    }
    out[r.id] = v;
  }
}

}  // namespace

PotentialTable BuildPotentialTable(const RushSet& rs, const GazeFrames& gaze,
                                   const PotentialConfig& cfg, Exec exec) {
  cfg.Validate();
  const int T = rs.frame_count;
  const int n = rs.ActorCount();
  const int R = rs.RushCount();
  PotentialTable tab;
  tab.frame_count = T;
  tab.rush_count = R;
  tab.actor_count = n;
  tab.values.assign(static_cast<size_t>(T) * R, 0.0);
  tab.one_shot.assign(static_cast<size_t>(T) * n, 0.0);
  tab.screen_order.resize(T);
  std::vector<std::uint8_t> has_gaze(T, 0);
  std::vector<std::uint8_t> tracked(static_cast<size_t>(T) * n, 0);
  const bool par = exec == Exec::kParallel;

  // 1-shot potentials where gaze exists.
#pragma omp parallel for schedule(static) if (par)
  for (int t = 0; t < T; ++t) {
    std::vector<std::optional<Point>> centers(n);
    for (int i = 0; i < n; ++i) {
      const Rush& s = rs.singles[i];
      if (s.AvailableAt(t)) {
        centers[i] = s.windows[t].Center();
        tracked[static_cast<size_t>(t) * n + i] = 1;
      }
    }
    tab.screen_order[t] = ScreenOrder(centers);
    const auto pts = t < gaze.FrameCount() ? gaze.PointsAt(t) : std::vector<Point>{};
    if (auto g = OneShotPotentials(centers, pts, cfg.eps_d)) {
      std::copy(g->begin(), g->end(), tab.one_shot.begin() + static_cast<size_t>(t) * n);
      has_gaze[t] = 1;
    }
  }

  // Frames without gaze: carry the previous frame forward, or uniform.
  for (int t = 0; t < T; ++t) {
    if (has_gaze[t]) continue;
    double* row = tab.one_shot.data() + static_cast<size_t>(t) * n;
    const std::uint8_t* trk = tracked.data() + static_cast<size_t>(t) * n;
    int avail = 0;
    for (int i = 0; i < n; ++i) avail += trk[i];
    if (avail == 0) continue;
    double sum = 0.0;
    if (cfg.empty_frame_policy == EmptyFramePolicy::kCarryForward && t > 0) {
      const double* prev = row - n;
      for (int i = 0; i < n; ++i) {
        row[i] = trk[i] ? prev[i] : 0.0;
        sum += row[i];
      }
    }
    if (sum > 0.0) {
      for (int i = 0; i < n; ++i) row[i] /= sum;
    } else {
      for (int i = 0; i < n; ++i) row[i] = trk[i] ? 1.0 / avail : 0.0;
    }
  }

  if (par) {
#pragma omp parallel for schedule(static)
    for (int t = 0; t < T; ++t) {
      kernels::FramePotentials(rs, t, tab.OneShotAt(t), tab.screen_order[t],
                               {tracked.data() + static_cast<size_t>(t) * n, static_cast<size_t>(n)},
                               {tab.values.data() + static_cast<size_t>(t) * R, static_cast<size_t>(R)});
    }
  } else {
    for (int t = 0; t < T; ++t) {
      FramePotentialsReference(
          rs, tab.OneShotAt(t), tab.screen_order[t],
          {tracked.data() + static_cast<size_t>(t) * n, static_cast<size_t>(n)}, t,
          {tab.values.data() + static_cast<size_t>(t) * R, static_cast<size_t>(R)});
    }
  }

  const int width = static_cast<int>(std::lround(cfg.smoothing_window * rs.fps));
  if (width > 1) {
    const int half = width / 2;
#pragma omp parallel for schedule(static) if (par)
    for (int r = 0; r < R; ++r) {
      const Rush& rush = rs.rushes[r];
      std::vector<double> col(T);
      for (int t = 0; t < T; ++t) col[t] = tab.At(t, r);
      for (int t = 0; t < T; ++t) {
        if (!rush.AvailableAt(t)) continue;
        double sum = 0.0;
        int cnt = 0;
        for (int k = std::max(0, t - half); k <= std::min(T - 1, t + half); ++k) {
          if (!rush.AvailableAt(k)) continue;
          sum += col[k];
          ++cnt;
        }
        tab.At(t, r) = sum / cnt;
      }
    }
  }
  return tab;
}

}  // namespace stagecut
