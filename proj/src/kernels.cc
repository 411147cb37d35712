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

#include "stagecut/kernels.h"

#include <algorithm>
#include <limits>

#include "stagecut/potential.h"

namespace stagecut::kernels {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

void FramePotentials(const RushSet& rs, int t, std::span<const double> one_shot,
                     std::span<const int> screen_order, std::span<const std::uint8_t> tracked,
                     std::span<double> out) {
  const int n = rs.ActorCount();
  SubsetMask tracked_mask = 0;
  for (int i = 0; i < n; ++i) {
    if (tracked[i]) tracked_mask |= SubsetMask{1} << i;
  }
  std::vector<int> members;
  members.reserve(n);
  std::vector<double> g;  // g[i * k + j]: potential of members[i..j]
  for (const Rush& r : rs.rushes) {
    if (!r.AvailableAt(t)) {
      out[r.id] = 0.0;
      continue;
    }
    const SubsetMask mask = r.IsMaster() ? tracked_mask : (r.subset & tracked_mask);
    if (mask == 0) {
      out[r.id] = r.IsMaster() ? 1.0 : 0.0;
      continue;
    }
    members.clear();
    for (int a : screen_order) {
      if (mask & (SubsetMask{1} << a)) members.push_back(a);
    }
    const int k = static_cast<int>(members.size());
    g.assign(static_cast<size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) g[i * k + i] = one_shot[members[i]];
    for (int len = 2; len <= k; ++len) {
      for (int i = 0; i + len - 1 < k; ++i) {
        const int j = i + len - 1;
        g[i * k + j] = Combine(g[i * k + j - 1], g[(i + 1) * k + j]);
      }
    }
    out[r.id] = g[k - 1];
  }
}

void OverlapCosts(const RushSet& rs, int t, const CostParams& params, std::span<double> out) {
  const int R = rs.RushCount();
#pragma omp parallel for schedule(static) if (R >= 32)
  for (int p = 0; p < R; ++p) {
    const Rect from = rs.rushes[p].windows[t - 1].ToRect();
    for (int q = 0; q < R; ++q) {
      out[static_cast<size_t>(p) * R + q] =
          p == q ? 0.0
                 : OverlapCostFromIou(Iou(from, rs.rushes[q].windows[t].ToRect()), params);
    }
  }
}

Layer::Layer(int r, int d)
    : rushes(r),
      ages(d),
      cost(static_cast<size_t>(r) * d, kInf),
      cuts(static_cast<size_t>(r) * d, 0) {}

namespace {

inline bool Better(double c, int k, double bc, int bk) {
  return c < bc || (c == bc && k < bk);
}

void Relax(const StepInputs& in, Layer& next, Backptr& bp, bool par) {
  const Layer& prev = *in.prev;
  const int R = prev.rushes;
  const int D = prev.ages;
  std::fill(next.cost.begin(), next.cost.end(), kInf);
  std::fill(next.cuts.begin(), next.cuts.end(), 0);
  bp.cut_from_rush.assign(R, -1);
  bp.cut_from_age.assign(R, -1);
  bp.cap_from_cap.assign(R, 0);

  // Cheapest exit age per outgoing rush.
  std::vector<double> exit_cost(R, kInf);
  std::vector<std::int32_t> exit_cuts(R, 0);
  std::vector<std::int32_t> exit_age(R, -1);
#pragma omp parallel for schedule(static) if (par)
  for (int p = 0; p < R; ++p) {
    const bool free = !in.exit_free.empty() && in.exit_free[p];
    for (int a = free ? 0 : in.min_exit; a < D; ++a) {
      const double c0 = prev.cost[prev.Index(p, a)];
      if (c0 == kInf) continue;
      const double c = c0 + in.rhythm_cut[a];
      const int k = prev.cuts[prev.Index(p, a)];
      if (Better(c, k, exit_cost[p], exit_cuts[p])) {
        exit_cost[p] = c;
        exit_cuts[p] = k;
        exit_age[p] = a;
      }
    }
  }

#pragma omp parallel for schedule(static) if (par)
  for (int q = 0; q < R; ++q) {
    if (!in.allowed[q]) continue;
    // stays
    for (int a = 0; a + 1 < D; ++a) {
      const double c0 = prev.cost[prev.Index(q, a)];
      if (c0 == kInf) continue;
      next.cost[next.Index(q, a + 1)] = c0 + in.rhythm_stay[a] + in.unary[q];
      next.cuts[next.Index(q, a + 1)] = prev.cuts[prev.Index(q, a)];
    }
    const double cap0 = prev.cost[prev.Index(q, D - 1)];
    if (cap0 != kInf) {
      const double c = cap0 + in.rhythm_stay[D - 1] + in.unary[q];
      const int k = prev.cuts[prev.Index(q, D - 1)];
      const size_t idx = next.Index(q, D - 1);
      if (Better(c, k, next.cost[idx], next.cuts[idx])) {
        next.cost[idx] = c;
        next.cuts[idx] = k;
        bp.cap_from_cap[q] = 1;
      }
    }
    // cut into q
    double best = kInf;
    int best_k = 0;
    double best_area = kInf;
    int best_p = -1;
    for (int p = 0; p < R; ++p) {
      if (p == q || exit_cost[p] == kInf) continue;
      const double c =
          exit_cost[p] + in.lambda + in.overlap[static_cast<size_t>(p) * R + q] + in.unary[q];
      const int k = exit_cuts[p] + 1;
      if (c < best || (c == best && (k < best_k || (k == best_k && in.area_prev[p] < best_area)))) {
        best = c;
        best_k = k;
        best_area = in.area_prev[p];
        best_p = p;
      }
    }
    if (best_p >= 0) {
      next.cost[next.Index(q, 0)] = best;
      next.cuts[next.Index(q, 0)] = best_k;
      bp.cut_from_rush[q] = best_p;
      bp.cut_from_age[q] = exit_age[best_p];
    }
  }
}

}  // namespace

void RelaxSerial(const StepInputs& in, Layer& next, Backptr& bp) { Relax(in, next, bp, false); }

void RelaxParallel(const StepInputs& in, Layer& next, Backptr& bp) {
  Relax(in, next, bp, HaveOpenMP() && in.prev->rushes >= 8);
}

}  // namespace stagecut::kernels
