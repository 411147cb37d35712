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

#include "stagecut/costs.h"

#include <algorithm>
#include <cmath>

#include "stagecut/errors.h"

namespace stagecut {

namespace {

// 1 - 1/(1 + e^x), evaluated without overflow.
double Logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

int SecondsToFrames(double secs, double fps) {
  return static_cast<int>(std::ceil(secs * fps - 1e-9));
}

}  // namespace

int CostParams::AgeCapFrames() const {
  // never below the minimum shot, so the exit gate can be read off the age
  return std::max({2, static_cast<int>(std::llround(AgeCapSecs() * fps)), MinShotFrames()});
}

int CostParams::EstablishFrames() const { return std::max(0, SecondsToFrames(establish_secs, fps)); }

int CostParams::MinShotFrames() const { return std::max(1, SecondsToFrames(l, fps)); }

void CostParams::Validate() const {
  auto nonneg = [](const char* f, double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ParamError(f, "must be a finite value >= 0");
  };
  nonneg("lambda", lambda);
  nonneg("mu", mu);
  nonneg("nu", nu);
  nonneg("gamma1", gamma1);
  nonneg("gamma2", gamma2);
  nonneg("l", l);
  nonneg("m", m);
  nonneg("establish_secs", establish_secs);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ParamError("alpha", "must lie in [0,1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ParamError("beta", "must lie in [0,1]");
  if (!(alpha < beta)) throw ParamError("alpha", "must be below beta");
  if (!(fps > 0.0)) throw ParamError("fps", "must be positive");
  if (!(g_floor > 0.0 && g_floor < 1.0)) throw ParamError("g_floor", "must lie in (0,1)");
  if (age_cap_secs && !(*age_cap_secs >= m)) throw ParamError("age_cap_secs", "must be >= m");
}

double UnaryCost(double g, double g_floor) { return -std::log(std::max(g, g_floor)); }

double TransitionCost(bool same, double lambda) { return same ? 0.0 : lambda; }

double OverlapCostFromIou(double iou, const CostParams& p) {
  if (iou <= p.alpha) return 0.0;
  // alpha = 0 leaves the ramp without a slope; charge the jump-cut penalty
  if (iou < p.beta && p.alpha > 0.0) return p.mu * iou / p.alpha;
  return p.nu;
}

double OverlapCost(const CropWindow& from, const CropWindow& to, const CostParams& p) {
  return OverlapCostFromIou(Iou(from.ToRect(), to.ToRect()), p);
}

double RhythmCost(bool same, double tau_secs, const CostParams& p) {
  if (same) return p.gamma2 * Logistic(tau_secs - p.m);
  return p.gamma1 * Logistic(p.l - tau_secs);
}

EdgeTerms EdgeCost(int p, int age_frames, const CropWindow& from, int q,
                   const CropWindow& to, const CostParams& params) {
  const bool same = p == q;
  const double tau = age_frames / params.fps;
  EdgeTerms e;
  e.transition = TransitionCost(same, params.lambda);
  e.overlap = same ? 0.0 : OverlapCost(from, to, params);
  e.rhythm = RhythmCost(same, tau, params);
  return e;
}

}  // namespace stagecut
