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

#ifndef STAGECUT_COSTS_H_
#define STAGECUT_COSTS_H_

#include <optional>

#include "stagecut/geometry.h"

namespace stagecut {

struct CostParams {
  double lambda = 5.0;   // per cut
  double alpha = 0.2;    // IoU below which a cut is free
  double beta = 0.4;     // IoU at which a cut is a jump cut
  double mu = 1.0;
  double nu = 1000.0;
  double gamma1 = 100.0;
  double gamma2 = 10.0;
  double l = 1.5;  // seconds, earliest comfortable re-cut
  double m = 7.0;  // seconds, onset of staying pressure
  double fps = 24.0;
  double establish_secs = 4.0;
  std::optional<double> age_cap_secs;  // defaults to 2 m
  double g_floor = 1e-6;

  double AgeCapSecs() const { return age_cap_secs.value_or(2.0 * m); }
  // Largest tracked age in frames (ages beyond it are charged as D).
  int AgeCapFrames() const;
  int EstablishFrames() const;
  int MinShotFrames() const;
  // Throws ParamError naming the offending field.
  void Validate() const;
};

// One cost term per field; `total` is accumulated in the optimizer's order.
struct CostBreakdown {
  double unary = 0.0;
  double transition = 0.0;
  double overlap = 0.0;
  double rhythm = 0.0;
  double total = 0.0;
  int cuts = 0;
};

// -ln(max(g, g_floor))
double UnaryCost(double g, double g_floor);

double TransitionCost(bool same, double lambda);

// Piecewise IoU penalty; applies only at cuts.
double OverlapCostFromIou(double iou, const CostParams& p);
double OverlapCost(const CropWindow& from, const CropWindow& to, const CostParams& p);

// Logistic in seconds: cut branch decreases past l, stay branch rises past m.
double RhythmCost(bool same, double tau_secs, const CostParams& p);

struct EdgeTerms {
  double transition = 0.0;
  double overlap = 0.0;
  double rhythm = 0.0;
  double Sum() const { return transition + overlap + rhythm; }
};

// Cost of moving from rush p (on screen for `age_frames`, window `from` at
// t-1) to rush q (window `to` at t).
EdgeTerms EdgeCost(int p, int age_frames, const CropWindow& from, int q,
                   const CropWindow& to, const CostParams& params);

}  // namespace stagecut

#endif  // STAGECUT_COSTS_H_
