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

#ifndef STAGECUT_KERNELS_H_
#define STAGECUT_KERNELS_H_

// Data-parallel inner loops. Each kernel has a serial reference that the
// tests hold the OpenMP version to, bit for bit.

#include <cstdint>
#include <span>
#include <vector>

#include "stagecut/costs.h"
#include "stagecut/shots.h"

namespace stagecut::kernels {

// Subset potentials of all rushes at one frame via a memoized interval
// table over the screen-ordered members. Same arithmetic as the recursive
// SubsetPotential, so results are identical.
void FramePotentials(const RushSet& rushes, int t, std::span<const double> one_shot,
                     std::span<const int> screen_order, std::span<const std::uint8_t> tracked,
                     std::span<double> out);

// Overlap cost O(p at t-1, q at t) for every ordered pair, row-major by p.
// Diagonal entries are 0.
void OverlapCosts(const RushSet& rushes, int t, const CostParams& params,
                  std::span<double> out);

// DP layer: best cost reaching (rush, age) at one frame, with the number of
// cuts on that path as a secondary key.
struct Layer {
  int rushes = 0;
  int ages = 0;  // D; age index a holds age a + 1
  std::vector<double> cost;
  std::vector<std::int32_t> cuts;

  Layer() = default;
  Layer(int r, int d);
  size_t Index(int r, int a) const { return static_cast<size_t>(r) * ages + a; }
};

// Where each state of a frame came from.
struct Backptr {
  std::vector<std::int32_t> cut_from_rush;  // per target rush, -1 = none
  std::vector<std::int32_t> cut_from_age;
  std::vector<std::uint8_t> cap_from_cap;  // age-cap state stayed at the cap
};

struct StepInputs {
  const Layer* prev = nullptr;
  std::span<const double> unary;          // per rush at t, +inf if unavailable
  std::span<const double> overlap;        // R x R, from OverlapCosts
  std::span<const double> rhythm_cut;     // per age index
  std::span<const double> rhythm_stay;    // per age index
  std::span<const double> area_prev;      // window area per rush at t-1
  std::span<const std::uint8_t> allowed;  // per rush at t
  // Cuts leave a rush only from age index >= min_exit, unless exit_free
  // marks that rush (empty span = none marked).
  int min_exit = 0;
  std::span<const std::uint8_t> exit_free;
  double lambda = 0.0;
};

// Relaxes one frame: stays advance the age (saturating at D), cuts enter age
// 1 from the cheapest (cost, cuts, predecessor area, rush, age).
void RelaxSerial(const StepInputs& in, Layer& next, Backptr& bp);
void RelaxParallel(const StepInputs& in, Layer& next, Backptr& bp);

}  // namespace stagecut::kernels

#endif  // STAGECUT_KERNELS_H_
