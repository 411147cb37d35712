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

#ifndef STAGECUT_SMOOTHER_H_
#define STAGECUT_SMOOTHER_H_

#include <optional>
#include <span>
#include <vector>

#include "stagecut/geometry.h"

namespace stagecut {

// Exact minimizer of
//   sum_t c_t (u_t - y_t)^2 + w1 sum (u_t - u_{t-1})^2
//                           + w2 sum (u_{t+1} - 2 u_t + u_{t-1})^2
// for per-sample data weights c_t >= 0. The normal equations form a
// symmetric pentadiagonal system, factored in O(n) by banded LDL^T.
// Throws std::invalid_argument when every c_t is zero.
std::vector<double> SmoothSeries(std::span<const double> y,
                                 std::span<const double> weight, double w1,
                                 double w2);

// Symmetric pentadiagonal solve: diag, first and second super-diagonals.
std::vector<double> SolvePentadiagonal(std::vector<double> diag,
                                       std::vector<double> off1,
                                       std::vector<double> off2,
                                       std::vector<double> rhs);

// Smooths center x, center y and width of a crop-window track independently.
// Missing frames carry zero data weight; their smoothed values are still
// returned. Height follows from the frame aspect and every window is clamped
// into the frame. Returns nullopt when no frame has data.
std::optional<std::vector<CropWindow>> StabilizeTrajectory(
    const std::vector<std::optional<CropWindow>>& raw, double w1, double w2,
    Size frame);

}  // namespace stagecut

#endif  // STAGECUT_SMOOTHER_H_
