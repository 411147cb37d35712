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

#ifndef STAGECUT_POTENTIAL_H_
#define STAGECUT_POTENTIAL_H_

#include <optional>
#include <span>
#include <vector>

#include "stagecut/geometry.h"
#include "stagecut/parallel.h"
#include "stagecut/scene.h"
#include "stagecut/shots.h"

namespace stagecut {

enum class EmptyFramePolicy { kCarryForward, kUniform };

struct PotentialConfig {
  double eps_d = 1.0;             // pixels
  double smoothing_window = 0.5;  // seconds, 0 disables
  EmptyFramePolicy empty_frame_policy = EmptyFramePolicy::kCarryForward;

  void Validate() const;
};

// Sum of Euclidean distances from each gaze point to `center`, floored at
// eps_d. nullopt when there is no gaze.
std::optional<double> DistanceToCenter(Point center, std::span<const Point> gaze,
                                       double eps_d);

// Normalized reciprocal distances over the available 1-shots (nullopt
// centers get 0). nullopt when there is no gaze or no available shot.
std::optional<std::vector<double>> OneShotPotentials(
    std::span<const std::optional<Point>> centers, std::span<const Point> gaze,
    double eps_d);

// Pairwise hierarchy step: a + b - |a - b|.
double Combine(double a, double b);

// Left-to-right actor indices by window center x; actors without a center
// go last. Ties keep index order.
std::vector<int> ScreenOrder(std::span<const std::optional<Point>> centers);

// Hierarchical potential of `subset`: its members are sorted by
// `screen_order` and G(S) = Combine(G(S minus rightmost), G(S minus leftmost)).
double SubsetPotential(SubsetMask subset, std::span<const double> one_shot,
                       std::span<const int> screen_order);

struct PotentialTable {
  int frame_count = 0;
  int rush_count = 0;
  int actor_count = 0;
  std::vector<double> values;    // frame-major, frame_count x rush_count
  std::vector<double> one_shot;  // frame-major, frame_count x actor_count
  std::vector<std::vector<int>> screen_order;

  double At(int t, int r) const { return values[static_cast<size_t>(t) * rush_count + r]; }
  double& At(int t, int r) { return values[static_cast<size_t>(t) * rush_count + r]; }
  std::span<const double> OneShotAt(int t) const {
    return {one_shot.data() + static_cast<size_t>(t) * actor_count,
            static_cast<size_t>(actor_count)};
  }
};

// Per frame: 1-shot potentials from the actors' single-shot window centers,
// every rush's subset potential, the master gets the all-actor value.
// Unavailable rushes are 0. Optional centered moving average per rush.
PotentialTable BuildPotentialTable(const RushSet& rushes, const GazeFrames& gaze,
                                   const PotentialConfig& cfg,
                                   Exec exec = Exec::kParallel);

}  // namespace stagecut

#endif  // STAGECUT_POTENTIAL_H_
