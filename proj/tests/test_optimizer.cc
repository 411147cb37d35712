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

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.h"
#include "stagecut/costs.h"
#include "stagecut/errors.h"
#include "stagecut/optimizer.h"

using namespace stagecut;

TEST_CASE("unary and transition costs") {
  CHECK(UnaryCost(1.0, 1e-6) == 0.0);
  CHECK(UnaryCost(0.0, 1e-6) == doctest::Approx(13.815510557964274).epsilon(1e-15));
  CHECK(UnaryCost(0.5, 1e-6) == doctest::Approx(0.6931471805599453).epsilon(1e-15));
  CHECK(TransitionCost(true, 5.0) == 0.0);
  CHECK(TransitionCost(false, 5.0) == 5.0);
  CHECK(TransitionCost(false, 0.0) == 0.0);
}

TEST_CASE("overlap cost steps") {
  const CostParams p;
  CHECK(OverlapCostFromIou(0.0, p) == 0.0);
  CHECK(OverlapCostFromIou(0.2, p) == 0.0);
  CHECK(std::fabs(OverlapCostFromIou(0.22, p) - 1.1) <= 1e-12);
  CHECK(OverlapCostFromIou(0.41, p) == 1000.0);
  CHECK(OverlapCostFromIou(0.4, p) == 1000.0);
  CHECK(OverlapCostFromIou(1.0, p) == 1000.0);
  CostParams flat = p;
  flat.alpha = 0.0;
  CHECK(OverlapCostFromIou(0.1, flat) == 1000.0);
  CHECK(OverlapCostFromIou(0.0, flat) == 0.0);
}

TEST_CASE("rhythm cost") {
  const CostParams p;
  CHECK(RhythmCost(false, p.l, p) == doctest::Approx(50.0).epsilon(1e-15));
  CHECK(RhythmCost(true, p.m, p) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(RhythmCost(false, 60.0, p) < 1e-15);
  double last = INFINITY;
  for (double tau = 0.0; tau < 20.0; tau += 0.25) {
    const double c = RhythmCost(false, tau, p);
    CHECK(c <= last);
    last = c;
    // literal logistic form
    const double lit = p.gamma1 * (1.0 - 1.0 / (1.0 + std::exp(p.l - tau)));
    CHECK(c == doctest::Approx(lit).epsilon(1e-12));
  }
}

TEST_CASE("edge cost composition") {
  const CostParams p;
  const CropWindow a{100, 100, 160, 90}, far{1000, 600, 160, 90};
  EdgeTerms e = EdgeCost(0, 30, a, 0, a, p);
  CHECK(e.transition == 0.0);
  CHECK(e.overlap == 0.0);
  CHECK(e.rhythm == RhythmCost(true, 30 / 24.0, p));
  e = EdgeCost(0, 24 * 60, a, 1, far, p);
  CHECK(e.Sum() == doctest::Approx(5.0).epsilon(1e-12));
  // identical windows: IoU 1 >= beta, at tau = l
  e = EdgeCost(0, 36, a, 1, a, p);
  CHECK(e.Sum() == doctest::Approx(5.0 + 1000.0 + 50.0).epsilon(1e-15));
  CHECK(TransitionCost(false, p.lambda) + OverlapCostFromIou(0.41, p) + RhythmCost(false, p.l, p) ==
        doctest::Approx(1055.0).epsilon(1e-15));
}

TEST_CASE("cost parameter validation") {
  CostParams p;
  CHECK_NOTHROW(p.Validate());
  CHECK(p.EstablishFrames() == 96);
  CHECK(p.MinShotFrames() == 36);
  CHECK(p.AgeCapFrames() == 336);
  p.alpha = 0.5;
  try {
    p.Validate();
    FAIL("expected ParamError");
  } catch (const ParamError& e) {
    CHECK(e.field() == "alpha");
  }
  p = {};
  p.age_cap_secs = 3.0;
  CHECK_THROWS_AS(p.Validate(), ParamError);
  p = {};
  p.lambda = -1;
  CHECK_THROWS_AS(p.Validate(), ParamError);
  p = {};
  p.fps = 30000.0 / 1001.0;
  CHECK(p.EstablishFrames() == 120);  // ceil(119.88)
}

namespace {

CostParams ToyParams(std::mt19937_64& rng, int T) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CostParams p;
  p.fps = 4.0;
  p.establish_secs = (rng() % 3) * 0.5;  // 0, 2 or 4 frames
  p.lambda = 3.0 * u(rng);
  p.l = 0.25 + 1.0 * u(rng);
  p.m = p.l + 0.5 + 2.0 * u(rng);
  p.gamma1 = 20.0 * u(rng);
  p.gamma2 = 10.0 * u(rng);
  p.alpha = 0.1 + 0.1 * u(rng);
  p.beta = p.alpha + 0.1 + 0.3 * u(rng);
  p.nu = 5.0 + 10.0 * u(rng);  // low enough to be chosen sometimes
  p.age_cap_secs = std::max(p.m, static_cast<double>(T) / p.fps + 1.0);
  return p;
}

}  // namespace

TEST_CASE("optimize equals exhaustive minimum") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int T = 3 + trial % 6;
    const oracle::Toy toy = oracle::MakeToy(1000 + trial, T, 4.0);
    const CostParams p = ToyParams(rng, T);
    const EditDecisionList dp = Optimize(toy.tab, toy.rs, p);
    const EditDecisionList bf = BruteForceOptimize(toy.tab, toy.rs, p);
    const double ref = oracle::BruteMin(toy.tab, toy.rs, oracle::FromCost(p));
    CHECK(std::fabs(dp.total_cost - bf.total_cost) <= 1e-9);
    CHECK(dp.total_cost == doctest::Approx(ref).epsilon(1e-9));
    CHECK(CheckEdl(dp, toy.rs).empty());
    // the audit with exact ages reproduces the total when D >= T
    const CostBreakdown exact = ScoreEdl(dp, toy.tab, toy.rs, p, false);
    CHECK(std::fabs(exact.total - dp.total_cost) <= 1e-9);
    const double lit = oracle::Objective(dp.PerFrame(), toy.tab, toy.rs, oracle::FromCost(p));
    CHECK(lit == doctest::Approx(dp.total_cost).epsilon(1e-9));
  }
}

TEST_CASE("audit reproduces the reported total under the default cap") {
  for (int trial = 0; trial < 10; ++trial) {
    const oracle::Toy toy = oracle::MakeToy(50 + trial, 400, 24.0);
    CostParams p;
    p.establish_secs = 1.0;
    const EditDecisionList e = Optimize(toy.tab, toy.rs, p);
    const CostBreakdown b = ScoreEdl(e, toy.tab, toy.rs, p);
    CHECK(std::fabs(b.total - e.total_cost) <= 1e-9);
    CHECK(b.total == e.breakdown.total);
    CHECK(b.cuts == e.CutCount());
    CHECK(std::fabs(b.unary + b.transition + b.overlap + b.rhythm - b.total) <= 1e-6);
    CHECK(b.transition == doctest::Approx(p.lambda * e.CutCount()));
  }
}

TEST_CASE("establishing segment and simple structure") {
  const oracle::Toy toy = oracle::MakeToy(7, 200, 24.0, false);
  CostParams p;
  p.establish_secs = 2.0;
  const EditDecisionList e = Optimize(toy.tab, toy.rs, p);
  REQUIRE(e.segments.size() >= 2);
  CHECK(e.segments[0].rush_id == toy.rs.master_index);
  CHECK(e.segments[0].Length() == 48);
  CHECK(e.segments[1].rush_id != toy.rs.master_index);
  CHECK(CheckEdl(e, toy.rs).empty());

  // too short: master only
  const oracle::Toy tiny = oracle::MakeToy(8, 40, 24.0);
  const EditDecisionList m = Optimize(tiny.tab, tiny.rs, p);
  REQUIRE(m.segments.size() == 1);
  CHECK(m.segments[0].rush_id == tiny.rs.master_index);
}

TEST_CASE("one available rush gives one segment after the establishing shot") {
  oracle::Toy toy = oracle::MakeToy(3, 120, 24.0, false);
  for (int r = 0; r < 3; ++r) {
    if (r == 1) continue;
    std::fill(toy.rs.rushes[r].available.begin(), toy.rs.rushes[r].available.end(), 0);
    for (int t = 0; t < 120; ++t) toy.tab.At(t, r) = 0.0;
  }
  // the master stays available but carries no attention
  for (int t = 0; t < 120; ++t) {
    toy.tab.At(t, 1) = 0.5;
    toy.tab.At(t, 3) = 0.0;
  }
  CostParams p;
  p.establish_secs = 1.0;
  const EditDecisionList e = Optimize(toy.tab, toy.rs, p);
  REQUIRE(e.segments.size() == 2);
  CHECK(e.segments[1].rush_id == 1);
  CHECK(e.segments[1].end == 120);
}

TEST_CASE("uniform potentials and a large lambda keep one shot") {
  oracle::Toy toy = oracle::MakeToy(4, 300, 24.0, false);
  std::fill(toy.tab.values.begin(), toy.tab.values.end(), 0.5);
  CostParams p;
  p.lambda = 1e6;
  p.establish_secs = 1.0;
  const EditDecisionList e = Optimize(toy.tab, toy.rs, p);
  CHECK(e.CutCount() == 1);
}

TEST_CASE("a shot is held for the minimum length") {
  oracle::Toy toy = oracle::MakeToy(6, 240, 24.0, false);
  for (int t = 0; t < 240; ++t) {
    for (int r = 0; r < 4; ++r) toy.tab.At(t, r) = r == 0 ? 0.9 : 0.05;
  }
  // A drops out of attention for four frames while B takes it
  for (int t = 100; t < 104; ++t) {
    toy.tab.At(t, 0) = 0.0;
    toy.tab.At(t, 1) = 0.9;
  }
  CostParams p;
  p.establish_secs = 1.0;
  p.lambda = 1.0;
  p.gamma1 = 0.0;
  p.mu = 0.0;
  p.nu = 0.0;
  const EditDecisionList held = Optimize(toy.tab, toy.rs, p);
  // the establishing shot is exempt
  for (size_t i = 1; i + 1 < held.segments.size(); ++i) {
    CHECK(held.segments[i].Length() >= p.MinShotFrames());
  }

  p.l = 0.0;  // one-frame shots allowed
  const EditDecisionList flash = Optimize(toy.tab, toy.rs, p);
  CHECK(flash.RushAt(99) == 0);
  CHECK(flash.RushAt(100) == 1);
  CHECK(flash.RushAt(103) == 1);
  CHECK(flash.RushAt(104) == 0);
  CHECK(flash.total_cost < held.total_cost);
}

TEST_CASE("a rush that disappears is left before the minimum length") {
  oracle::Toy toy = oracle::MakeToy(7, 120, 24.0, false);
  for (int t = 0; t < 120; ++t) {
    for (int r = 0; r < 4; ++r) toy.tab.At(t, r) = r == 0 ? 0.9 : r == 1 ? 0.3 : 0.05;
  }
  for (int t = 40; t < 120; ++t) {
    toy.rs.rushes[0].available[t] = 0;
    toy.tab.At(t, 0) = 0.0;
  }
  CostParams p;
  p.establish_secs = 1.0;
  p.gamma1 = 0.0;
  p.mu = 0.0;
  p.nu = 0.0;
  const EditDecisionList e = Optimize(toy.tab, toy.rs, p);
  REQUIRE(e.segments.size() >= 3);
  CHECK(e.segments[1] == Segment{24, 40, 0});
  CHECK(CheckEdl(e, toy.rs).empty());
}

TEST_CASE("infeasible frame is reported") {
  oracle::Toy toy = oracle::MakeToy(5, 30, 24.0);
  for (auto& r : toy.rs.rushes) r.available[17] = 0;
  CostParams p;
  p.establish_secs = 0.25;
  try {
    Optimize(toy.tab, toy.rs, p);
    FAIL("expected InfeasibleError");
  } catch (const InfeasibleError& e) {
    CHECK(e.frame() == 17);
  }
}

TEST_CASE("cut count is non-increasing in lambda") {
  for (int trial = 0; trial < 8; ++trial) {
    const oracle::Toy toy = oracle::MakeToy(200 + trial, 600, 24.0);
    int last = 1 << 30;
    for (double lambda : {0.0, 1.0, 5.0, 20.0, 100.0}) {
      CostParams p;
      p.lambda = lambda;
      p.establish_secs = 1.0;
      const int cuts = Optimize(toy.tab, toy.rs, p).CutCount();
      CHECK(cuts <= last);
      last = cuts;
    }
  }
}

TEST_CASE("serial and parallel optimize agree") {
  const oracle::Toy toy = oracle::MakeToy(77, 500, 24.0);
  const CostParams p;
  const EditDecisionList a = Optimize(toy.tab, toy.rs, p, Exec::kSerial);
  const EditDecisionList b = Optimize(toy.tab, toy.rs, p, Exec::kParallel);
  CHECK(a.segments == b.segments);
  CHECK(a.total_cost == b.total_cost);
}

TEST_CASE("brute force semantics") {
  oracle::Toy toy = oracle::MakeToy(6, 2, 4.0, false);
  CostParams p;
  p.fps = 4.0;
  p.establish_secs = 0.0;
  const EditDecisionList e = BruteForceOptimize(toy.tab, toy.rs, p);
  double best = INFINITY;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      best = std::min(best, oracle::Objective({a, b}, toy.tab, toy.rs, oracle::FromCost(p)));
  CHECK(e.total_cost == doctest::Approx(best).epsilon(1e-12));
  const oracle::Toy big = oracle::MakeToy(6, 20, 4.0);
  CHECK_THROWS_AS(BruteForceOptimize(big.tab, big.rs, p), ParamError);
}

TEST_CASE("segments from frames round trip") {
  const std::vector<int> f = {3, 3, 0, 0, 0, 1, 3};
  const auto s = SegmentsFromFrames(f);
  REQUIRE(s.size() == 4);
  EditDecisionList e;
  e.segments = s;
  CHECK(e.PerFrame() == f);
  CHECK(e.RushAt(4) == 0);
  CHECK(e.CutCount() == 3);
}
