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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracle.h"
#include "stagecut/baselines.h"
#include "stagecut/errors.h"

using namespace stagecut;

namespace {

RushSet Cast3(int frames) {
  std::vector<ActorTrack> cast;
  for (int a = 0; a < 3; ++a) {
    ActorTrack t;
    t.actor_id = a + 1;
    t.boxes.assign(frames, BBox{150.0 + 600 * a, 300, 350.0 + 600 * a, 1000});
    cast.push_back(t);
  }
  return GenerateRushes(cast, {1920, 1080, 24.0, frames}, {});
}

void CheckCommon(const EditDecisionList& e, const RushSet& rs, const CostParams& p) {
  CHECK(CheckEdl(e, rs).empty());
  REQUIRE(!e.segments.empty());
  CHECK(e.segments[0].rush_id == rs.master_index);
  CHECK(e.segments[0].Length() == p.EstablishFrames());
  for (size_t i = 1; i + 1 < e.segments.size(); ++i) {
    CHECK(e.segments[i].Length() >= p.MinShotFrames());
  }
}

}  // namespace

TEST_CASE("random baseline") {
  const RushSet rs = Cast3(24 * 30);
  const CostParams p;
  const EditDecisionList a = EditRandom(rs, p, 5);
  CHECK(a.segments == EditRandom(rs, p, 5).segments);
  CheckCommon(a, rs, p);
  for (size_t i = 1; i + 1 < a.segments.size(); ++i) CHECK(a.segments[i].Length() == 36);
  std::set<std::vector<int>> distinct;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) distinct.insert(EditRandom(rs, p, seed).PerFrame());
  CHECK(distinct.size() > 1);
}

TEST_CASE("wide baseline") {
  const RushSet rs = Cast3(500);
  const EditDecisionList w = EditWide(rs);
  REQUIRE(w.segments.size() == 1);
  CHECK(w.CutCount() == 0);
  CHECK(rs.rushes[w.segments[0].rush_id].label == "ABC");
  CHECK(w.segments[0].end == 500);
}

TEST_CASE("greedy baseline") {
  const RushSet rs = Cast3(480);
  const CostParams p;
  PotentialTable tab;
  tab.frame_count = 480;
  tab.rush_count = rs.RushCount();
  tab.values.assign(480 * tab.rush_count, 0.1);
  const int b = rs.FindRush(0b010);
  for (int t = 0; t < 480; ++t) tab.At(t, b) = 0.9;
  EditDecisionList e = EditGreedyGaze(tab, rs, p);
  CheckCommon(e, rs, p);
  REQUIRE(e.segments.size() == 2);
  CHECK(e.segments[1].rush_id == b);

  // alternating argmax: l is 36 frames, and 36 frames after a cut the
  // argmax is still the current rush, so each shot runs 37
  const int a = rs.FindRush(0b001);
  for (int t = 0; t < 480; ++t) {
    tab.At(t, a) = t % 2 ? 0.9 : 0.1;
    tab.At(t, b) = t % 2 ? 0.1 : 0.9;
  }
  e = EditGreedyGaze(tab, rs, p);
  CheckCommon(e, rs, p);
  for (size_t i = 1; i + 1 < e.segments.size(); ++i) CHECK(e.segments[i].Length() == 37);
  for (size_t i = 1; i < e.segments.size(); ++i) {
    const int t = e.segments[i].start;
    for (int r = 0; r < rs.RushCount(); ++r) CHECK(tab.At(t, e.segments[i].rush_id) >= tab.At(t, r));
  }
}

TEST_CASE("greedy enters the argmax on the oracle toy") {
  const oracle::Toy toy = oracle::MakeToy(12, 600, 24.0);
  CostParams p;
  p.establish_secs = 1.0;
  const EditDecisionList e = EditGreedyGaze(toy.tab, toy.rs, p);
  CHECK(CheckEdl(e, toy.rs).empty());
  for (size_t i = 1; i < e.segments.size(); ++i) {
    const int t = e.segments[i].start;
    const int r = e.segments[i].rush_id;
    for (const Rush& q : toy.rs.rushes) {
      if (!q.AvailableAt(t)) continue;
      if (t == 24 && q.IsMaster()) continue;
      CHECK(toy.tab.At(t, r) >= toy.tab.At(t, q.id));
    }
  }
}

TEST_CASE("speaker baseline") {
  const RushSet rs = Cast3(24 * 60);
  const CostParams p;
  const int A = rs.FindRush(0b001), B = rs.FindRush(0b010), AB = rs.FindRush(0b011);

  EditDecisionList e = EditSpeaker({{0, 1440, {1}}}, rs, p);
  CheckCommon(e, rs, p);
  REQUIRE(e.segments.size() == 2);
  CHECK(e.segments[1].rush_id == A);

  e = EditSpeaker({{0, 500, {1}}, {500, 1440, {2}}}, rs, p);
  REQUIRE(e.segments.size() == 3);
  CHECK(e.segments[2].rush_id == B);
  CHECK(e.segments[2].start == 500);

  // change 10 frames after the previous cut is delayed to l
  e = EditSpeaker({{0, 106, {1}}, {106, 1440, {1, 2}}}, rs, p);
  REQUIRE(e.segments.size() == 3);
  CHECK(e.segments[2].rush_id == AB);
  CHECK(e.segments[2].start == 96 + 36);

  // 12 s of silence: wide after 10 s
  e = EditSpeaker({{0, 200, {1}}, {200, 488, {}}, {488, 1440, {2}}}, rs, p);
  const int wide_at = 200 + 240;
  CHECK(e.RushAt(wide_at - 1) == A);
  CHECK(e.RushAt(wide_at) == rs.full_index);
  CHECK(e.RushAt(488) == B);

  CHECK_THROWS_AS(EditSpeaker({{0, 1440, {9}}}, rs, p), DataError);
}

TEST_CASE("baselines on the oracle toy stay valid") {
  for (int s = 0; s < 5; ++s) {
    const oracle::Toy toy = oracle::MakeToy(300 + s, 400, 24.0);
    CostParams p;
    p.establish_secs = 1.0;
    CHECK(CheckEdl(EditRandom(toy.rs, p, s), toy.rs).empty());
    CHECK(CheckEdl(EditGreedyGaze(toy.tab, toy.rs, p), toy.rs).empty());
  }
}
