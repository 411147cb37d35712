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
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracle.h"
#include "stagecut/kernels.h"

using namespace stagecut;

TEST_CASE("frame potentials kernel matches the recursion") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 1; n <= 6; ++n) {
    RushSet rs;
    rs.actor_ids.resize(n);
    for (SubsetMask m : EnumerateSubsets(n)) {
      Rush r;
      r.id = rs.RushCount();
      r.subset = m;
      r.scale = SubsetSize(m) == 1 ? Scale::kMS : Scale::kFS;
      r.available = {1};
      rs.rushes.push_back(r);
    }
    Rush master;
    master.id = rs.RushCount();
    master.available = {1};
    rs.rushes.push_back(master);
    rs.master_index = master.id;
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<double> g(n);
      for (double& v : g) v = u(rng);
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      const std::vector<std::uint8_t> tracked(n, 1);
      std::vector<double> out(rs.RushCount());
      kernels::FramePotentials(rs, 0, g, order, tracked, out);
      for (const Rush& r : rs.rushes) {
        const SubsetMask s = r.IsMaster() ? (SubsetMask{1} << n) - 1 : r.subset;
        CHECK(out[r.id] == SubsetPotential(s, g, order));
      }
    }
  }
}

TEST_CASE("overlap matrix matches pairwise costs") {
  const oracle::Toy toy = oracle::MakeToy(21, 10, 24.0);
  const CostParams p;
  std::vector<double> m(16);
  for (int t = 1; t < 10; ++t) {
    kernels::OverlapCosts(toy.rs, t, p, m);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const double want = a == b ? 0.0
                                   : OverlapCost(toy.rs.rushes[a].windows[t - 1],
                                                 toy.rs.rushes[b].windows[t], p);
        CHECK(m[a * 4 + b] == want);
      }
    }
  }
}
