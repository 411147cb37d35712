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

#include "stagecut/optimizer.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stagecut/errors.h"
#include "stagecut/kernels.h"

namespace stagecut {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

std::vector<int> EditDecisionList::PerFrame() const {
  std::vector<int> out(FrameCount());
  for (const Segment& s : segments) {
    std::fill(out.begin() + s.start, out.begin() + s.end, s.rush_id);
  }
  return out;
}

int EditDecisionList::RushAt(int t) const {
  for (const Segment& s : segments) {
    if (t >= s.start && t < s.end) return s.rush_id;
  }
  return -1;
}

std::vector<Segment> SegmentsFromFrames(const std::vector<int>& per_frame) {
  std::vector<Segment> out;
  for (int t = 0; t < static_cast<int>(per_frame.size()); ++t) {
    if (out.empty() || out.back().rush_id != per_frame[t]) {
      out.push_back({t, t + 1, per_frame[t]});
    } else {
      out.back().end = t + 1;
    }
  }
  return out;
}

std::vector<std::string> CheckEdl(const EditDecisionList& edl, const RushSet& rs) {
  std::vector<std::string> problems;
  int expect = 0;
  for (size_t i = 0; i < edl.segments.size(); ++i) {
    const Segment& s = edl.segments[i];
    const std::string where = "segment " + std::to_string(i);
    if (s.start != expect) problems.push_back(where + " does not start where the last ended");
    if (s.end <= s.start) problems.push_back(where + " is empty");
    if (i > 0 && edl.segments[i - 1].rush_id == s.rush_id) {
      problems.push_back(where + " repeats the previous rush");
    }
    if (s.rush_id < 0 || s.rush_id >= rs.RushCount()) {
      problems.push_back(where + " has unknown rush " + std::to_string(s.rush_id));
    } else if (s.start >= 0 && s.end <= rs.frame_count &&
               !rs.rushes[s.rush_id].AvailableOver(s.start, s.end)) {
      problems.push_back(where + " uses rush " + std::to_string(s.rush_id) +
                         " where it is unavailable");
    }
    expect = s.end;
  }
  if (expect != rs.frame_count) problems.push_back("segments do not cover the video");
  return problems;
}

CostBreakdown ScoreEdl(const EditDecisionList& edl, const PotentialTable& table,
                       const RushSet& rs, const CostParams& params, bool cap_age) {
  const std::vector<int> seq = edl.PerFrame();
  const int T = static_cast<int>(seq.size());
  const int E = params.EstablishFrames();
  const int D = params.AgeCapFrames();
  CostBreakdown b;
  b.cuts = edl.CutCount();
  int age = 0;
  for (int t = 0; t < T; ++t) {
    const int r = seq[t];
    if (t >= E) {
      if (t > 0) {
        const int p = seq[t - 1];
        const int a = cap_age ? std::min(age, D) : age;
        const EdgeTerms e =
            EdgeCost(p, a, rs.rushes[p].windows[t - 1], r, rs.rushes[r].windows[t], params);
        // same order as the DP relaxation
        b.total += e.rhythm;
        if (p != r) {
          b.total += e.transition;
          b.total += e.overlap;
        }
        b.transition += e.transition;
        b.overlap += e.overlap;
        b.rhythm += e.rhythm;
      }
      const double u = UnaryCost(table.At(t, r), params.g_floor);
      b.total += u;
      b.unary += u;
    }
    age = (t > 0 && seq[t - 1] == r) ? age + 1 : 1;
  }
  return b;
}

namespace {

// Rushes that may be left before the minimum shot length at t: the
// establishing shot, and anything unavailable at t.
std::vector<std::uint8_t> ExitFreeAt(const RushSet& rs, int t, int E) {
  std::vector<std::uint8_t> free(rs.RushCount());
  for (const Rush& r : rs.rushes) free[r.id] = t == E || !r.AvailableAt(t);
  return free;
}

std::vector<std::uint8_t> AllowedAt(const RushSet& rs, int t, int E) {
  std::vector<std::uint8_t> allowed(rs.RushCount());
  bool other = false;
  for (const Rush& r : rs.rushes) {
    allowed[r.id] = r.AvailableAt(t);
    if (!r.IsMaster() && allowed[r.id]) other = true;
  }
  if (t == E && E > 0 && other) allowed[rs.master_index] = 0;
  return allowed;
}

EditDecisionList MasterOnly(const RushSet& rs) {
  EditDecisionList edl;
  edl.segments.push_back({0, rs.frame_count, rs.master_index});
  return edl;
}

bool AllInfinite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double c) { return c == kInf; });
}

}  // namespace

EditDecisionList Optimize(const PotentialTable& table, const RushSet& rs,
                          const CostParams& params, Exec exec) {
  params.Validate();
  const int T = rs.frame_count;
  const int R = rs.RushCount();
  const int E = params.EstablishFrames();
  const int D = params.AgeCapFrames();
  const int L = params.MinShotFrames();
  if (table.frame_count != T || table.rush_count != R) {
    throw DataError("optimize: potential table does not match the rush set");
  }
  if (T <= E) return MasterOnly(rs);

  std::vector<double> rhythm_cut(D), rhythm_stay(D);
  for (int a = 0; a < D; ++a) {
    rhythm_cut[a] = RhythmCost(false, (a + 1) / params.fps, params);
    rhythm_stay[a] = RhythmCost(true, (a + 1) / params.fps, params);
  }

  kernels::Layer prev(R, D), next(R, D);
  std::vector<kernels::Backptr> back(T);
  std::vector<double> unary(R), overlap(static_cast<size_t>(R) * R), area(R);
  auto fill_unary = [&](int t) {
    for (int r = 0; r < R; ++r) unary[r] = UnaryCost(table.At(t, r), params.g_floor);
  };

  int first = E;
  if (E == 0) {
    fill_unary(0);
    const auto allowed = AllowedAt(rs, 0, E);
    for (int r = 0; r < R; ++r) {
      if (allowed[r]) prev.cost[prev.Index(r, 0)] = 0.0 + unary[r];
    }
    if (AllInfinite(prev.cost)) throw InfeasibleError(0);
    first = 1;
  } else {
    // The master has been on screen for E frames.
    prev.cost[prev.Index(rs.master_index, std::min(E, D) - 1)] = 0.0;
  }

  for (int t = first; t < T; ++t) {
    fill_unary(t);
    const auto allowed = AllowedAt(rs, t, E);
    const auto exit_free = ExitFreeAt(rs, t, E);
    kernels::OverlapCosts(rs, t, params, overlap);
    for (int r = 0; r < R; ++r) area[r] = rs.rushes[r].windows[t - 1].Area();
    kernels::StepInputs in;
    in.prev = &prev;
    in.unary = unary;
    in.overlap = overlap;
    in.rhythm_cut = rhythm_cut;
    in.rhythm_stay = rhythm_stay;
    in.area_prev = area;
    in.allowed = allowed;
    in.min_exit = L - 1;
    in.exit_free = exit_free;
    in.lambda = params.lambda;
    if (exec == Exec::kParallel) {
      kernels::RelaxParallel(in, next, back[t]);
    } else {
      kernels::RelaxSerial(in, next, back[t]);
    }
    if (AllInfinite(next.cost)) throw InfeasibleError(t);
    std::swap(prev, next);
  }

  int br = -1, ba = -1, bk = 0;
  double bc = kInf, barea = kInf;
  for (int r = 0; r < R; ++r) {
    const double ar = rs.rushes[r].windows[T - 1].Area();
    for (int a = 0; a < D; ++a) {
      const double c = prev.cost[prev.Index(r, a)];
      const int k = prev.cuts[prev.Index(r, a)];
      if (c < bc || (c == bc && (k < bk || (k == bk && ar < barea)))) {
        bc = c;
        bk = k;
        barea = ar;
        br = r;
        ba = a;
      }
    }
  }

  std::vector<int> seq(T, rs.master_index);
  int r = br, a = ba;
  for (int t = T - 1; t >= E; --t) {
    seq[t] = r;
    if (t == 0 || t == E) break;
    const kernels::Backptr& bp = back[t];
    if (a == 0) {
      const int p = bp.cut_from_rush[r];
      a = bp.cut_from_age[r];
      r = p;
    } else if (!(a == D - 1 && bp.cap_from_cap[r])) {
      --a;
    }
  }

  EditDecisionList edl;
  edl.segments = SegmentsFromFrames(seq);
  edl.total_cost = bc;
  edl.breakdown = ScoreEdl(edl, table, rs, params, true);
  return edl;
}

namespace {

struct BruteSearch {
  BruteSearch(const PotentialTable& tab, const RushSet& r, const CostParams& p, int frames)
      : table(tab), rs(r), params(p), T(frames) {}

  const PotentialTable& table;
  const RushSet& rs;
  const CostParams& params;
  int T = 0;
  std::vector<std::vector<std::uint8_t>> allowed, exit_free;
  std::vector<int> seq, best_seq;
  double best = kInf;

  void Run(int t, int age, double cost) {
    if (t == T) {
      if (cost < best) {
        best = cost;
        best_seq = seq;
      }
      return;
    }
    for (int q = 0; q < rs.RushCount(); ++q) {
      if (!allowed[t][q]) continue;
      double c = cost;
      int next_age = 1;
      if (t > 0) {
        const int p = seq[t - 1];
        if (p != q && age < params.MinShotFrames() && !exit_free[t][p]) continue;
        c += EdgeCost(p, age, rs.rushes[p].windows[t - 1], q, rs.rushes[q].windows[t], params)
                 .Sum();
        if (p == q) next_age = age + 1;
      }
      c += UnaryCost(table.At(t, q), params.g_floor);
      seq[t] = q;
      Run(t + 1, next_age, c);
    }
  }
};

}  // namespace

EditDecisionList BruteForceOptimize(const PotentialTable& table, const RushSet& rs,
                                    const CostParams& params, double limit) {
  params.Validate();
  const int T = rs.frame_count;
  const int E = params.EstablishFrames();
  if (T <= E) return MasterOnly(rs);
  const double space = std::pow(static_cast<double>(rs.RushCount()), T - E);
  if (space > limit) {
    throw ParamError("brute_force_limit", "search space of " + std::to_string(space) +
                                              " sequences exceeds the limit");
  }
  BruteSearch s(table, rs, params, T);
  s.seq.assign(T, rs.master_index);
  s.allowed.resize(T);
  s.exit_free.resize(T);
  for (int t = E; t < T; ++t) {
    s.allowed[t] = AllowedAt(rs, t, E);
    s.exit_free[t] = ExitFreeAt(rs, t, E);
  }
  s.Run(E, E, 0.0);
  if (s.best == kInf) throw InfeasibleError(E);
  EditDecisionList edl;
  edl.segments = SegmentsFromFrames(s.best_seq);
  edl.total_cost = s.best;
  edl.breakdown = ScoreEdl(edl, table, rs, params, false);
  return edl;
}

}  // namespace stagecut
