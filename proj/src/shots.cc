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

#include "stagecut/shots.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "stagecut/errors.h"
#include "stagecut/smoother.h"

namespace stagecut {

std::string_view ScaleName(Scale s) {
  switch (s) {
    case Scale::kMCU: return "MCU";
    case Scale::kMS: return "MS";
    case Scale::kFS: return "FS";
    case Scale::kMaster: return "MASTER";
  }
  return "?";
}

std::optional<Scale> ParseScale(std::string_view name) {
  for (Scale s : {Scale::kMCU, Scale::kMS, Scale::kFS, Scale::kMaster}) {
    if (ScaleName(s) == name) return s;
  }
  return std::nullopt;
}

void FramingConfig::Validate() const {
  auto frac = [](const char* field, double v) {
    if (!(v > 0.0 && v < 1.0)) throw ParamError(field, "must lie in (0,1)");
  };
  frac("ms_height_frac", ms_height_frac);
  frac("mcu_height_frac", mcu_height_frac);
  frac("headroom_frac", headroom_frac);
  frac("fs_padding_frac", fs_padding_frac);
  if (!(smooth_w1 >= 0.0)) throw ParamError("smooth_w1", "must be >= 0");
  if (!(smooth_w2 >= 0.0)) throw ParamError("smooth_w2", "must be >= 0");
  if (single_scale != Scale::kMS && single_scale != Scale::kMCU) {
    throw ParamError("single_shot_scale", "must be MS or MCU");
  }
  if (max_actors < 1 || max_actors > 16) throw ParamError("max_actors", "must lie in [1,16]");
}

namespace {

void Combinations(int n, int k, int start, SubsetMask acc, std::vector<SubsetMask>& out) {
  if (k == 0) {
    out.push_back(acc);
    return;
  }
  for (int i = start; i <= n - k; ++i) {
    Combinations(n, k - 1, i + 1, acc | (SubsetMask{1} << i), out);
  }
}

}  // namespace

std::vector<SubsetMask> EnumerateSubsets(int n, int max_actors) {
  if (n < 1) throw ParamError("actors", "need at least one actor");
  if (n > max_actors) {
    throw ParamError("actors", std::to_string(n) + " actors exceed the maximum of " +
                                   std::to_string(max_actors) +
                                   "; restrict shots with --subset-whitelist");
  }
  std::vector<SubsetMask> out;
  out.reserve((std::size_t{1} << n) - 1);
  for (int k = 1; k <= n; ++k) Combinations(n, k, 0, 0, out);
  return out;
}

CropWindow FrameSingle(const BBox& box, Scale scale, const FramingConfig& cfg,
                       Size frame) {
  const double frac = scale == Scale::kMCU ? cfg.mcu_height_frac : cfg.ms_height_frac;
  const double h = frac * box.Height();
  const double top = box.y1 - cfg.headroom_frac * h;
  CropWindow win = CropWindow::FromWidth({box.Center().x, top + 0.5 * h},
                                         h * frame.Aspect(), frame.Aspect());
  return ClampToFrame(win, frame);
}

CropWindow FrameGroupUnclamped(std::span<const BBox> boxes, const FramingConfig& cfg,
                               double aspect) {
  Rect u = boxes.front();
  for (const BBox& b : boxes.subspan(1)) {
    u.x1 = std::min(u.x1, b.x1);
    u.y1 = std::min(u.y1, b.y1);
    u.x2 = std::max(u.x2, b.x2);
    u.y2 = std::max(u.y2, b.y2);
  }
  const double pw = u.Width() * (1.0 + 2.0 * cfg.fs_padding_frac);
  const double ph = u.Height() * (1.0 + 2.0 * cfg.fs_padding_frac);
  return CropWindow::FromWidth(u.Center(), std::max(pw, ph * aspect), aspect);
}

CropWindow FrameGroup(std::span<const BBox> boxes, const FramingConfig& cfg, Size frame) {
  const CropWindow win = FrameGroupUnclamped(boxes, cfg, frame.Aspect());
  if (win.w >= frame.width || win.h >= frame.height) return CropWindow::FullFrame(frame);
  return ClampToFrame(win, frame);
}

bool SubsetFilter::Accepts(SubsetMask m) const {
  if (Empty()) return true;
  if (std::find(masks.begin(), masks.end(), m) != masks.end()) return true;
  return std::find(sizes.begin(), sizes.end(), SubsetSize(m)) != sizes.end();
}

SubsetFilter SubsetFilter::Parse(std::string_view text, const std::vector<int>& actor_ids) {
  SubsetFilter f;
  auto fail = [&](std::string_view tok) {
    throw ParamError("subset-whitelist", "bad token '" + std::string(tok) + "'");
  };
  auto to_int = [&](std::string_view s) {
    if (s.empty()) fail(s);
    int v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') fail(s);
      v = v * 10 + (c - '0');
    }
    return v;
  };
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (tok.empty()) continue;
    if (tok.starts_with("size:")) {
      f.sizes.push_back(to_int(tok.substr(5)));
      continue;
    }
    SubsetMask m = 0;
    size_t p = 0;
    while (p <= tok.size()) {
      size_t plus = tok.find('+', p);
      if (plus == std::string_view::npos) plus = tok.size();
      const int id = to_int(tok.substr(p, plus - p));
      auto it = std::find(actor_ids.begin(), actor_ids.end(), id);
      if (it == actor_ids.end()) {
        throw ParamError("subset-whitelist", "unknown actor id " + std::to_string(id));
      }
      m |= SubsetMask{1} << (it - actor_ids.begin());
      p = plus + 1;
    }
    f.masks.push_back(m);
  }
  return f;
}

bool Rush::AvailableOver(int begin, int end) const {
  for (int t = begin; t < end; ++t) {
    if (!available[t]) return false;
  }
  return true;
}

std::vector<int> RushSet::SubsetActorIds(SubsetMask m) const {
  std::vector<int> ids;
  for (int i = 0; i < ActorCount(); ++i) {
    if (m & (SubsetMask{1} << i)) ids.push_back(actor_ids[i]);
  }
  return ids;
}

std::string RushSet::SubsetLabel(SubsetMask m) const {
  if (m == 0) return "master";
  std::string s;
  for (int i = 0; i < ActorCount(); ++i) {
    if (m & (SubsetMask{1} << i)) s += actor_labels[i];
  }
  return s;
}

int RushSet::FindRush(SubsetMask m) const {
  for (const Rush& r : rushes) {
    if (!r.IsMaster() && r.subset == m) return r.id;
  }
  return -1;
}

namespace {

Rush BuildRush(SubsetMask mask, bool full_set, const std::vector<const ActorTrack*>& actors,
               const SceneDims& dims, const FramingConfig& cfg) {
  const int n = static_cast<int>(actors.size());
  const Size frame = dims.FrameSize();
  const bool single = SubsetSize(mask) == 1;
  Rush rush;
  rush.subset = mask;
  rush.scale = single ? cfg.single_scale : Scale::kFS;

  std::vector<std::optional<CropWindow>> raw(dims.frame_count);
  std::vector<BBox> boxes;
  for (int t = 0; t < dims.frame_count; ++t) {
    boxes.clear();
    bool complete = true;
    for (int i = 0; i < n; ++i) {
      if (!(mask & (SubsetMask{1} << i))) continue;
      if (actors[i]->TrackedAt(t)) {
        boxes.push_back(*actors[i]->boxes[t]);
      } else {
        complete = false;
      }
    }
    if (boxes.empty() || (!complete && !full_set)) continue;
    raw[t] = single ? FrameSingle(boxes.front(), rush.scale, cfg, frame)
                    : FrameGroup(boxes, cfg, frame);
  }

  auto smooth = StabilizeTrajectory(raw, cfg.smooth_w1, cfg.W2At(dims.fps), frame);
  rush.available.assign(dims.frame_count, 0);
  if (!smooth) {
    rush.windows.assign(dims.frame_count, CropWindow::FullFrame(frame));
    return rush;
  }
  rush.windows = std::move(*smooth);
  for (int t = 0; t < dims.frame_count; ++t) rush.available[t] = raw[t].has_value();
  return rush;
}

}  // namespace

RushSet GenerateRushes(const std::vector<ActorTrack>& tracks, const SceneDims& dims,
                       const FramingConfig& cfg, const SubsetFilter& filter, Exec exec) {
  dims.Validate();
  cfg.Validate();
  std::vector<const ActorTrack*> actors;
  for (const ActorTrack& t : tracks) actors.push_back(&t);
  std::sort(actors.begin(), actors.end(),
            [](const ActorTrack* a, const ActorTrack* b) { return a->actor_id < b->actor_id; });
  const int n = static_cast<int>(actors.size());
  if (n < 1) throw DataError("rushes: no actors");

  RushSet set;
  set.frame = dims.FrameSize();
  set.fps = dims.fps;
  set.frame_count = dims.frame_count;
  for (int i = 0; i < n; ++i) {
    set.actor_ids.push_back(actors[i]->actor_id);
    std::string label = actors[i]->label;
    if (label.empty()) label = n <= 26 ? std::string(1, static_cast<char>('A' + i)) : std::to_string(actors[i]->actor_id);
    set.actor_labels.push_back(std::move(label));
  }

  std::vector<SubsetMask> masks;
  if (n <= cfg.max_actors) {
    for (SubsetMask m : EnumerateSubsets(n, cfg.max_actors)) {
      if (filter.Accepts(m)) masks.push_back(m);
    }
  } else {
    if (filter.Empty() || n > 31) EnumerateSubsets(n, cfg.max_actors);  // throws
    std::vector<SubsetMask> cand = filter.masks;
    for (int k : filter.sizes) {
      if (k >= 1 && k <= n) Combinations(n, k, 0, 0, cand);
    }
    std::sort(cand.begin(), cand.end(), [](SubsetMask a, SubsetMask b) {
      const int sa = SubsetSize(a), sb = SubsetSize(b);
      if (sa != sb) return sa < sb;
      // lexicographic on member indices == reverse bit order of the low bit
      for (SubsetMask x = a, y = b; x && y; x &= x - 1, y &= y - 1) {
        const int ia = __builtin_ctz(x), ib = __builtin_ctz(y);
        if (ia != ib) return ia < ib;
      }
      return false;
    });
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    masks = std::move(cand);
  }

  const SubsetMask full = set.FullMask();
  set.singles.resize(n);
  const int nm = static_cast<int>(masks.size());
  std::vector<Rush> built(nm);
  // Independent subsets: no shared mutable state.
#pragma omp parallel for schedule(dynamic) if (exec == Exec::kParallel)
  for (int j = 0; j < n + nm; ++j) {
    if (j < n) {
      set.singles[j] = BuildRush(SubsetMask{1} << j, n == 1, actors, dims, cfg);
    } else {
      const SubsetMask m = masks[j - n];
      if (SubsetSize(m) > 1) built[j - n] = BuildRush(m, m == full, actors, dims, cfg);
    }
  }
  for (int i = 0; i < n; ++i) set.singles[i].label = set.SubsetLabel(SubsetMask{1} << i);
  for (int j = 0; j < nm; ++j) {
    if (SubsetSize(masks[j]) == 1) built[j] = set.singles[__builtin_ctz(masks[j])];
    built[j].id = j;
    built[j].label = set.SubsetLabel(masks[j]);
    if (masks[j] == full) set.full_index = j;
  }
  set.rushes = std::move(built);
  for (int i = 0; i < n; ++i) set.singles[i].id = set.FindRush(SubsetMask{1} << i);

  Rush master;
  master.id = nm;
  master.subset = 0;
  master.scale = Scale::kMaster;
  master.label = "master";
  master.windows.assign(dims.frame_count, CropWindow::FullFrame(set.frame));
  master.available.assign(dims.frame_count, 1);
  set.rushes.push_back(std::move(master));
  set.master_index = nm;
  return set;
}

}  // namespace stagecut
