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

#include "stagecut/engine.h"

#include "stagecut/baselines.h"
#include "stagecut/errors.h"
#include "stagecut/optimizer.h"

namespace stagecut {

namespace {

constexpr std::pair<Strategy, std::string_view> kStrategies[] = {
    {Strategy::kGazed, "gazed"},   {Strategy::kRandom, "random"},
    {Strategy::kWide, "wide"},     {Strategy::kGreedy, "greedy"},
    {Strategy::kSpeaker, "speaker"},
};

}  // namespace

std::string_view StrategyName(Strategy s) {
  for (const auto& [k, name] : kStrategies) {
    if (k == s) return name;
  }
  return "unknown";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  for (const auto& [k, n] : kStrategies) {
    if (n == name) return k;
  }
  return std::nullopt;
}

Engine::Engine(Project project, const SubsetFilter& filter, Exec exec)
    : project_(std::move(project)), exec_(exec) {
  const EngineConfig& cfg = project_.config;
  rushes_ = GenerateRushes(project_.tracks, project_.dims, cfg.framing, filter, exec_);
  table_ = BuildPotentialTable(rushes_, project_.gaze, cfg.potential, exec_);
  info_ = DescribeRushes(rushes_);
}

Engine Engine::Load(const std::filesystem::path& manifest,
                    const std::vector<std::string>& overrides, std::string_view whitelist,
                    Exec exec) {
  Project p = LoadProject(manifest, overrides);
  SubsetFilter filter;
  if (!whitelist.empty()) {
    std::vector<int> ids;
    for (const ActorTrack& t : p.tracks) ids.push_back(t.actor_id);
    filter = SubsetFilter::Parse(whitelist, ids);
  }
  return Engine(std::move(p), filter, exec);
}

EngineConfig Engine::ResolveConfig(const Json& overrides) const {
  EngineConfig cfg = project_.config;
  if (!overrides.is_null()) {
    if (!overrides.is_object()) throw ParamError("params", "must be an object");
    for (auto it = overrides.begin(); it != overrides.end(); ++it) {
      if (!IsCostKey(it.key())) {
        throw ParamError(it.key(), "not an edit parameter");
      }
      ApplyOverride(cfg, it.key(), it.value());
    }
  }
  cfg.cost.fps = project_.dims.fps;
  cfg.Validate();
  return cfg;
}

EdlDocument Engine::Run(const EditRequest& req) const {
  const EngineConfig cfg = ResolveConfig(req.overrides);
  const CostParams& params = cfg.cost;
  EditDecisionList edl;
  switch (req.strategy) {
    case Strategy::kGazed:
      edl = Optimize(table_, rushes_, params, exec_);
      break;
    case Strategy::kRandom:
      edl = EditRandom(rushes_, params, req.seed);
      break;
    case Strategy::kWide:
      edl = EditWide(rushes_);
      break;
    case Strategy::kGreedy:
      edl = EditGreedyGaze(table_, rushes_, params);
      break;
    case Strategy::kSpeaker:
      if (!project_.speakers) throw ParamError("strategy", "project has no speaker file");
      edl = EditSpeaker(*project_.speakers, rushes_, params, cfg.silence_secs);
      break;
  }
  const CostBreakdown cost = ScoreEdl(edl, table_, rushes_, params);
  edl.breakdown = cost;
  edl.total_cost = cost.total;

  EdlDocument doc;
  doc.engine_version = EngineVersion();
  doc.strategy = std::string(StrategyName(req.strategy));
  doc.dims = project_.dims;
  doc.frame_windows = SelectedWindows(edl, rushes_);
  doc.rushes = info_;
  doc.stats = CutStats(edl, doc.frame_windows, info_, params);
  doc.stats.cost = cost;
  doc.edl = std::move(edl);
  doc.config = ConfigToJson(cfg);
  return doc;
}

}  // namespace stagecut
