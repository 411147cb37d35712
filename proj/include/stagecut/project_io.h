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

#ifndef STAGECUT_PROJECT_IO_H_
#define STAGECUT_PROJECT_IO_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stagecut/analytics.h"
#include "stagecut/baselines.h"
#include "stagecut/config.h"
#include "stagecut/potential.h"
#include "stagecut/scene.h"
#include "stagecut/shots.h"

namespace stagecut {

namespace fs = std::filesystem;

// manifest.json: scene dims, the display used during gaze capture and the
// input files, relative to the manifest's directory.
struct ProjectManifest {
  fs::path base_dir;
  int width = 0;
  int height = 0;
  double fps = 0.0;
  int frame_count = 0;  // 0: one past the last tracked frame
  Size display;         // defaults to the master size
  fs::path tracks;
  std::vector<fs::path> gaze;
  std::optional<fs::path> speakers;
  std::optional<fs::path> config;
  std::map<int, std::string> labels;
  Json overrides = Json::object();

  fs::path Resolve(const fs::path& p) const { return p.is_absolute() ? p : base_dir / p; }
};

ProjectManifest ReadManifest(const fs::path& path);

struct Project {
  ProjectManifest manifest;
  SceneDims dims;
  Size display;
  std::vector<ActorTrack> tracks;  // gap-filled
  GazeFrames gaze;
  GazeLoadStats gaze_stats;
  std::optional<std::vector<SpeakerInterval>> speakers;
  EngineConfig config;
  ValidationReport report;
};

// Loads and validates a project. `overrides` are "key=value" assignments
// applied after the config file and the manifest's overrides. Parse errors
// name file and line; fatal validation issues throw DataError.
Project LoadProject(const fs::path& manifest_path,
                    const std::vector<std::string>& overrides = {});

// frame,actor_id,x1,y1,x2,y2
std::vector<ActorTrack> ReadTracksCsv(std::istream& in, const std::string& name,
                                      ValidationReport* report = nullptr);
// time_ms,user_id,x,y
std::vector<RawGazeSample> ReadGazeCsv(std::istream& in, const std::string& name);
// start_frame,end_frame,ids   (ids joined by '+', empty for silence)
std::vector<SpeakerInterval> ReadSpeakersCsv(std::istream& in, const std::string& name);

void WriteTracksCsv(std::ostream& out, const std::vector<ActorTrack>& tracks);
void WriteGazeCsv(std::ostream& out, const std::vector<RawGazeSample>& gaze);
void WriteSpeakersCsv(std::ostream& out, const std::vector<SpeakerInterval>& speakers);

// Writes manifest.json, tracks.csv, gaze.csv, speakers.csv and config.json.
fs::path WriteProject(const SyntheticProject& proj, const fs::path& dir,
                      const EngineConfig& config = {});

// Diagnostic dumps.
void DumpRushesCsv(std::ostream& out, const RushSet& rushes);
void DumpPotentialsCsv(std::ostream& out, const PotentialTable& table, const RushSet& rushes);

// Writes `text` to `path`, throwing DataError if that fails.
void WriteTextFile(const fs::path& path, const std::string& text);

}  // namespace stagecut

#endif  // STAGECUT_PROJECT_IO_H_
