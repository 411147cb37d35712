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

#ifndef STAGECUT_EDL_IO_H_
#define STAGECUT_EDL_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "stagecut/analytics.h"
#include "stagecut/config.h"
#include "stagecut/optimizer.h"
#include "stagecut/scene.h"

namespace stagecut {

// Everything needed to reproduce, inspect or render one edit.
struct EdlDocument {
  std::string engine_version;
  std::string strategy;
  SceneDims dims;
  EditDecisionList edl;
  std::vector<RushInfo> rushes;
  std::vector<CropWindow> frame_windows;  // selected window per frame
  EditStats stats;
  Json config;  // resolved, as ConfigToJson
};

std::string EngineVersion();

Json StatsToJson(const EditStats& stats);
EditStats StatsFromJson(const Json& j);
Json BreakdownToJson(const CostBreakdown& b);
CostBreakdown BreakdownFromJson(const Json& j);

Json EdlToJson(const EdlDocument& doc);
// Throws DataError on missing or mistyped fields.
EdlDocument EdlFromJson(const Json& j);

void WriteEdlJson(const std::filesystem::path& path, const EdlDocument& doc);
EdlDocument ReadEdlJson(const std::filesystem::path& path);

// start_frame,end_frame,rush_id,subset,scale; subset is '+'-joined actor ids,
// empty for the master.
void WriteEdlCsv(std::ostream& out, const EditDecisionList& edl,
                 const std::vector<RushInfo>& rushes);
EditDecisionList ReadEdlCsv(std::istream& in, const std::string& name);

// Aligned plain-text summary for terminals.
std::string FormatStatsTable(const EditStats& stats);

// Crop rectangle in integer pixels of an output-sized source.
struct CropRow {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  bool operator==(const CropRow&) const = default;
};

// Scales a window from scene pixels to `out`, then rounds width and height
// to even integers (height derived from the unrounded width so the aspect
// holds before rounding) and the origin to even integers inside the frame.
CropRow RoundCrop(const CropWindow& w, Size scene, Size out);

// Writes crops.csv (frame,x,y,w,h), crops.cmd (timed crop commands) and
// render_template.txt into `dir`.
void EmitRenderScript(const EdlDocument& doc, Size out, const std::filesystem::path& dir);

}  // namespace stagecut

#endif  // STAGECUT_EDL_IO_H_
