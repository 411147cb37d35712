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

#include "stagecut/edl_io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stagecut/errors.h"
#include "stagecut/project_io.h"

namespace stagecut {

namespace fs = std::filesystem;

std::string EngineVersion() {
#ifdef STAGECUT_VERSION
  return STAGECUT_VERSION;
#else
  return "unknown";
#endif
}

Json BreakdownToJson(const CostBreakdown& b) {
  return Json{{"unary", b.unary},       {"transition", b.transition}, {"overlap", b.overlap},
              {"rhythm", b.rhythm},     {"total", b.total},           {"cuts", b.cuts}};
}

CostBreakdown BreakdownFromJson(const Json& j) {
  CostBreakdown b;
  b.unary = j.at("unary").get<double>();
  b.transition = j.at("transition").get<double>();
  b.overlap = j.at("overlap").get<double>();
  b.rhythm = j.at("rhythm").get<double>();
  b.total = j.at("total").get<double>();
  b.cuts = j.at("cuts").get<int>();
  return b;
}

Json StatsToJson(const EditStats& s) {
  Json j;
  j["frame_count"] = s.frame_count;
  j["segment_count"] = s.segment_count;
  j["cut_count"] = s.cut_count;
  j["mean_shot_secs"] = s.mean_shot_secs;
  j["min_shot_secs"] = s.min_shot_secs;
  j["max_shot_secs"] = s.max_shot_secs;
  Json hist = Json::object();
  for (const auto& [k, v] : s.size_histogram) hist[k] = v;
  j["size_histogram"] = hist;
  j["jump_cut_count"] = s.jump_cut_count;
  j["min_length_violated"] = s.min_length_violated;
  j["cost"] = s.cost ? BreakdownToJson(*s.cost) : Json(nullptr);
  return j;
}

EditStats StatsFromJson(const Json& j) {
  EditStats s;
  s.frame_count = j.at("frame_count").get<int>();
  s.segment_count = j.at("segment_count").get<int>();
  s.cut_count = j.at("cut_count").get<int>();
  s.mean_shot_secs = j.at("mean_shot_secs").get<double>();
  s.min_shot_secs = j.at("min_shot_secs").get<double>();
  s.max_shot_secs = j.at("max_shot_secs").get<double>();
  for (auto it = j.at("size_histogram").begin(); it != j.at("size_histogram").end(); ++it) {
    s.size_histogram[it.key()] = it.value().get<int>();
  }
  s.jump_cut_count = j.at("jump_cut_count").get<int>();
  s.min_length_violated = j.at("min_length_violated").get<bool>();
  if (j.contains("cost") && !j.at("cost").is_null()) s.cost = BreakdownFromJson(j.at("cost"));
  return s;
}

Json EdlToJson(const EdlDocument& doc) {
  Json j;
  j["engine_version"] = doc.engine_version;
  j["strategy"] = doc.strategy;
  j["width"] = doc.dims.width;
  j["height"] = doc.dims.height;
  j["fps"] = doc.dims.fps;
  j["frame_count"] = doc.dims.frame_count;
  Json segs = Json::array();
  for (const Segment& s : doc.edl.segments) {
    segs.push_back({{"start_frame", s.start}, {"end_frame", s.end}, {"rush_id", s.rush_id}});
  }
  j["segments"] = segs;
  j["total_cost"] = doc.edl.total_cost;
  j["cost"] = BreakdownToJson(doc.edl.breakdown);
  Json rushes = Json::array();
  for (const RushInfo& r : doc.rushes) {
    rushes.push_back({{"id", r.id},
                      {"label", r.label},
                      {"scale", std::string(ScaleName(r.scale))},
                      {"actors", r.actor_ids}});
  }
  j["rushes"] = rushes;
  Json wins = Json::array();
  for (const CropWindow& w : doc.frame_windows) wins.push_back({w.cx, w.cy, w.w, w.h});
  j["windows"] = wins;
  j["stats"] = StatsToJson(doc.stats);
  j["config"] = doc.config;
  return j;
}

EdlDocument EdlFromJson(const Json& j) {
  EdlDocument doc;
  try {
    doc.engine_version = j.at("engine_version").get<std::string>();
    doc.strategy = j.at("strategy").get<std::string>();
    doc.dims = {j.at("width").get<int>(), j.at("height").get<int>(), j.at("fps").get<double>(),
                j.at("frame_count").get<int>()};
    for (const Json& s : j.at("segments")) {
      doc.edl.segments.push_back({s.at("start_frame").get<int>(), s.at("end_frame").get<int>(),
                                  s.at("rush_id").get<int>()});
    }
    doc.edl.total_cost = j.at("total_cost").get<double>();
    doc.edl.breakdown = BreakdownFromJson(j.at("cost"));
    for (const Json& r : j.at("rushes")) {
      RushInfo info;
      info.id = r.at("id").get<int>();
      info.label = r.at("label").get<std::string>();
      const auto scale = ParseScale(r.at("scale").get<std::string>());
      if (!scale) throw DataError("edl: unknown scale in rush " + std::to_string(info.id));
      info.scale = *scale;
      info.actor_ids = r.at("actors").get<std::vector<int>>();
      doc.rushes.push_back(std::move(info));
    }
    for (const Json& w : j.at("windows")) {
      if (!w.is_array() || w.size() != 4) throw DataError("edl: window must have 4 numbers");
      doc.frame_windows.push_back(
          {w[0].get<double>(), w[1].get<double>(), w[2].get<double>(), w[3].get<double>()});
    }
    doc.stats = StatsFromJson(j.at("stats"));
    doc.config = j.at("config");
  } catch (const Json::exception& e) {
    throw DataError(std::string("edl: ") + e.what());
  }
  for (const Segment& s : doc.edl.segments) {
    if (s.rush_id < 0 || s.rush_id >= static_cast<int>(doc.rushes.size())) {
      throw DataError("edl: segment refers to unknown rush " + std::to_string(s.rush_id));
    }
  }
  return doc;
}

void WriteEdlJson(const fs::path& path, const EdlDocument& doc) {
  WriteTextFile(path, EdlToJson(doc).dump(2) + "\n");
}

EdlDocument ReadEdlJson(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return EdlFromJson(Json::parse(in));
  } catch (const Json::parse_error& e) {
    throw DataError(path.filename().string() + ": " + e.what());
  }
}

void WriteEdlCsv(std::ostream& out, const EditDecisionList& edl,
                 const std::vector<RushInfo>& rushes) {
  out << "start_frame,end_frame,rush_id,subset,scale\n";
  for (const Segment& s : edl.segments) {
    const RushInfo& r = rushes.at(s.rush_id);
    out << s.start << ',' << s.end << ',' << s.rush_id << ',';
    for (size_t i = 0; i < r.actor_ids.size(); ++i) out << (i ? "+" : "") << r.actor_ids[i];
    out << ',' << ScaleName(r.scale) << '\n';
  }
}

EditDecisionList ReadEdlCsv(std::istream& in, const std::string& name) {
  EditDecisionList edl;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Segment s;
    // The subset column may be empty, so parse the integers positionally.
    int consumed = 0;
    if (std::sscanf(line.c_str(), "%d,%d,%d,%n", &s.start, &s.end, &s.rush_id, &consumed) != 3 ||
        consumed == 0) {
      throw DataError(name + ":" + std::to_string(lineno) + ": expected 5 fields");
    }
    const std::string rest = line.substr(consumed);
    const size_t comma = rest.find(',');
    if (comma == std::string::npos || rest.find(',', comma + 1) != std::string::npos) {
      throw DataError(name + ":" + std::to_string(lineno) + ": expected 5 fields");
    }
    if (!edl.segments.empty() && edl.segments.back().end != s.start) {
      throw DataError(name + ":" + std::to_string(lineno) + ": segments must be contiguous");
    }
    if (s.start >= s.end) {
      throw DataError(name + ":" + std::to_string(lineno) + ": empty segment");
    }
    edl.segments.push_back(s);
  }
  if (!edl.segments.empty() && edl.segments.front().start != 0) {
    throw DataError(name + ": first segment must start at frame 0");
  }
  return edl;
}

std::string FormatStatsTable(const EditStats& s) {
  std::ostringstream out;
  char buf[128];
  auto row = [&](const char* key, const std::string& value) {
    std::snprintf(buf, sizeof(buf), "%-22s %s\n", key, value.c_str());
    out << buf;
  };
  auto num = [&](double v) {
    char b[64];
    std::snprintf(b, sizeof(b), "%.3f", v);
    return std::string(b);
  };
  row("frames", std::to_string(s.frame_count));
  row("segments", std::to_string(s.segment_count));
  row("cuts", std::to_string(s.cut_count));
  row("mean shot (s)", num(s.mean_shot_secs));
  row("min shot (s)", num(s.min_shot_secs));
  row("max shot (s)", num(s.max_shot_secs));
  row("jump cuts", std::to_string(s.jump_cut_count));
  row("min length violated", s.min_length_violated ? "yes" : "no");
  for (const auto& [k, v] : s.size_histogram) {
    row(("shots of size " + k).c_str(), std::to_string(v));
  }
  if (s.cost) {
    row("cost unary", num(s.cost->unary));
    row("cost transition", num(s.cost->transition));
    row("cost overlap", num(s.cost->overlap));
    row("cost rhythm", num(s.cost->rhythm));
    row("cost total", num(s.cost->total));
  }
  return out.str();
}

namespace {

int RoundEven(double v) { return 2 * static_cast<int>(std::lround(v / 2.0)); }

}  // namespace

CropRow RoundCrop(const CropWindow& win, Size scene, Size out) {
  const double sx = static_cast<double>(out.width) / scene.width;
  const double sy = static_cast<double>(out.height) / scene.height;
  const double w = win.w * sx;
  const double h = w / out.Aspect();
  const int max_w = out.width - out.width % 2;
  const int max_h = out.height - out.height % 2;
  CropRow r;
  r.w = std::clamp(RoundEven(w), 2, max_w);
  r.h = std::clamp(RoundEven(h), 2, max_h);
  r.x = std::clamp(RoundEven(win.cx * sx - 0.5 * w), 0, (out.width - r.w) & ~1);
  r.y = std::clamp(RoundEven(win.cy * sy - 0.5 * h), 0, (out.height - r.h) & ~1);
  return r;
}

void EmitRenderScript(const EdlDocument& doc, Size out, const fs::path& dir) {
  if (static_cast<int>(doc.frame_windows.size()) != doc.edl.FrameCount()) {
    throw DataError("render-script: EDL carries " + std::to_string(doc.frame_windows.size()) +
                    " windows for " + std::to_string(doc.edl.FrameCount()) + " frames");
  }
  fs::create_directories(dir);
  const Size scene = doc.dims.FrameSize();
  std::ostringstream csv, cmd;
  csv << "frame,x,y,w,h\n";
  CropRow prev{-1, -1, -1, -1};
  CropRow first;
  for (size_t t = 0; t < doc.frame_windows.size(); ++t) {
    const CropRow r = RoundCrop(doc.frame_windows[t], scene, out);
    csv << t << ',' << r.x << ',' << r.y << ',' << r.w << ',' << r.h << '\n';
    if (t == 0) first = r;
    if (r != prev) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%.6f crop w %d, crop h %d, crop x %d, crop y %d;\n",
                    t / doc.dims.fps, r.w, r.h, r.x, r.y);
      cmd << buf;
      prev = r;
    }
  }
  WriteTextFile(dir / "crops.csv", csv.str());
  WriteTextFile(dir / "crops.cmd", cmd.str());

  std::ostringstream tpl;
  tpl << "# Render template for the crop list in crops.csv.\n"
      << "#\n"
      << "# crops.csv holds one row per frame (frame,x,y,w,h) in pixels of a\n"
      << "# " << out.width << "x" << out.height << " source. Widths and heights are even.\n"
      << "# crops.cmd holds the same windows as timed commands for ffmpeg's\n"
      << "# sendcmd filter, emitted only where the window changes.\n"
      << "#\n"
      << "# Replace INPUT and OUTPUT, then run from this directory:\n"
      << "\n"
      << "ffmpeg -i INPUT -filter_complex \"sendcmd=f=crops.cmd,crop=w=" << first.w
      << ":h=" << first.h << ":x=" << first.x << ":y=" << first.y << ",scale=" << out.width
      << ":" << out.height << ",setsar=1\" -c:a copy OUTPUT\n"
      << "\n"
      << "# fps " << doc.dims.fps << ", " << doc.frame_windows.size() << " frames, strategy "
      << doc.strategy << ", engine " << doc.engine_version << "\n";
  WriteTextFile(dir / "render_template.txt", tpl.str());
}

}  // namespace stagecut
