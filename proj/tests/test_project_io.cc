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
#include <cmath>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "stagecut/edl_io.h"
#include "stagecut/errors.h"
#include "stagecut/project_io.h"
#include "support.h"

using namespace stagecut;
namespace fs = std::filesystem;

namespace {

void Write(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path MinimalProject(const fs::path& dir) {
  std::string tracks = "frame,actor_id,x1,y1,x2,y2\n";
  for (int f = 0; f < 48; ++f) tracks += std::to_string(f) + ",1,100,100,300,600\n";
  Write(dir / "tracks.csv", tracks);
  std::string gaze = "time_ms,user_id,x,y\n";
  for (int k = 0; k < 120; ++k) gaze += std::to_string(k * 1000.0 / 60.0) + ",1,200,300\n";
  Write(dir / "gaze.csv", gaze);
  Write(dir / "manifest.json",
        R"({"width": 640, "height": 360, "fps": 24, "tracks": "tracks.csv", "gaze": "gaze.csv"})");
  return dir / "manifest.json";
}

}  // namespace

TEST_CASE("minimal project loads with defaults") {
  support::TempDir dir("min");
  const Project p = LoadProject(MinimalProject(dir.path()));
  CHECK(p.dims.frame_count == 48);
  CHECK(p.tracks.size() == 1);
  CHECK(p.config.cost.m == 7.0);
  CHECK(p.config.cost.fps == 24.0);
  CHECK(p.display == Size{640, 360});
  CHECK(p.gaze_stats.samples_per_frame_per_user == doctest::Approx(2.5).epsilon(0.02));
  CHECK_FALSE(p.speakers);
  const Engine e(p);
  CHECK(e.rushes().RushCount() == 2);
  const EdlDocument doc = e.Run({});
  CHECK(doc.edl.segments.size() == 1);  // shorter than the establishing shot
}

TEST_CASE("parse errors carry file and line") {
  std::string tracks = "frame,actor_id,x1,y1,x2,y2\n";
  for (int f = 0; f < 15; ++f) tracks += std::to_string(f) + ",1,100,100,300,600\n";
  tracks += "15,1,100,100,300\n";
  std::istringstream in(tracks);
  try {
    ReadTracksCsv(in, "tracks.csv");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()) == "tracks.csv:17: expected 6 fields");
  }
  std::istringstream bad("time_ms,user_id,x,y\n0,1,abc,4\n");
  CHECK_THROWS_WITH_AS(ReadGazeCsv(bad, "gaze.csv"), "gaze.csv:2: bad number 'abc' in x",
                       DataError);
}

TEST_CASE("speaker file") {
  std::istringstream in("start_frame,end_frame,ids\n0,10,\n10,20,1+2\n20,30,3\n");
  const auto iv = ReadSpeakersCsv(in, "speakers.csv");
  REQUIRE(iv.size() == 3);
  CHECK(iv[0].speakers.empty());
  CHECK(iv[1].speakers == std::vector<int>{1, 2});
  std::ostringstream out;
  WriteSpeakersCsv(out, iv);
  CHECK(out.str() == "start_frame,end_frame,ids\n0,10,\n10,20,1+2\n20,30,3\n");
  std::istringstream overlap("start_frame,end_frame,ids\n0,10,\n5,20,1\n");
  CHECK_THROWS_AS(ReadSpeakersCsv(overlap, "s.csv"), DataError);
}

TEST_CASE("manifest overrides and fatal validation") {
  support::TempDir dir("ovr");
  const fs::path m = MinimalProject(dir.path());
  Write(m, R"({"width": 640, "height": 360, "fps": 24, "tracks": "tracks.csv",
               "gaze": ["gaze.csv"], "overrides": {"lambda": 2.5}, "labels": {"1": "Ann"}})");
  Project p = LoadProject(m, {"m=9"});
  CHECK(p.config.cost.lambda == 2.5);
  CHECK(p.config.cost.m == 9.0);
  CHECK(p.tracks[0].label == "Ann");
  CHECK_THROWS_AS(LoadProject(m, {"bogus=1"}), ParamError);
  CHECK_THROWS_AS(LoadProject(m, {"alpha=0.9"}), ParamError);

  // an empty cast is fatal
  Write(dir.path() / "tracks.csv", "frame,actor_id,x1,y1,x2,y2\n");
  Write(m, R"({"width": 640, "height": 360, "fps": 24, "frame_count": 10,
               "tracks": "tracks.csv", "gaze": "gaze.csv"})");
  CHECK_THROWS_AS(LoadProject(m), DataError);
  CHECK_THROWS_AS(LoadProject(dir.path() / "missing.json"), DataError);
  Write(m, R"({"width": -1, "height": 360, "fps": 24, "tracks": "tracks.csv"})");
  CHECK_THROWS_AS(LoadProject(m), DataError);
}

TEST_CASE("config echo and round trip") {
  const Json j = ConfigToJson(EngineConfig{});
  CHECK(j.at("m").get<double>() == 7.0);
  CHECK(j.at("l").get<double>() == 1.5);
  CHECK(j.at("lambda").get<double>() == 5.0);
  CHECK(j.at("alpha").get<double>() == 0.2);
  CHECK(j.at("beta").get<double>() == 0.4);
  CHECK(j.at("mu").get<double>() == 1.0);
  CHECK(j.at("nu").get<double>() == 1000.0);
  CHECK(j.at("gamma1").get<double>() == 100.0);
  CHECK(j.at("gamma2").get<double>() == 10.0);
  CHECK(j.at("establish_secs").get<double>() == 4.0);
  CHECK(j.at("age_cap_secs").get<double>() == 14.0);
  CHECK(j.at("g_floor").get<double>() == 1e-6);
  CHECK(j.at("eps_d").get<double>() == 1.0);
  CHECK(j.at("smoothing_window").get<double>() == 0.5);
  CHECK(j.at("empty_frame_policy") == "carry_forward");
  CHECK(j.at("ms_height_frac").get<double>() == 0.55);
  CHECK(j.at("mcu_height_frac").get<double>() == 0.40);
  CHECK(j.at("headroom_frac").get<double>() == 0.10);
  CHECK(j.at("fs_padding_frac").get<double>() == 0.05);
  CHECK(j.at("smooth_w1").get<double>() == 10.0);
  CHECK(j.at("smooth_w2").get<double>() == 400.0);
  CHECK(j.at("max_actors").get<int>() == 8);
  CHECK(j.size() == ConfigKeys().size());
  size_t i = 0;
  for (auto it = j.begin(); it != j.end(); ++it) CHECK(it.key() == ConfigKeys()[i++]);

  EngineConfig c;
  ApplyOverrideText(c, "lambda=0.125");
  ApplyOverrideText(c, "empty_frame_policy=uniform");
  ApplyOverrideText(c, "single_shot_scale=MCU");
  const std::string text = ConfigToJson(c).dump(2);
  CHECK(ConfigToJson(ConfigFromJson(Json::parse(text))).dump(2) == text);
  CHECK_THROWS_AS(ApplyOverrideText(c, "lambda"), ParamError);
  CHECK_THROWS_AS(ApplyOverrideText(c, "lambda=abc"), ParamError);
  // an unresolved cap follows m
  EngineConfig d = ConfigFromJson(ConfigToJson(EngineConfig{}, false));
  ApplyOverrideText(d, "m=20");
  CHECK_NOTHROW(d.Validate());
  CHECK(d.cost.AgeCapSecs() == 40.0);
}

TEST_CASE("edl export round trip") {
  support::TempDir dir("edl");
  const Engine e = support::LoadSynthetic(support::Demo(3, 3, 20.0), dir.path() / "proj");
  const EdlDocument doc = e.Run(support::Request(Strategy::kGazed));
  WriteEdlJson(dir.path() / "edl.json", doc);
  const EdlDocument back = ReadEdlJson(dir.path() / "edl.json");
  CHECK(back.edl.segments == doc.edl.segments);
  CHECK(back.edl.total_cost == doc.edl.total_cost);
  CHECK(back.edl.breakdown.rhythm == doc.edl.breakdown.rhythm);
  CHECK(back.rushes == doc.rushes);
  CHECK(back.frame_windows.size() == doc.frame_windows.size());
  for (size_t t = 0; t < doc.frame_windows.size(); ++t) {
    CHECK(back.frame_windows[t].cx == doc.frame_windows[t].cx);
    CHECK(back.frame_windows[t].h == doc.frame_windows[t].h);
  }
  CHECK(back.stats.cut_count == doc.stats.cut_count);
  CHECK(back.config == doc.config);
  CHECK(back.config.at("m").get<double>() == 7.0);
  CHECK(EdlToJson(back).dump(2) == EdlToJson(doc).dump(2));

  std::ostringstream csv;
  WriteEdlCsv(csv, doc.edl, doc.rushes);
  const std::string text = csv.str();
  CHECK(std::count(text.begin(), text.end(), '\n') ==
        static_cast<long>(doc.edl.segments.size()) + 1);
  std::istringstream in(text);
  CHECK(ReadEdlCsv(in, "edl.csv").segments == doc.edl.segments);
  CHECK(text.rfind("start_frame,end_frame,rush_id,subset,scale\n0,96,", 0) == 0);

  CHECK_THROWS_AS(WriteEdlJson(dir.path() / "no" / "such" / "dir" / "e.json", doc), DataError);
}

TEST_CASE("render script") {
  support::TempDir dir("render");
  EdlDocument doc;
  doc.dims = {1920, 1080, 24.0, 50};
  doc.edl.segments = {{0, 50, 0}};
  doc.rushes = {{0, {}, Scale::kMaster, "master"}};
  doc.frame_windows.assign(50, CropWindow::FullFrame({1920, 1080}));
  EmitRenderScript(doc, {1920, 1080}, dir.path());
  std::istringstream rows(Slurp(dir.path() / "crops.csv"));
  std::string line;
  std::getline(rows, line);
  CHECK(line == "frame,x,y,w,h");
  int n = 0;
  while (std::getline(rows, line)) {
    CHECK(line == std::to_string(n) + ",0,0,1920,1080");
    ++n;
  }
  CHECK(n == 50);
  CHECK(fs::exists(dir.path() / "render_template.txt"));
  CHECK(Slurp(dir.path() / "crops.cmd").find("crop w 1920") != std::string::npos);

  // odd sizes and off-grid windows still give even integers inside the frame
  for (int i = 0; i < 200; ++i) {
    const CropWindow w = CropWindow::FromWidth({100.0 + 8.3 * i, 300.0 + 1.7 * i},
                                               201.3 + 7.9 * i, 16.0 / 9.0);
    const CropWindow c = ClampToFrame(w, {1920, 1080});
    for (Size out : {Size{1920, 1080}, Size{3840, 2160}, Size{1280, 720}}) {
      const CropRow r = RoundCrop(c, {1920, 1080}, out);
      CHECK(r.w % 2 == 0);
      CHECK(r.h % 2 == 0);
      CHECK(r.x % 2 == 0);
      CHECK(r.y % 2 == 0);
      CHECK(r.x + r.w <= out.width);
      CHECK(r.y + r.h <= out.height);
      CHECK(std::fabs(static_cast<double>(r.w) / r.h - 16.0 / 9.0) < 0.05);
    }
  }
}
