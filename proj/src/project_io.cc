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

#include "stagecut/project_io.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "stagecut/errors.h"

namespace stagecut {

namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (true) {
    const size_t comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                  : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Line-oriented reader for the comma-separated inputs. Line numbers are
// 1-based and count the header.
class CsvReader {
 public:
  CsvReader(std::istream& in, std::string name, size_t fields)
      : in_(in), name_(std::move(name)), fields_(fields) {}

  bool Next() {
    while (std::getline(in_, line_)) {
      ++lineno_;
      if (lineno_ == 1) {
        if (line_.size() >= 3 && line_.compare(0, 3, "\xEF\xBB\xBF") == 0) line_.erase(0, 3);
        continue;  // header
      }
      if (Trim(line_).empty()) continue;
      cols_ = SplitFields(line_);
      if (cols_.size() != fields_) {
        Fail("expected " + std::to_string(fields_) + " fields");
      }
      for (auto& c : cols_) c = Trim(c);
      return true;
    }
    return false;
  }

  double Number(size_t i, const char* what) const {
    double v = 0.0;
    const std::string_view s = cols_[i];
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      Fail(std::string("bad number '") + std::string(s) + "' in " + what);
    }
    return v;
  }

  int Integer(size_t i, const char* what) const {
    int v = 0;
    const std::string_view s = cols_[i];
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      Fail(std::string("bad integer '") + std::string(s) + "' in " + what);
    }
    return v;
  }

  std::string_view Field(size_t i) const { return cols_[i]; }
  int Line() const { return lineno_; }
  std::string Where() const { return name_ + ":" + std::to_string(lineno_); }
  [[noreturn]] void Fail(const std::string& msg) const { throw DataError(Where() + ": " + msg); }

 private:
  std::istream& in_;
  std::string name_;
  size_t fields_;
  std::string line_;
  std::vector<std::string_view> cols_;
  int lineno_ = 0;
};

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::ifstream OpenInput(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw DataError("cannot open " + p.string());
  return in;
}

Json ReadJsonFile(const fs::path& p) {
  std::ifstream in = OpenInput(p);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DataError(p.filename().string() + ": " + e.what());
  }
}

}  // namespace

void WriteTextFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("failed writing " + path.string());
}

std::vector<ActorTrack> ReadTracksCsv(std::istream& in, const std::string& name,
                                      ValidationReport* report) {
  CsvReader csv(in, name, 6);
  std::map<int, ActorTrack> by_id;
  while (csv.Next()) {
    const int frame = csv.Integer(0, "frame");
    const int id = csv.Integer(1, "actor_id");
    const BBox b{csv.Number(2, "x1"), csv.Number(3, "y1"), csv.Number(4, "x2"),
                 csv.Number(5, "y2")};
    if (frame < 0) csv.Fail("negative frame");
    if (!b.IsValid()) {
      if (report) report->Warn(csv.Where() + ": degenerate box dropped");
      continue;
    }
    ActorTrack& tr = by_id[id];
    tr.actor_id = id;
    if (static_cast<int>(tr.boxes.size()) <= frame) tr.boxes.resize(frame + 1);
    if (tr.boxes[frame] && report) {
      report->Warn(csv.Where() + ": duplicate box for actor " + std::to_string(id) +
                   ", keeping the later one");
    }
    tr.boxes[frame] = b;
  }
  std::vector<ActorTrack> out;
  for (auto& [id, tr] : by_id) out.push_back(std::move(tr));
  return out;
}

std::vector<RawGazeSample> ReadGazeCsv(std::istream& in, const std::string& name) {
  CsvReader csv(in, name, 4);
  std::vector<RawGazeSample> out;
  while (csv.Next()) {
    out.push_back({csv.Number(0, "time_ms"), csv.Integer(1, "user_id"),
                   {csv.Number(2, "x"), csv.Number(3, "y")}});
  }
  return out;
}

std::vector<SpeakerInterval> ReadSpeakersCsv(std::istream& in, const std::string& name) {
  CsvReader csv(in, name, 3);
  std::vector<SpeakerInterval> out;
  while (csv.Next()) {
    SpeakerInterval iv;
    iv.start_frame = csv.Integer(0, "start_frame");
    iv.end_frame = csv.Integer(1, "end_frame");
    if (iv.start_frame >= iv.end_frame) csv.Fail("start_frame must be below end_frame");
    if (!out.empty() && iv.start_frame < out.back().end_frame) {
      csv.Fail("intervals must be sorted and non-overlapping");
    }
    std::string_view ids = csv.Field(2);
    size_t pos = 0;
    while (!ids.empty() && pos <= ids.size()) {
      size_t plus = ids.find('+', pos);
      if (plus == std::string_view::npos) plus = ids.size();
      const std::string_view tok = Trim(ids.substr(pos, plus - pos));
      int v = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
        csv.Fail("bad speaker id '" + std::string(tok) + "'");
      }
      iv.speakers.push_back(v);
      pos = plus + 1;
    }
    std::sort(iv.speakers.begin(), iv.speakers.end());
    out.push_back(std::move(iv));
  }
  return out;
}

void WriteTracksCsv(std::ostream& out, const std::vector<ActorTrack>& tracks) {
  out << "frame,actor_id,x1,y1,x2,y2\n";
  size_t frames = 0;
  for (const auto& t : tracks) frames = std::max(frames, t.boxes.size());
  for (size_t f = 0; f < frames; ++f) {
    for (const ActorTrack& t : tracks) {
      if (f >= t.boxes.size() || !t.boxes[f]) continue;
      const BBox& b = *t.boxes[f];
      out << f << ',' << t.actor_id << ',' << Fixed(b.x1, 2) << ',' << Fixed(b.y1, 2) << ','
          << Fixed(b.x2, 2) << ',' << Fixed(b.y2, 2) << '\n';
    }
  }
}

void WriteGazeCsv(std::ostream& out, const std::vector<RawGazeSample>& gaze) {
  out << "time_ms,user_id,x,y\n";
  for (const RawGazeSample& s : gaze) {
    out << Fixed(s.time_ms, 3) << ',' << s.user_id << ',' << Fixed(s.p.x, 2) << ','
        << Fixed(s.p.y, 2) << '\n';
  }
}

void WriteSpeakersCsv(std::ostream& out, const std::vector<SpeakerInterval>& speakers) {
  out << "start_frame,end_frame,ids\n";
  for (const SpeakerInterval& iv : speakers) {
    out << iv.start_frame << ',' << iv.end_frame << ',';
    for (size_t i = 0; i < iv.speakers.size(); ++i) out << (i ? "+" : "") << iv.speakers[i];
    out << '\n';
  }
}

ProjectManifest ReadManifest(const fs::path& path) {
  const Json j = ReadJsonFile(path);
  const std::string name = path.filename().string();
  ProjectManifest m;
  m.base_dir = path.parent_path();
  try {
    m.width = j.at("width").get<int>();
    m.height = j.at("height").get<int>();
    m.fps = j.at("fps").get<double>();
    m.frame_count = j.value("frame_count", 0);
    m.display = {j.value("display_width", m.width), j.value("display_height", m.height)};
    m.tracks = j.at("tracks").get<std::string>();
    if (j.contains("gaze")) {
      const Json& g = j.at("gaze");
      if (g.is_string()) {
        m.gaze.emplace_back(g.get<std::string>());
      } else {
        for (const auto& e : g) m.gaze.emplace_back(e.get<std::string>());
      }
    }
    if (j.contains("speakers") && !j.at("speakers").is_null()) {
      m.speakers = j.at("speakers").get<std::string>();
    }
    if (j.contains("config") && !j.at("config").is_null()) {
      m.config = j.at("config").get<std::string>();
    }
    if (j.contains("labels")) {
      for (auto it = j.at("labels").begin(); it != j.at("labels").end(); ++it) {
        m.labels[std::stoi(it.key())] = it.value().get<std::string>();
      }
    }
    if (j.contains("overrides")) m.overrides = j.at("overrides");
  } catch (const Json::exception& e) {
    throw DataError(name + ": " + e.what());
  } catch (const std::invalid_argument&) {
    throw DataError(name + ": label keys must be actor ids");
  }
  if (m.width <= 0 || m.height <= 0 || !(m.fps > 0.0)) {
    throw DataError(name + ": width, height and fps must be positive");
  }
  if (m.display.width <= 0 || m.display.height <= 0) {
    throw DataError(name + ": display dims must be positive");
  }
  return m;
}

Project LoadProject(const fs::path& manifest_path, const std::vector<std::string>& overrides) {
  Project p;
  p.manifest = ReadManifest(manifest_path);
  const ProjectManifest& m = p.manifest;

  EngineConfig cfg;
  if (m.config) cfg = ConfigFromJson(ReadJsonFile(m.Resolve(*m.config)), cfg);
  cfg = ConfigFromJson(m.overrides, cfg);
  for (const std::string& o : overrides) ApplyOverrideText(cfg, o);
  cfg.cost.fps = m.fps;
  cfg.Validate();
  p.config = cfg;

  {
    std::ifstream in = OpenInput(m.Resolve(m.tracks));
    p.tracks = ReadTracksCsv(in, m.tracks.filename().string(), &p.report);
  }
  int frames = m.frame_count;
  if (frames <= 0) {
    for (const ActorTrack& t : p.tracks) frames = std::max<int>(frames, t.boxes.size());
  }
  p.dims = {m.width, m.height, m.fps, frames};
  if (frames <= 0) throw DataError("project: cannot determine the frame count");
  for (ActorTrack& t : p.tracks) {
    if (static_cast<int>(t.boxes.size()) > frames) {
      p.report.Warn("actor " + std::to_string(t.actor_id) + " has boxes past the last frame");
      t.boxes.resize(frames);
    }
    auto it = m.labels.find(t.actor_id);
    if (it != m.labels.end()) t.label = it->second;
  }
  p.display = m.display;

  std::vector<RawGazeSample> raw;
  for (const fs::path& g : m.gaze) {
    std::ifstream in = OpenInput(m.Resolve(g));
    auto part = ReadGazeCsv(in, g.filename().string());
    raw.insert(raw.end(), part.begin(), part.end());
  }
  p.gaze = AssignGaze(raw, p.display, p.dims, &p.gaze_stats);
  if (p.gaze_stats.clamped > 0) {
    p.report.Warn(std::to_string(p.gaze_stats.clamped) + " gaze samples clamped to the frame");
  }
  if (p.gaze_stats.dropped > 0) {
    p.report.Warn(std::to_string(p.gaze_stats.dropped) + " gaze samples outside the video");
  }

  if (m.speakers) {
    std::ifstream in = OpenInput(m.Resolve(*m.speakers));
    p.speakers = ReadSpeakersCsv(in, m.speakers->filename().string());
  }

  ValidationReport v = ValidateScene(p.tracks, p.gaze, p.dims);
  p.report.issues.insert(p.report.issues.end(), v.issues.begin(), v.issues.end());
  if (p.report.HasFatal()) throw DataError("project: " + p.report.FatalSummary());
  for (ActorTrack& t : p.tracks) FillTrackGaps(t, p.dims, cfg.gap_fill_secs, &p.report);
  return p;
}

fs::path WriteProject(const SyntheticProject& proj, const fs::path& dir,
                      const EngineConfig& config) {
  fs::create_directories(dir);
  std::ostringstream tracks, gaze, speakers;
  WriteTracksCsv(tracks, proj.tracks);
  WriteGazeCsv(gaze, proj.gaze);
  WriteSpeakersCsv(speakers, proj.speakers);
  WriteTextFile(dir / "tracks.csv", tracks.str());
  WriteTextFile(dir / "gaze.csv", gaze.str());
  WriteTextFile(dir / "speakers.csv", speakers.str());
  WriteTextFile(dir / "config.json", ConfigToJson(config, false).dump(2) + "\n");
  Json m;
  m["width"] = proj.dims.width;
  m["height"] = proj.dims.height;
  m["fps"] = proj.dims.fps;
  m["frame_count"] = proj.dims.frame_count;
  m["display_width"] = proj.display.width;
  m["display_height"] = proj.display.height;
  m["tracks"] = "tracks.csv";
  m["gaze"] = Json::array({"gaze.csv"});
  m["speakers"] = "speakers.csv";
  m["config"] = "config.json";
  Json labels = Json::object();
  for (const ActorTrack& t : proj.tracks) labels[std::to_string(t.actor_id)] = t.label;
  m["labels"] = labels;
  const fs::path manifest = dir / "manifest.json";
  WriteTextFile(manifest, m.dump(2) + "\n");
  return manifest;
}

void DumpRushesCsv(std::ostream& out, const RushSet& rs) {
  out << "frame,rush_id,label,scale,cx,cy,w,h,available\n";
  for (int t = 0; t < rs.frame_count; ++t) {
    for (const Rush& r : rs.rushes) {
      const CropWindow& w = r.windows[t];
      out << t << ',' << r.id << ',' << r.label << ',' << ScaleName(r.scale) << ','
          << Shortest(w.cx) << ',' << Shortest(w.cy) << ',' << Shortest(w.w) << ','
          << Shortest(w.h) << ',' << int{r.available[t]} << '\n';
    }
  }
}

void DumpPotentialsCsv(std::ostream& out, const PotentialTable& table, const RushSet& rs) {
  out << "frame";
  for (const Rush& r : rs.rushes) out << ',' << r.label;
  out << '\n';
  for (int t = 0; t < table.frame_count; ++t) {
    out << t;
    for (int r = 0; r < table.rush_count; ++r) out << ',' << Shortest(table.At(t, r));
    out << '\n';
  }
}

}  // namespace stagecut
