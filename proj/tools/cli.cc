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

#include "stagecut/cli.h"

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stagecut/engine.h"
#include "stagecut/errors.h"
#include "stagecut/service.h"

namespace stagecut {

namespace fs = std::filesystem;

namespace {

struct Args {
  std::string manifest;
  std::vector<std::string> sets;
  std::string whitelist;
  std::string out;
  std::string strategy = "gazed";
  std::uint64_t seed = 1;
  std::vector<std::string> edls;
  int actors = 3;
  double secs = 60.0;
  double fps = 24.0;
  int users = 5;
  int width = 0;
  int height = 0;
  std::string bind = "127.0.0.1:8080";
  std::string assets;
  std::string frames;
  bool serial = false;
};

Engine LoadEngine(const Args& a) {
  return Engine::Load(a.manifest, a.sets, a.whitelist, a.serial ? Exec::kSerial : Exec::kParallel);
}

void Emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    WriteTextFile(path, text);
  }
}

int CmdRushes(const Args& a, std::ostream& out) {
  const Engine e = LoadEngine(a);
  std::ostringstream s;
  DumpRushesCsv(s, e.rushes());
  Emit(s.str(), a.out, out);
  return kExitOk;
}

int CmdPotentials(const Args& a, std::ostream& out) {
  const Engine e = LoadEngine(a);
  std::ostringstream s;
  DumpPotentialsCsv(s, e.potentials(), e.rushes());
  Emit(s.str(), a.out, out);
  return kExitOk;
}

int CmdEdit(const Args& a, std::ostream& out) {
  const auto strategy = ParseStrategy(a.strategy);
  if (!strategy) throw ParamError("strategy", "unknown strategy '" + a.strategy + "'");
  const Engine e = LoadEngine(a);
  EditRequest req;
  req.strategy = *strategy;
  req.seed = a.seed;
  const EdlDocument doc = e.Run(req);
  const fs::path dir = a.out;
  fs::create_directories(dir);
  WriteEdlJson(dir / "edl.json", doc);
  std::ostringstream csv;
  WriteEdlCsv(csv, doc.edl, doc.rushes);
  WriteTextFile(dir / "edl.csv", csv.str());
  Json stats = StatsToJson(doc.stats);
  stats["strategy"] = doc.strategy;
  stats["config"] = doc.config;
  WriteTextFile(dir / "stats.json", stats.dump(2) + "\n");
  out << FormatStatsTable(doc.stats);
  return kExitOk;
}

int CmdAnalyze(const Args& a, std::ostream& out) {
  std::vector<EdlDocument> docs;
  for (const std::string& p : a.edls) docs.push_back(ReadEdlJson(p));
  for (size_t i = 0; i < docs.size(); ++i) {
    const EdlDocument& d = docs[i];
    EngineConfig cfg = ConfigFromJson(d.config);
    cfg.cost.fps = d.dims.fps;
    EditStats st = CutStats(d.edl, d.frame_windows, d.rushes, cfg.cost);
    st.cost = d.edl.breakdown;
    if (docs.size() > 1) out << "== " << a.edls[i] << " (" << d.strategy << ")\n";
    out << FormatStatsTable(st);
  }
  if (docs.size() == 2) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", Compare(docs[0].edl, docs[1].edl));
    out << "agreement " << buf << "\n";
  }
  return kExitOk;
}

int CmdRenderScript(const Args& a, std::ostream& out) {
  const EdlDocument doc = ReadEdlJson(a.edls.at(0));
  Size size = doc.dims.FrameSize();
  if (a.width > 0) size.width = a.width;
  if (a.height > 0) size.height = a.height;
  EmitRenderScript(doc, size, a.out);
  out << "wrote " << (fs::path(a.out) / "crops.csv").string() << " ("
      << doc.frame_windows.size() << " frames)\n";
  return kExitOk;
}

int CmdDemo(const Args& a, std::ostream& out) {
  SyntheticOptions o;
  o.seed = a.seed;
  o.actors = a.actors;
  o.secs = a.secs;
  o.fps = a.fps;
  o.users = a.users;
  if (o.actors < 1) throw ParamError("actors", "must be at least 1");
  if (!(o.secs > 0.0)) throw ParamError("secs", "must be positive");
  if (!(o.fps > 0.0)) throw ParamError("fps", "must be positive");
  if (o.users < 1) throw ParamError("users", "must be at least 1");
  const fs::path manifest = WriteProject(GenerateSyntheticProject(o), a.out);
  out << manifest.string() << "\n";
  return kExitOk;
}

Service* g_service = nullptr;

extern "C" void StopOnSignal(int) {
  if (g_service) g_service->Stop();
}

int CmdServe(const Args& a, std::ostream& out) {
  const Engine e = LoadEngine(a);
  ServeOptions opts;
  const size_t colon = a.bind.rfind(':');
  if (colon == std::string::npos) throw ParamError("bind", "expected host:port");
  opts.host = a.bind.substr(0, colon);
  try {
    opts.port = std::stoi(a.bind.substr(colon + 1));
  } catch (const std::exception&) {
    throw ParamError("bind", "bad port in '" + a.bind + "'");
  }
  if (!a.assets.empty()) opts.assets_dir = a.assets;
  if (!a.frames.empty()) opts.frames_dir = a.frames;
  Service svc(e, opts);
  const int port = svc.Bind();
  out << "listening on http://" << opts.host << ":" << port << "/" << std::endl;
  g_service = &svc;
  std::signal(SIGINT, StopOnSignal);
  std::signal(SIGTERM, StopOnSignal);
  svc.Listen();
  g_service = nullptr;
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Gaze-driven automatic editing of static stage recordings", "gazed"};
  app.require_subcommand(1);
  app.set_version_flag("--version", EngineVersion());

  auto add_project = [&](CLI::App* sub) {
    sub->add_option("manifest", a.manifest, "Project manifest (JSON)")->required();
    sub->add_option("--set", a.sets, "Override a parameter, key=value (repeatable)");
    sub->add_option("--subset-whitelist", a.whitelist,
                    "Keep only these actor subsets, e.g. \"1+2,size:1\"");
    sub->add_flag("--serial", a.serial, "Use the serial kernels");
  };

  CLI::App* rushes = app.add_subcommand("rushes", "Generate and dump rush trajectories (CSV)");
  add_project(rushes);
  rushes->add_option("-o,--output", a.out, "Output file, default stdout");

  CLI::App* pots = app.add_subcommand("potentials", "Dump the gaze potential table (CSV)");
  add_project(pots);
  pots->add_option("-o,--output", a.out, "Output file, default stdout");

  CLI::App* edit = app.add_subcommand("edit", "Compute an edit; writes edl.json, edl.csv, stats.json");
  add_project(edit);
  edit->add_option("--strategy", a.strategy, "gazed, random, wide, greedy or speaker")
      ->capture_default_str();
  edit->add_option("--seed", a.seed, "Seed for the random strategy")->capture_default_str();
  edit->add_option("-o,--output", a.out, "Output directory")->required();

  CLI::App* analyze = app.add_subcommand("analyze", "Statistics for one EDL, agreement for two");
  analyze->add_option("edl", a.edls, "edl.json files")->required()->expected(1, 2);

  CLI::App* render = app.add_subcommand("render-script", "Emit a per-frame crop list");
  render->add_option("edl", a.edls, "edl.json file")->required()->expected(1);
  render->add_option("-o,--output", a.out, "Output directory")->required();
  render->add_option("--width", a.width, "Source video width, default the scene width");
  render->add_option("--height", a.height, "Source video height, default the scene height");

  CLI::App* demo = app.add_subcommand("demo", "Write a synthetic project");
  demo->add_option("--seed", a.seed, "Generator seed")->capture_default_str();
  demo->add_option("--actors", a.actors, "Number of performers")->capture_default_str();
  demo->add_option("--secs", a.secs, "Duration in seconds")->capture_default_str();
  demo->add_option("--fps", a.fps, "Frame rate")->capture_default_str();
  demo->add_option("--users", a.users, "Number of virtual viewers")->capture_default_str();
  demo->add_option("-o,--output", a.out, "Output directory")->required();

  CLI::App* serve = app.add_subcommand("serve", "Serve the editing API over HTTP");
  add_project(serve);
  serve->add_option("--bind", a.bind, "host:port")->capture_default_str();
  serve->add_option("--assets", a.assets, "Directory with the UI bundle");
  serve->add_option("--frames", a.frames, "Directory with extracted frame images");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (rushes->parsed()) return CmdRushes(a, out);
    if (pots->parsed()) return CmdPotentials(a, out);
    if (edit->parsed()) return CmdEdit(a, out);
    if (analyze->parsed()) return CmdAnalyze(a, out);
    if (render->parsed()) return CmdRenderScript(a, out);
    if (demo->parsed()) return CmdDemo(a, out);
    if (serve->parsed()) return CmdServe(a, out);
  } catch (const ParamError& e) {
    err << "gazed: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "gazed: " << e.what() << "\n";
    return kExitData;
  } catch (const GeometryError& e) {
    err << "gazed: " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "gazed: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace stagecut
