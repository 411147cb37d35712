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

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "stagecut/cli.h"
#include "stagecut/edl_io.h"
#include "support.h"

using namespace stagecut;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Run(std::vector<std::string> args) {
  args.insert(args.begin(), "gazed");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("demo then edit") {
  support::TempDir dir("cli");
  const std::string proj = (dir.path() / "proj").string();
  const std::string manifest = (dir.path() / "proj" / "manifest.json").string();
  REQUIRE(Run({"demo", "--seed", "1", "--actors", "3", "--secs", "60", "-o", proj}).code == 0);

  const std::string out1 = (dir.path() / "e1").string();
  Result r = Run({"edit", manifest, "--strategy=gazed", "-o", out1});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("cuts") != std::string::npos);
  const EdlDocument doc = ReadEdlJson(fs::path(out1) / "edl.json");
  REQUIRE(!doc.edl.segments.empty());
  CHECK(doc.edl.segments[0].Length() == 96);
  CHECK(doc.rushes[doc.edl.segments[0].rush_id].scale == Scale::kMaster);
  CHECK(Slurp(fs::path(out1) / "edl.csv").rfind("start_frame,end_frame,rush_id,subset,scale\n0,96,7,,MASTER\n", 0) == 0);

  const std::string out2 = (dir.path() / "e2").string();
  REQUIRE(Run({"edit", manifest, "--strategy", "gazed", "--set", "m=14", "-o", out2}).code == 0);
  CHECK(ReadEdlJson(fs::path(out2) / "edl.json").stats.cut_count <= doc.stats.cut_count);

  // byte-identical reruns
  const std::string out3 = (dir.path() / "e3").string();
  REQUIRE(Run({"edit", manifest, "--strategy=gazed", "-o", out3}).code == 0);
  for (const char* f : {"edl.json", "edl.csv", "stats.json"}) {
    CHECK(Slurp(fs::path(out1) / f) == Slurp(fs::path(out3) / f));
  }

  const std::string edl = (fs::path(out1) / "edl.json").string();
  r = Run({"analyze", edl, edl});
  CHECK(r.code == 0);
  CHECK(r.out.find("agreement 1.000000") != std::string::npos);
  r = Run({"analyze", edl});
  CHECK(r.code == 0);

  const std::string rdir = (dir.path() / "render").string();
  CHECK(Run({"render-script", edl, "-o", rdir}).code == 0);
  const std::string crops = Slurp(fs::path(rdir) / "crops.csv");
  CHECK(std::count(crops.begin(), crops.end(), '\n') == 1441);

  r = Run({"rushes", manifest, "--subset-whitelist", "size:1"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 1440 * 4);
  r = Run({"potentials", manifest});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("frame,A,B,C,AB,AC,BC,ABC,master\n", 0) == 0);

  for (const char* s : {"random", "wide", "greedy", "speaker"}) {
    CHECK(Run({"edit", manifest, "--strategy", s, "-o", (dir.path() / s).string()}).code == 0);
  }
}

TEST_CASE("exit codes") {
  CHECK(Run({}).code == 1);
  CHECK(Run({"frobnicate"}).code == 1);
  CHECK(Run({"demo", "--nonsense", "-o", "x"}).code == 1);
  Result r = Run({"edit", "/nonexistent/manifest.json", "-o", "/tmp/x"});
  CHECK(r.code == 2);
  CHECK(r.err.find("cannot open") != std::string::npos);
  support::TempDir dir("cli-codes");
  const std::string proj = (dir.path() / "p").string();
  REQUIRE(Run({"demo", "--secs", "10", "-o", proj}).code == 0);
  const std::string manifest = proj + "/manifest.json";
  CHECK(Run({"edit", manifest, "--strategy", "zoom", "-o", proj + "/o"}).code == 1);
  CHECK(Run({"edit", manifest, "--set", "alpha=0.9", "-o", proj + "/o"}).code == 1);
  CHECK(Run({"rushes", manifest, "--subset-whitelist", "1+7"}).code == 1);
  CHECK(Run({"--help"}).code == 0);
  CHECK(Run({"analyze", (dir.path() / "missing.json").string()}).code == 2);
}
