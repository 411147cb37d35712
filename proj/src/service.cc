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

#include "stagecut/service.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "stagecut/errors.h"

namespace stagecut {

namespace fs = std::filesystem;

namespace {

ApiResponse JsonResponse(int status, const Json& j) { return {status, "application/json", j.dump()}; }

ApiResponse BadRequest(const std::string& field, const std::string& msg) {
  return JsonResponse(400, Json{{"error", msg}, {"field", field}});
}

int QueryInt(const std::map<std::string, std::string>& q, const std::string& key, int fallback,
             int min_value) {
  auto it = q.find(key);
  if (it == q.end() || it->second.empty()) return fallback;
  int v = 0;
  const std::string& s = it->second;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParamError(key, "expected an integer, got '" + s + "'");
  }
  if (v < min_value) throw ParamError(key, "must be at least " + std::to_string(min_value));
  return v;
}

Json ProjectJson(const Engine& e) {
  const Project& p = e.project();
  Json j;
  j["width"] = p.dims.width;
  j["height"] = p.dims.height;
  j["fps"] = p.dims.fps;
  j["frame_count"] = p.dims.frame_count;
  j["duration_secs"] = p.dims.DurationSecs();
  j["display"] = {{"width", p.display.width}, {"height", p.display.height}};
  Json actors = Json::array();
  const RushSet& rs = e.rushes();
  for (int i = 0; i < rs.ActorCount(); ++i) {
    actors.push_back({{"id", rs.actor_ids[i]}, {"label", rs.actor_labels[i]}});
  }
  j["actors"] = actors;
  Json rushes = Json::array();
  for (const RushInfo& r : e.rush_info()) {
    const Rush& rush = rs.rushes[r.id];
    int avail = 0;
    for (std::uint8_t a : rush.available) avail += a;
    rushes.push_back({{"id", r.id},
                      {"label", r.label},
                      {"scale", std::string(ScaleName(r.scale))},
                      {"actors", r.actor_ids},
                      {"available_frames", avail}});
  }
  j["rushes"] = rushes;
  Json strategies = Json::array();
  for (auto s : {Strategy::kGazed, Strategy::kRandom, Strategy::kWide, Strategy::kGreedy,
                 Strategy::kSpeaker}) {
    if (s == Strategy::kSpeaker && !p.speakers) continue;
    strategies.push_back(std::string(StrategyName(s)));
  }
  j["strategies"] = strategies;
  j["config"] = ConfigToJson(e.ResolveConfig(Json::object()));
  Json warnings = Json::array();
  for (const Issue& i : p.report.issues) warnings.push_back(i.message);
  j["warnings"] = warnings;
  return j;
}

Json PotentialsJson(const Engine& e, int stride) {
  const PotentialTable& tab = e.potentials();
  Json frames = Json::array();
  for (int t = 0; t < tab.frame_count; t += stride) frames.push_back(t);
  Json rushes = Json::array();
  for (const RushInfo& r : e.rush_info()) {
    Json values = Json::array();
    for (int t = 0; t < tab.frame_count; t += stride) values.push_back(tab.At(t, r.id));
    rushes.push_back({{"id", r.id}, {"label", r.label}, {"values", values}});
  }
  return Json{{"stride", stride}, {"frames", frames}, {"rushes", rushes}};
}

Json WindowsJson(const Rush& r, int stride) {
  Json wins = Json::array();
  Json avail = Json::array();
  for (int t = 0; t < r.FrameCount(); t += stride) {
    const CropWindow& w = r.windows[t];
    wins.push_back({w.cx, w.cy, w.w, w.h});
    avail.push_back(r.available[t] != 0);
  }
  return Json{{"id", r.id}, {"label", r.label}, {"windows", wins}, {"available", avail}};
}

ApiResponse HandleEdit(const Engine& e, const std::string& body) {
  Json req;
  try {
    req = body.empty() ? Json::object() : Json::parse(body);
  } catch (const Json::parse_error& err) {
    return BadRequest("body", std::string("invalid JSON: ") + err.what());
  }
  if (!req.is_object()) return BadRequest("body", "expected a JSON object");
  EditRequest er;
  Json overrides = Json::object();
  for (auto it = req.begin(); it != req.end(); ++it) {
    const std::string& k = it.key();
    if (k == "strategy") {
      if (!it->is_string()) return BadRequest("strategy", "expected a string");
      const auto s = ParseStrategy(it->get<std::string>());
      if (!s) return BadRequest("strategy", "unknown strategy '" + it->get<std::string>() + "'");
      er.strategy = *s;
    } else if (k == "seed") {
      if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
        return BadRequest("seed", "expected a non-negative integer");
      }
      er.seed = it->get<std::uint64_t>();
    } else if (k == "params") {
      if (!it->is_object()) return BadRequest("params", "expected an object");
      for (auto p = it->begin(); p != it->end(); ++p) overrides[p.key()] = p.value();
    } else {
      overrides[k] = it.value();
    }
  }
  er.overrides = overrides;
  const EdlDocument doc = e.Run(er);
  return JsonResponse(200, EdlToJson(doc));
}

std::optional<fs::path> FindFrame(const fs::path& dir, int idx) {
  char names[4][32];
  std::snprintf(names[0], sizeof(names[0]), "%06d", idx);
  std::snprintf(names[1], sizeof(names[1]), "frame_%06d", idx);
  std::snprintf(names[2], sizeof(names[2]), "%d", idx);
  std::snprintf(names[3], sizeof(names[3]), "frame_%d", idx);
  for (const char* stem : names) {
    for (const char* ext : {".jpg", ".jpeg", ".png"}) {
      fs::path p = dir / (std::string(stem) + ext);
      if (fs::is_regular_file(p)) return p;
    }
  }
  return std::nullopt;
}

ApiResponse HandleFrame(const Engine& e, const std::string& tail,
                        const std::optional<fs::path>& frames_dir) {
  int idx = 0;
  const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), idx);
  if (ec != std::errc() || ptr != tail.data() + tail.size() || idx < 0 ||
      idx >= e.project().dims.frame_count) {
    return BadRequest("frame", "frame index out of range");
  }
  if (!frames_dir) return JsonResponse(404, Json{{"error", "no frame directory configured"}});
  const auto file = FindFrame(*frames_dir, idx);
  if (!file) return JsonResponse(404, Json{{"error", "frame image not found"}});
  std::ifstream in(*file, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string ext = file->extension().string();
  return {200, ext == ".png" ? "image/png" : "image/jpeg", buf.str()};
}

}  // namespace

ApiResponse HandleApi(const Engine& engine, const std::string& method, const std::string& path,
                      const std::map<std::string, std::string>& query, const std::string& body,
                      const std::optional<fs::path>& frames_dir) {
  try {
    if (method == "GET" && path == "/api/project") {
      return JsonResponse(200, ProjectJson(engine));
    }
    if (method == "GET" && path == "/api/potentials") {
      return JsonResponse(200, PotentialsJson(engine, QueryInt(query, "stride", 1, 1)));
    }
    if (method == "GET" && path == "/api/windows") {
      const int stride = QueryInt(query, "stride", 1, 1);
      const RushSet& rs = engine.rushes();
      const int rush = QueryInt(query, "rush", -1, 0);
      if (rush >= rs.RushCount()) return BadRequest("rush", "no rush " + std::to_string(rush));
      Json out{{"stride", stride}};
      Json list = Json::array();
      for (const Rush& r : rs.rushes) {
        if (rush < 0 || r.id == rush) list.push_back(WindowsJson(r, stride));
      }
      out["rushes"] = list;
      return JsonResponse(200, out);
    }
    if (method == "POST" && path == "/api/edit") return HandleEdit(engine, body);
    const std::string frame_prefix = "/api/frame/";
    if (method == "GET" && path.rfind(frame_prefix, 0) == 0) {
      return HandleFrame(engine, path.substr(frame_prefix.size()), frames_dir);
    }
    return JsonResponse(404, Json{{"error", "no such endpoint"}, {"path", path}});
  } catch (const ParamError&) {
    return ErrorResponse(std::current_exception());
  } catch (const DataError&) {
    return ErrorResponse(std::current_exception());
  }
}

ApiResponse ErrorResponse(std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const ParamError& e) {
    return BadRequest(e.field(), e.what());
  } catch (const InfeasibleError& e) {
    return JsonResponse(422, Json{{"error", e.what()}, {"frame", e.frame()}});
  } catch (const DataError& e) {
    return JsonResponse(422, Json{{"error", e.what()}});
  }
}

struct Service::Impl {
  Impl(const Engine& e, ServeOptions o) : engine(e), options(std::move(o)) {}
  const Engine& engine;
  ServeOptions options;
  httplib::Server server;
  int port = -1;
};

Service::Service(const Engine& engine, ServeOptions options)
    : impl_(std::make_unique<Impl>(engine, std::move(options))) {
  Impl* impl = impl_.get();
  auto handle = [impl](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const ApiResponse r =
        HandleApi(impl->engine, req.method, req.path, query, req.body, impl->options.frames_dir);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  impl->server.Get(R"(/api/.*)", handle);
  impl->server.Post(R"(/api/.*)", handle);
  bool mounted = false;
  if (impl->options.assets_dir && fs::is_directory(*impl->options.assets_dir)) {
    mounted = impl->server.set_mount_point("/", impl->options.assets_dir->string());
  }
  if (!mounted) {
    impl->server.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(
          "stagecut edit service\n\nGET  /api/project\nGET  /api/potentials?stride=N\n"
          "GET  /api/windows?rush=R&stride=N\nPOST /api/edit\nGET  /api/frame/<idx>\n",
          "text/plain");
    });
  }
}

Service::~Service() { Stop(); }

int Service::Bind() {
  Impl& impl = *impl_;
  if (impl.options.port == 0) {
    impl.port = impl.server.bind_to_any_port(impl.options.host);
  } else if (impl.server.bind_to_port(impl.options.host, impl.options.port)) {
    impl.port = impl.options.port;
  }
  if (impl.port <= 0) {
    throw DataError("cannot bind " + impl.options.host + ":" +
                    std::to_string(impl.options.port));
  }
  return impl.port;
}

void Service::Listen() {
  if (impl_->port <= 0) Bind();
  impl_->server.listen_after_bind();
}

void Service::Stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace stagecut
