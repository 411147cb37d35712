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

#ifndef STAGECUT_SERVICE_H_
#define STAGECUT_SERVICE_H_

#include <exception>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "stagecut/engine.h"

namespace stagecut {

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Transport-free request handling for the /api routes. `path` excludes the
// query string.
ApiResponse HandleApi(const Engine& engine, const std::string& method, const std::string& path,
                      const std::map<std::string, std::string>& query, const std::string& body,
                      const std::optional<std::filesystem::path>& frames_dir = std::nullopt);

// Maps an engine exception to a response: ParamError 400 with the field,
// InfeasibleError 422 with the frame, other DataError 422. Rethrows
// anything else.
ApiResponse ErrorResponse(std::exception_ptr error);

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::optional<std::filesystem::path> assets_dir;
  std::optional<std::filesystem::path> frames_dir;
};

// HTTP front end over one engine. The engine must outlive the service.
class Service {
 public:
  Service(const Engine& engine, ServeOptions options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Returns the bound port, or throws DataError.
  int Bind();
  // Blocks until Stop.
  void Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace stagecut

#endif  // STAGECUT_SERVICE_H_
