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

#ifndef STAGECUT_ERRORS_H_
#define STAGECUT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace stagecut {

// Malformed or inconsistent input data (files, tracks, gaze, EDLs).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Degenerate rectangles and similar geometric misuse.
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a parameter set violates its invariants.
class ParamError : public std::invalid_argument {
 public:
  ParamError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// No rush is selectable at some frame.
class InfeasibleError : public DataError {
 public:
  explicit InfeasibleError(int frame)
      : DataError("no feasible shot at frame " + std::to_string(frame)),
        frame_(frame) {}
  int frame() const { return frame_; }

 private:
  int frame_;
};

}  // namespace stagecut

#endif  // STAGECUT_ERRORS_H_
