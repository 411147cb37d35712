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

#include "stagecut/config.h"

#include <algorithm>
#include <charconv>

#include "stagecut/errors.h"

namespace stagecut {

namespace {

const char* PolicyName(EmptyFramePolicy p) {
  return p == EmptyFramePolicy::kUniform ? "uniform" : "carry_forward";
}

double AsNumber(std::string_view key, const Json& v) {
  if (!v.is_number()) throw ParamError(std::string(key), "expected a number");
  return v.get<double>();
}

std::string AsString(std::string_view key, const Json& v) {
  if (!v.is_string()) throw ParamError(std::string(key), "expected a string");
  return v.get<std::string>();
}

}  // namespace

const std::vector<std::string>& ConfigKeys() {
  static const std::vector<std::string> keys = {
      "lambda", "alpha", "beta", "mu", "nu", "gamma1", "gamma2", "l", "m",
      "establish_secs", "age_cap_secs", "g_floor", "eps_d", "smoothing_window",
      "empty_frame_policy", "ms_height_frac", "mcu_height_frac", "headroom_frac",
      "fs_padding_frac", "smooth_w1", "smooth_w2", "single_shot_scale", "max_actors",
      "gap_fill_secs", "silence_secs", "brute_force_limit"};
  return keys;
}

bool IsCostKey(std::string_view key) {
  static const std::vector<std::string_view> keys = {
      "lambda", "alpha", "beta", "mu", "nu", "gamma1", "gamma2",
      "l", "m", "establish_secs", "age_cap_secs", "g_floor"};
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

void EngineConfig::Validate() const {
  framing.Validate();
  potential.Validate();
  cost.Validate();
  if (!(gap_fill_secs >= 0.0)) throw ParamError("gap_fill_secs", "must be >= 0");
  if (!(silence_secs > 0.0)) throw ParamError("silence_secs", "must be positive");
  if (!(brute_force_limit >= 1.0)) throw ParamError("brute_force_limit", "must be >= 1");
}

Json ConfigToJson(const EngineConfig& c, bool resolved) {
  Json j;
  j["lambda"] = c.cost.lambda;
  j["alpha"] = c.cost.alpha;
  j["beta"] = c.cost.beta;
  j["mu"] = c.cost.mu;
  j["nu"] = c.cost.nu;
  j["gamma1"] = c.cost.gamma1;
  j["gamma2"] = c.cost.gamma2;
  j["l"] = c.cost.l;
  j["m"] = c.cost.m;
  j["establish_secs"] = c.cost.establish_secs;
  if (resolved || c.cost.age_cap_secs) {
    j["age_cap_secs"] = c.cost.AgeCapSecs();
  } else {
    j["age_cap_secs"] = "auto";
  }
  j["g_floor"] = c.cost.g_floor;
  j["eps_d"] = c.potential.eps_d;
  j["smoothing_window"] = c.potential.smoothing_window;
  j["empty_frame_policy"] = PolicyName(c.potential.empty_frame_policy);
  j["ms_height_frac"] = c.framing.ms_height_frac;
  j["mcu_height_frac"] = c.framing.mcu_height_frac;
  j["headroom_frac"] = c.framing.headroom_frac;
  j["fs_padding_frac"] = c.framing.fs_padding_frac;
  j["smooth_w1"] = c.framing.smooth_w1;
  j["smooth_w2"] = c.framing.smooth_w2;
  j["single_shot_scale"] = std::string(ScaleName(c.framing.single_scale));
  j["max_actors"] = c.framing.max_actors;
  j["gap_fill_secs"] = c.gap_fill_secs;
  j["silence_secs"] = c.silence_secs;
  j["brute_force_limit"] = c.brute_force_limit;
  return j;
}

void ApplyOverride(EngineConfig& c, std::string_view key, const Json& v) {
  auto num = [&] { return AsNumber(key, v); };
  if (key == "lambda") c.cost.lambda = num();
  else if (key == "alpha") c.cost.alpha = num();
  else if (key == "beta") c.cost.beta = num();
  else if (key == "mu") c.cost.mu = num();
  else if (key == "nu") c.cost.nu = num();
  else if (key == "gamma1") c.cost.gamma1 = num();
  else if (key == "gamma2") c.cost.gamma2 = num();
  else if (key == "l") c.cost.l = num();
  else if (key == "m") c.cost.m = num();
  else if (key == "establish_secs") c.cost.establish_secs = num();
  else if (key == "age_cap_secs") {
    if (v.is_null() || (v.is_string() && v.get<std::string>() == "auto")) {
      c.cost.age_cap_secs.reset();
    } else {
      c.cost.age_cap_secs = num();
    }
  } else if (key == "g_floor") c.cost.g_floor = num();
  else if (key == "eps_d") c.potential.eps_d = num();
  else if (key == "smoothing_window") c.potential.smoothing_window = num();
  else if (key == "empty_frame_policy") {
    const std::string s = AsString(key, v);
    if (s == "carry_forward") c.potential.empty_frame_policy = EmptyFramePolicy::kCarryForward;
    else if (s == "uniform") c.potential.empty_frame_policy = EmptyFramePolicy::kUniform;
    else throw ParamError("empty_frame_policy", "expected carry_forward or uniform");
  } else if (key == "ms_height_frac") c.framing.ms_height_frac = num();
  else if (key == "mcu_height_frac") c.framing.mcu_height_frac = num();
  else if (key == "headroom_frac") c.framing.headroom_frac = num();
  else if (key == "fs_padding_frac") c.framing.fs_padding_frac = num();
  else if (key == "smooth_w1") c.framing.smooth_w1 = num();
  else if (key == "smooth_w2") c.framing.smooth_w2 = num();
  else if (key == "single_shot_scale") {
    auto s = ParseScale(AsString(key, v));
    if (!s) throw ParamError("single_shot_scale", "expected MS or MCU");
    c.framing.single_scale = *s;
  } else if (key == "max_actors") {
    const double d = num();
    if (d != static_cast<int>(d)) throw ParamError("max_actors", "expected an integer");
    c.framing.max_actors = static_cast<int>(d);
  } else if (key == "gap_fill_secs") c.gap_fill_secs = num();
  else if (key == "silence_secs") c.silence_secs = num();
  else if (key == "brute_force_limit") c.brute_force_limit = num();
  else throw ParamError(std::string(key), "unknown parameter");
}

EngineConfig ConfigFromJson(const Json& j, EngineConfig base) {
  if (!j.is_object()) throw ParamError("config", "expected a flat object");
  for (auto it = j.begin(); it != j.end(); ++it) ApplyOverride(base, it.key(), it.value());
  return base;
}

void ApplyOverrideText(EngineConfig& c, std::string_view assignment) {
  const size_t eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ParamError(std::string(assignment), "expected key=value");
  }
  const std::string_view key = assignment.substr(0, eq);
  const std::string_view text = assignment.substr(eq + 1);
  double d = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ec == std::errc() && ptr == text.data() + text.size()) {
    ApplyOverride(c, key, Json(d));
  } else {
    ApplyOverride(c, key, Json(std::string(text)));
  }
}

}  // namespace stagecut
