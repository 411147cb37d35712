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

#include "stagecut/geometry.h"

#include <algorithm>

#include "stagecut/errors.h"

namespace stagecut {

bool Rect::Contains(const Rect& o, double tol) const {
  return o.x1 >= x1 - tol && o.y1 >= y1 - tol && o.x2 <= x2 + tol &&
         o.y2 <= y2 + tol;
}

double Iou(const Rect& a, const Rect& b) {
  if (!a.IsValid() || !b.IsValid()) {
    throw GeometryError("iou: degenerate rectangle");
  }
  const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.Area() + b.Area() - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

Rect ClipToFrame(const Rect& r, Size frame) {
  return {std::clamp(r.x1, 0.0, static_cast<double>(frame.width)),
          std::clamp(r.y1, 0.0, static_cast<double>(frame.height)),
          std::clamp(r.x2, 0.0, static_cast<double>(frame.width)),
          std::clamp(r.y2, 0.0, static_cast<double>(frame.height))};
}

CropWindow CropWindow::FullFrame(Size frame) {
  return {0.5 * frame.width, 0.5 * frame.height,
          static_cast<double>(frame.width), static_cast<double>(frame.height)};
}

CropWindow ClampToFrame(CropWindow win, Size frame) {
  const double fw = frame.width;
  const double fh = frame.height;
  if (win.w >= fw || win.h >= fh) {
    // Largest window at this aspect is the full frame itself.
    const double aspect = win.w / win.h;
    if (aspect >= frame.Aspect()) {
      win.h = std::min(fh, fw / aspect);
      win.w = win.h * aspect > fw ? fw : win.h * aspect;
    } else {
      win.w = std::min(fw, fh * aspect);
      win.h = win.w / aspect > fh ? fh : win.w / aspect;
    }
  }
  win.cx = std::clamp(win.cx, 0.5 * win.w, fw - 0.5 * win.w);
  win.cy = std::clamp(win.cy, 0.5 * win.h, fh - 0.5 * win.h);
  return win;
}

bool InsideFrame(const CropWindow& win, Size frame, double tol) {
  const Rect r = win.ToRect();
  return r.x1 >= -tol && r.y1 >= -tol && r.x2 <= frame.width + tol &&
         r.y2 <= frame.height + tol;
}

}  // namespace stagecut
