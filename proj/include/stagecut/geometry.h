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

#ifndef STAGECUT_GEOMETRY_H_
#define STAGECUT_GEOMETRY_H_

namespace stagecut {

// Master-frame pixel coordinates: origin top-left, x right, y down.
struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

struct Size {
  int width = 0;
  int height = 0;
  double Aspect() const { return static_cast<double>(width) / height; }
  bool operator==(const Size&) const = default;
};

// Axis-aligned rectangle, also used for actor bounding boxes.
struct Rect {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double Width() const { return x2 - x1; }
  double Height() const { return y2 - y1; }
  double Area() const { return Width() * Height(); }
  Point Center() const { return {0.5 * (x1 + x2), 0.5 * (y1 + y2)}; }
  bool IsValid() const { return x1 < x2 && y1 < y2; }
  bool Contains(const Rect& other, double tol = 0.0) const;
  bool operator==(const Rect&) const = default;
};
using BBox = Rect;

// Intersection over union. Throws GeometryError on zero-area input.
double Iou(const Rect& a, const Rect& b);

// Clips to [0,W]x[0,H]; the result may be degenerate.
Rect ClipToFrame(const Rect& r, Size frame);

// Virtual camera framing. The height is carried explicitly but always
// equals w / aspect of the master frame it was built for.
struct CropWindow {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  static CropWindow FromWidth(Point center, double width, double aspect) {
    return {center.x, center.y, width, width / aspect};
  }
  static CropWindow FullFrame(Size frame);

  Rect ToRect() const {
    return {cx - 0.5 * w, cy - 0.5 * h, cx + 0.5 * w, cy + 0.5 * h};
  }
  Point Center() const { return {cx, cy}; }
  double Area() const { return w * h; }
  bool operator==(const CropWindow&) const = default;
};

// Shrinks (aspect-preserving) to fit the frame, then shifts the center so
// the window lies inside it.
CropWindow ClampToFrame(CropWindow win, Size frame);

bool InsideFrame(const CropWindow& win, Size frame, double tol = 1e-9);

}  // namespace stagecut

#endif  // STAGECUT_GEOMETRY_H_
