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

#include "stagecut/smoother.h"

#include <cmath>
#include <stdexcept>

namespace stagecut {

std::vector<double> SolvePentadiagonal(std::vector<double> diag,
                                       std::vector<double> off1,
                                       std::vector<double> off2,
                                       std::vector<double> rhs) {
  const size_t n = diag.size();
  off1.resize(n, 0.0);
  off2.resize(n, 0.0);
  // LDL^T with unit lower factor stored in place:
  //   l1[i] = L(i, i-1), l2[i] = L(i, i-2).
  std::vector<double> d(n), l1(n, 0.0), l2(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    double di = diag[i];
    if (i >= 1) di -= l1[i] * l1[i] * d[i - 1];
    if (i >= 2) di -= l2[i] * l2[i] * d[i - 2];
    if (!(di > 0.0)) throw std::invalid_argument("pentadiagonal system is not positive definite");
    d[i] = di;
    if (i + 1 < n) {
      double v = off1[i];
      if (i >= 1) v -= l1[i] * l2[i + 1] * d[i - 1];
      l1[i + 1] = v / di;
    }
    if (i + 2 < n) l2[i + 2] = off2[i] / di;
  }
  // forward: L z = b
  for (size_t i = 0; i < n; ++i) {
    if (i >= 1) rhs[i] -= l1[i] * rhs[i - 1];
    if (i >= 2) rhs[i] -= l2[i] * rhs[i - 2];
  }
  for (size_t i = 0; i < n; ++i) rhs[i] /= d[i];
  // backward: L^T x = z
  for (size_t k = n; k-- > 0;) {
    if (k + 1 < n) rhs[k] -= l1[k + 1] * rhs[k + 1];
    if (k + 2 < n) rhs[k] -= l2[k + 2] * rhs[k + 2];
  }
  return rhs;
}

std::vector<double> SmoothSeries(std::span<const double> y,
                                 std::span<const double> weight, double w1,
                                 double w2) {
  const size_t n = y.size();
  if (weight.size() != n) throw std::invalid_argument("smooth: weight size mismatch");
  size_t data = 0;
  for (double c : weight) data += c > 0.0;
  if (data == 0) throw std::invalid_argument("smooth: no data");
  if (n == 1) return {y[0]};

  // Without a first-difference term the system is singular for fewer than
  // two data points (any line through one point fits) or when w2 is zero.
  if (w1 <= 0.0 && (data < 2 || w2 <= 0.0)) w1 = 1e-9;

  std::vector<double> diag(n, 0.0), off1(n, 0.0), off2(n, 0.0), rhs(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    diag[i] = weight[i];
    rhs[i] = weight[i] * y[i];
  }
  for (size_t i = 1; i < n; ++i) {
    diag[i - 1] += w1;
    diag[i] += w1;
    off1[i - 1] -= w1;
  }
  if (w2 > 0.0) {
    for (size_t i = 1; i + 1 < n; ++i) {
      // row (1, -2, 1) on columns i-1, i, i+1
      diag[i - 1] += w2;
      diag[i] += 4.0 * w2;
      diag[i + 1] += w2;
      off1[i - 1] -= 2.0 * w2;
      off1[i] -= 2.0 * w2;
      off2[i - 1] += w2;
    }
  }
  return SolvePentadiagonal(std::move(diag), std::move(off1), std::move(off2),
                            std::move(rhs));
}

std::optional<std::vector<CropWindow>> StabilizeTrajectory(
    const std::vector<std::optional<CropWindow>>& raw, double w1, double w2,
    Size frame) {
  const size_t n = raw.size();
  std::vector<double> cx(n, 0.0), cy(n, 0.0), w(n, 0.0), c(n, 0.0);
  bool any = false;
  for (size_t t = 0; t < n; ++t) {
    if (!raw[t]) continue;
    any = true;
    cx[t] = raw[t]->cx;
    cy[t] = raw[t]->cy;
    w[t] = raw[t]->w;
    c[t] = 1.0;
  }
  if (!any) return std::nullopt;
  const auto sx = SmoothSeries(cx, c, w1, w2);
  const auto sy = SmoothSeries(cy, c, w1, w2);
  const auto sw = SmoothSeries(w, c, w1, w2);
  const double aspect = frame.Aspect();
  std::vector<CropWindow> out(n);
  for (size_t t = 0; t < n; ++t) {
    const double width = std::max(sw[t], 2.0);
    out[t] = ClampToFrame(CropWindow::FromWidth({sx[t], sy[t]}, width, aspect), frame);
  }
  return out;
}

}  // namespace stagecut
