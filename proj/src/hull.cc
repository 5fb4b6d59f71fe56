// Copyright 2026 The synids Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "synids/hull.h"

#include <algorithm>
#include <cmath>

#include "synids/error.h"

namespace synids {

std::vector<PlanePoint> ConvexHull(std::span<const PlanePoint> points) {
  if (points.empty()) {
    throw Error(ErrorCode::kEmptyInput, "convex hull of no points");
  }
  std::vector<PlanePoint> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const PlanePoint& a, const PlanePoint& b) {
    return a.u < b.u || (a.u == b.u && a.v < b.v);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;

  std::vector<PlanePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const PlanePoint& p : pts) {
    while (k >= 2 && Cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && Cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);  // last point repeats the first
  return hull;
}

bool HullContains(std::span<const PlanePoint> hull, const PlanePoint& p,
                  double tolerance) {
  if (hull.size() == 1) {
    return std::abs(hull[0].u - p.u) <= tolerance &&
           std::abs(hull[0].v - p.v) <= tolerance;
  }
  if (hull.size() == 2) {
    const PlanePoint& a = hull[0];
    const PlanePoint& b = hull[1];
    if (std::abs(Cross(a, b, p)) > tolerance) return false;
    const double dot = (p.u - a.u) * (b.u - a.u) + (p.v - a.v) * (b.v - a.v);
    const double len2 = (b.u - a.u) * (b.u - a.u) + (b.v - a.v) * (b.v - a.v);
    return dot >= -tolerance && dot <= len2 + tolerance;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    if (Cross(hull[i], hull[(i + 1) % hull.size()], p) < -tolerance) {
      return false;
    }
  }
  return true;
}

double PolygonArea(std::span<const PlanePoint> polygon) {
  double twice = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const PlanePoint& a = polygon[i];
    const PlanePoint& b = polygon[(i + 1) % polygon.size()];
    twice += a.u * b.v - b.u * a.v;
  }
  return twice / 2.0;
}

}  // namespace synids
