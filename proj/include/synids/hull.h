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

#ifndef SYNIDS_HULL_H_
#define SYNIDS_HULL_H_

#include <span>
#include <vector>

#include "synids/projection.h"

namespace synids {

// Twice the signed area of triangle (o, a, b); positive for a CCW turn.
inline double Cross(const PlanePoint& o, const PlanePoint& a,
                    const PlanePoint& b) {
  return (a.u - o.u) * (b.v - o.v) - (a.v - o.v) * (b.u - o.u);
}

// Convex hull by Andrew's monotone chain. Vertices are counter-clockwise
// starting from the lowest-u (then lowest-v) point, with collinear points
// removed. A single distinct point gives a 1-vertex hull; collinear input
// gives the 2-vertex segment between its extremes. Throws kEmptyInput.
std::vector<PlanePoint> ConvexHull(std::span<const PlanePoint> points);

// True when p lies inside or on the CCW hull (edge test >= -tolerance).
bool HullContains(std::span<const PlanePoint> hull, const PlanePoint& p,
                  double tolerance = 1e-9);

// Shoelace area of a CCW polygon.
double PolygonArea(std::span<const PlanePoint> polygon);

}  // namespace synids

#endif  // SYNIDS_HULL_H_
