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

// Orthogonal projection of feature vectors onto a plane span{a, b}.
//
// The projection of X is the point u*a + v*b closest to X. Its coordinates
// solve the 2x2 normal equations
//
//   [ a.a  a.b ] [u]   [X.a]
//   [ b.a  b.b ] [v] = [X.b]
//
// which is the Gram-determinant (Cramer's rule) form of the projection.

#ifndef SYNIDS_PROJECTION_H_
#define SYNIDS_PROJECTION_H_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace synids {

class KvConfig;

inline constexpr double kDegenerateGramThreshold = 1e-12;

struct PlanePoint {
  double u = 0.0;
  double v = 0.0;

  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

struct ProjectionBasis {
  std::vector<double> a;
  std::vector<double> b;
  std::array<std::array<double, 2>, 2> gram{};
  double gram_det = 0.0;

  std::size_t dim() const { return a.size(); }
};

// Builds a basis from two raw vectors. With `normalize` (the default) both
// vectors are scaled to unit length first. Throws kDegenerateBasis when the
// Gram determinant is <= 1e-12 and kDimensionMismatch for unequal or
// too-short inputs.
ProjectionBasis MakeBasis(std::span<const double> a_raw,
                          std::span<const double> b_raw,
                          bool normalize = true);

// a = indicator of even indices, b = indicator of odd indices, normalized.
ProjectionBasis DefaultBasis(std::size_t n);

// Reads `basis.a` / `basis.b` (comma-separated reals) from the config;
// falls back to DefaultBasis(n) when both are absent.
ProjectionBasis BasisFromConfig(const KvConfig& config, std::size_t n);

PlanePoint ProjectPoint(std::span<const double> x,
                        const ProjectionBasis& basis);

// Linear functionals u(X) = cu.X and v(X) = cv.X realised by ProjectPoint.
struct ProjectionCoefficients {
  std::vector<double> cu;
  std::vector<double> cv;
};
ProjectionCoefficients CoordinateFunctionals(const ProjectionBasis& basis);

struct PlaneBounds {
  double u_min = 0.0;
  double u_max = 0.0;
  double v_min = 0.0;
  double v_max = 0.0;

  friend bool operator==(const PlaneBounds&, const PlaneBounds&) = default;
};

// Exact extrema of (u, v) over the unit hypercube [0,1]^n.
PlaneBounds CoordinateBounds(const ProjectionBasis& basis);

}  // namespace synids

#endif  // SYNIDS_PROJECTION_H_
