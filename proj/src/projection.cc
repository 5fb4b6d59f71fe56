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

#include "synids/projection.h"

#include <cmath>
#include <string>

#include "synids/error.h"
#include "synids/kv_config.h"

namespace synids {
namespace {

double Dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

ProjectionBasis MakeBasis(std::span<const double> a_raw,
                          std::span<const double> b_raw, bool normalize) {
  if (a_raw.size() != b_raw.size() || a_raw.size() < 2) {
    throw Error(ErrorCode::kDimensionMismatch,
                "basis vectors must have equal length >= 2 (got " +
                    std::to_string(a_raw.size()) + " and " +
                    std::to_string(b_raw.size()) + ")");
  }
  ProjectionBasis basis;
  basis.a.assign(a_raw.begin(), a_raw.end());
  basis.b.assign(b_raw.begin(), b_raw.end());
  if (normalize) {
    for (std::vector<double>* v : {&basis.a, &basis.b}) {
      const double norm = std::sqrt(Dot(*v, *v));
      if (norm == 0.0) {
        throw Error(ErrorCode::kDegenerateBasis, "zero basis vector");
      }
      for (double& x : *v) x /= norm;
    }
  }
  const double aa = Dot(basis.a, basis.a);
  const double ab = Dot(basis.a, basis.b);
  const double bb = Dot(basis.b, basis.b);
  basis.gram = {{{aa, ab}, {ab, bb}}};
  basis.gram_det = aa * bb - ab * ab;
  if (!(basis.gram_det > kDegenerateGramThreshold)) {
    throw Error(ErrorCode::kDegenerateBasis,
                "Gram determinant " + std::to_string(basis.gram_det) +
                    " too small; basis vectors are (nearly) collinear");
  }
  return basis;
}

ProjectionBasis DefaultBasis(std::size_t n) {
  std::vector<double> a(n, 0.0), b(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) (i % 2 == 0 ? a : b)[i] = 1.0;
  return MakeBasis(a, b);
}

ProjectionBasis BasisFromConfig(const KvConfig& config, std::size_t n) {
  const bool has_a = config.Has("basis.a");
  const bool has_b = config.Has("basis.b");
  if (!has_a && !has_b) return DefaultBasis(n);
  if (has_a != has_b) {
    throw Error(ErrorCode::kInvalidArgument,
                "basis.a and basis.b must be given together");
  }
  const std::vector<double> a = config.GetDoubleList("basis.a");
  const std::vector<double> b = config.GetDoubleList("basis.b");
  if (a.size() != n || b.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "basis vectors must have " + std::to_string(n) +
                    " components");
  }
  return MakeBasis(a, b);
}

PlanePoint ProjectPoint(std::span<const double> x,
                        const ProjectionBasis& basis) {
  if (x.size() != basis.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector has " + std::to_string(x.size()) +
                    " components, basis has " + std::to_string(basis.dim()));
  }
  const double xa = Dot(x, basis.a);
  const double xb = Dot(x, basis.b);
  const double aa = basis.gram[0][0];
  const double ab = basis.gram[0][1];
  const double bb = basis.gram[1][1];
  return {(bb * xa - ab * xb) / basis.gram_det,
          (aa * xb - ab * xa) / basis.gram_det};
}

ProjectionCoefficients CoordinateFunctionals(const ProjectionBasis& basis) {
  const double aa = basis.gram[0][0];
  const double ab = basis.gram[0][1];
  const double bb = basis.gram[1][1];
  ProjectionCoefficients c;
  c.cu.resize(basis.dim());
  c.cv.resize(basis.dim());
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    c.cu[i] = (bb * basis.a[i] - ab * basis.b[i]) / basis.gram_det;
    c.cv[i] = (aa * basis.b[i] - ab * basis.a[i]) / basis.gram_det;
  }
  return c;
}

PlaneBounds CoordinateBounds(const ProjectionBasis& basis) {
  const ProjectionCoefficients c = CoordinateFunctionals(basis);
  PlaneBounds bounds;
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    (c.cu[i] < 0 ? bounds.u_min : bounds.u_max) += c.cu[i];
    (c.cv[i] < 0 ? bounds.v_min : bounds.v_max) += c.cv[i];
  }
  return bounds;
}

}  // namespace synids
