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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.h"
#include "synids/error.h"
#include "synids/kv_config.h"
#include "synids/packet.h"
#include "synids/projection.h"

namespace synids {
namespace {

std::vector<double> RandomVector(std::mt19937_64& g, std::size_t n, double lo,
                                 double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = d(g);
  return v;
}

TEST(ProjectionTest, MatchesLeastSquaresOnRandomCases) {
  std::mt19937_64 g(42);
  int checked = 0;
  while (checked < 300) {
    const std::size_t n = 2 + g() % 15;
    const auto a = RandomVector(g, n, -1, 1);
    const auto b = RandomVector(g, n, -1, 1);
    const auto x = RandomVector(g, n, 0, 1);
    ProjectionBasis basis;
    try {
      basis = MakeBasis(a, b);
    } catch (const Error&) {
      continue;
    }
    const PlanePoint p = ProjectPoint(x, basis);
    const auto [u, v] = oracle::LeastSquaresProjection(x, basis.a, basis.b);
    EXPECT_NEAR(p.u, u, 1e-9);
    EXPECT_NEAR(p.v, v, 1e-9);
    ++checked;
  }
}

TEST(ProjectionTest, OrthonormalBasisGivesDotProducts) {
  const std::vector<double> a = {1, 0, 0}, b = {0, 1, 0}, x = {0.3, 0.7, 0.9};
  const PlanePoint p = ProjectPoint(x, MakeBasis(a, b));
  EXPECT_DOUBLE_EQ(p.u, 0.3);
  EXPECT_DOUBLE_EQ(p.v, 0.7);
}

TEST(ProjectionTest, PointInThePlaneIsReproduced) {
  const std::vector<double> a = {1, 2, 0, 1}, b = {0, 1, 1, -1};
  const ProjectionBasis basis = MakeBasis(a, b, /*normalize=*/false);
  std::vector<double> x(4);
  for (int i = 0; i < 4; ++i) x[i] = 0.25 * a[i] - 1.5 * b[i];
  const PlanePoint p = ProjectPoint(x, basis);
  EXPECT_NEAR(p.u, 0.25, 1e-12);
  EXPECT_NEAR(p.v, -1.5, 1e-12);
}

TEST(ProjectionTest, CollinearBasisIsDegenerate) {
  const std::vector<double> a = {1, 2, 3}, b = {2, 4, 6};
  try {
    MakeBasis(a, b);
    FAIL() << "expected DegenerateBasis";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateBasis);
  }
  const std::vector<double> zero = {0, 0, 0};
  EXPECT_THROW(MakeBasis(a, zero), Error);
}

TEST(ProjectionTest, DimensionMismatchIsRejected) {
  const std::vector<double> a = {1, 0, 0}, b = {0, 1};
  try {
    MakeBasis(a, b);
    FAIL() << "expected DimensionMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(ProjectionTest, BoundsEqualExtremesOverHypercubeCorners) {
  std::mt19937_64 g(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + g() % 9;
    const ProjectionBasis basis =
        MakeBasis(RandomVector(g, n, -1, 1), RandomVector(g, n, -1, 1));
    const PlaneBounds bounds = CoordinateBounds(basis);
    double u_min = INFINITY, u_max = -INFINITY, v_min = INFINITY, v_max = -INFINITY;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
      const PlanePoint p = ProjectPoint(x, basis);
      u_min = std::min(u_min, p.u);
      u_max = std::max(u_max, p.u);
      v_min = std::min(v_min, p.v);
      v_max = std::max(v_max, p.v);
    }
    EXPECT_NEAR(bounds.u_min, u_min, 1e-9);
    EXPECT_NEAR(bounds.u_max, u_max, 1e-9);
    EXPECT_NEAR(bounds.v_min, v_min, 1e-9);
    EXPECT_NEAR(bounds.v_max, v_max, 1e-9);
  }
}

TEST(ProjectionTest, DefaultBasisSplitsEvenAndOddFeatures) {
  const ProjectionBasis basis = DefaultBasis(kFeatureDim);
  ASSERT_EQ(basis.dim(), kFeatureDim);
  const double s = 1.0 / std::sqrt(5.0);
  for (std::size_t i = 0; i < kFeatureDim; ++i) {
    EXPECT_DOUBLE_EQ(basis.a[i], i % 2 == 0 ? s : 0.0);
    EXPECT_DOUBLE_EQ(basis.b[i], i % 2 == 1 ? s : 0.0);
  }
  EXPECT_NEAR(basis.gram_det, 1.0, 1e-15);
}

TEST(KvConfigTest, ParsesCommentsOverridesAndLists) {
  const KvConfig c = KvConfig::Parse(
      "# comment\n"
      "basis.a = 1, 0, 0\n"
      "  name = demo   # trailing\n"
      "x = 1\n"
      "x = 2\n"
      "background.http.port = 80\n"
      "background.ssh.port = 22\n"
      "flag = true\n");
  EXPECT_EQ(c.GetString("name"), "demo");
  EXPECT_EQ(c.GetInt("x", 0), 2);
  EXPECT_EQ(c.GetDoubleList("basis.a"), (std::vector<double>{1, 0, 0}));
  EXPECT_EQ(c.Children("background"), (std::vector<std::string>{"http", "ssh"}));
  EXPECT_TRUE(c.GetBool("flag", false));
  EXPECT_EQ(c.GetDouble("missing", 4.5), 4.5);
  EXPECT_THROW(c.GetDouble("name"), Error);
  EXPECT_THROW(c.GetString("missing"), Error);
}

TEST(KvConfigTest, BasisFromConfigValidatesLength) {
  KvConfig c;
  EXPECT_EQ(BasisFromConfig(c, 4).a, DefaultBasis(4).a);
  c.Set("basis.a", "1,0,0,0");
  EXPECT_THROW(BasisFromConfig(c, 4), Error);  // b missing
  c.Set("basis.b", "0,1,0");
  EXPECT_THROW(BasisFromConfig(c, 4), Error);  // wrong length
  c.Set("basis.b", "0,1,0,0");
  const ProjectionBasis basis = BasisFromConfig(c, 4);
  EXPECT_EQ(basis.b, (std::vector<double>{0, 1, 0, 0}));
}

}  // namespace
}  // namespace synids
