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
#include "synids/vocabulary.h"

namespace synids {
namespace {

Matrix RandomPoints(std::mt19937_64& g, std::size_t n, std::size_t dim) {
  std::normal_distribution<double> d(0.0, 1.0);
  Matrix m(n, dim);
  for (std::size_t i = 0; i < n; ++i) {
    const double shift = 4.0 * static_cast<double>(i % 3);  // three blobs
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = d(g) + shift;
  }
  return m;
}

TEST(KMeansTest, ObjectiveNeverIncreases) {
  std::mt19937_64 g(1);
  for (int inst = 0; inst < 20; ++inst) {
    const Matrix pts = RandomPoints(g, 50 + 10 * inst, 2 + inst % 5);
    KMeansOptions opt;
    opt.k = 2 + inst % 7;
    opt.seed = inst;
    const KMeansResult r = KMeans(pts, opt);
    ASSERT_FALSE(r.objective_trace.empty());
    for (std::size_t t = 1; t < r.objective_trace.size(); ++t) {
      EXPECT_LE(r.objective_trace[t], r.objective_trace[t - 1]) << inst << " " << t;
    }
    EXPECT_DOUBLE_EQ(r.objective_trace.back(),
                     KMeansObjective(pts, r.centroids, r.assignment));
  }
}

TEST(KMeansTest, ConvergedResultIsLloydFixpoint) {
  std::mt19937_64 g(2);
  for (int inst = 0; inst < 10; ++inst) {
    const std::size_t n = 40 + 16 * inst;  // up to 184 points
    const Matrix pts = RandomPoints(g, n, 3);
    KMeansOptions opt;
    opt.k = 3 + inst % 4;
    opt.seed = 100 + inst;
    opt.max_iterations = 1000;
    const KMeansResult r = KMeans(pts, opt);
    ASSERT_TRUE(r.converged);
    // Each point is with its nearest centroid.
    for (std::size_t i = 0; i < n; ++i) {
      const double own = SquaredDistance(pts.row(i), r.centroids.row(r.assignment[i]));
      for (std::size_t c = 0; c < opt.k; ++c) {
        EXPECT_LE(own, SquaredDistance(pts.row(i), r.centroids.row(c)) + 1e-12);
      }
    }
    // Each centroid is the mean of its members.
    for (std::size_t c = 0; c < opt.k; ++c) {
      std::vector<double> mean(3, 0.0);
      std::size_t count = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (r.assignment[i] != c) continue;
        ++count;
        for (std::size_t j = 0; j < 3; ++j) mean[j] += pts(i, j);
      }
      ASSERT_GT(count, 0u);
      for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_NEAR(r.centroids(c, j), mean[j] / count, 1e-12);
      }
    }
  }
}

TEST(KMeansTest, SingleClusterIsTheMean) {
  std::mt19937_64 g(3);
  const Matrix pts = RandomPoints(g, 77, 5);
  KMeansOptions opt;
  opt.k = 1;
  const KMeansResult r = KMeans(pts, opt);
  for (std::size_t j = 0; j < 5; ++j) {
    long double s = 0;
    for (std::size_t i = 0; i < 77; ++i) s += pts(i, j);
    EXPECT_NEAR(r.centroids(0, j), static_cast<double>(s / 77), 1e-12);
  }
}

TEST(KMeansTest, TooFewPointsIsInsufficientData) {
  KMeansOptions opt;
  opt.k = 5;
  try {
    KMeans(Matrix(4, 2), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientData);
  }
}

TEST(KMeansTest, ResultIndependentOfJobs) {
  std::mt19937_64 g(4);
  const Matrix pts = RandomPoints(g, 500, 8);
  KMeansOptions opt;
  opt.k = 12;
  opt.seed = 9;
  const KMeansResult a = KMeans(pts, opt);
  opt.jobs = 8;
  const KMeansResult b = KMeans(pts, opt);
  EXPECT_EQ(a.centroids, b.centroids);
  EXPECT_EQ(a.assignment, b.assignment);
  opt.seed = 10;
  EXPECT_NE(KMeans(pts, opt).centroids, a.centroids);
}

TEST(KMeansTest, DuplicatePointsStillFillEveryCluster) {
  Matrix pts(30, 2, 1.0);
  for (std::size_t i = 0; i < 3; ++i) pts(i, 0) = 10.0 + i;
  KMeansOptions opt;
  opt.k = 4;
  const KMeansResult r = KMeans(pts, opt);
  std::vector<int> used(4, 0);
  for (std::size_t a : r.assignment) used[a] = 1;
  EXPECT_EQ(used, (std::vector<int>{1, 1, 1, 1}));
}

TEST(AssignTest, TiesGoToLowestIndex) {
  Matrix c(3, 1);
  c(0, 0) = -1;
  c(1, 0) = 1;
  c(2, 0) = -1;
  const std::vector<double> x = {0.0};
  EXPECT_EQ(Assign(x, c), 0u);
}

// Five images over four clusters; cluster 0 occurs in every image.
const std::vector<std::vector<double>> kToyCounts = {
    {2, 1, 0, 0}, {1, 0, 3, 0}, {4, 0, 0, 1}, {1, 2, 2, 0}, {3, 0, 0, 0}};

TEST(TfIdfTest, MatchesPerCellOracle) {
  Matrix counts(5, 4);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 4; ++j) counts(i, j) = kToyCounts[i][j];
  }
  const auto idf = ComputeIdf(counts);
  const Matrix w = TfIdfWeight(counts, idf);
  const auto want = oracle::TfIdf(kToyCounts);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(w(i, j), want[i][j], 1e-12);
    EXPECT_EQ(w(i, 0), 0.0);  // ubiquitous cluster
  }
  EXPECT_NEAR(idf[1], std::log(5.0 / 2.0), 1e-15);
  EXPECT_NEAR(idf[3], std::log(5.0), 1e-15);
}

TEST(TfIdfTest, IdfAndTfEdgeCases) {
  EXPECT_EQ(InverseDocumentFrequency(0, 5), 0.0);
  EXPECT_EQ(InverseDocumentFrequency(5, 5), 0.0);
  EXPECT_NEAR(InverseDocumentFrequency(1, 8, 2.0), 3.0, 1e-15);
  const std::vector<double> empty = {0, 0, 0};
  EXPECT_EQ(TermFrequency(empty, 1), 0.0);
  const std::vector<double> row = {1, 3};
  EXPECT_DOUBLE_EQ(TermFrequency(row, 1), 0.75);
}

TEST(FrequencyTest, CountsNearestCentroids) {
  Matrix centroids(2, 1);
  centroids(0, 0) = 0;
  centroids(1, 0) = 10;
  Matrix img0(3, 1), img1(1, 1), img2;
  img0(0, 0) = 1;
  img0(1, 0) = 9;
  img0(2, 0) = 2;
  img1(0, 0) = 11;
  img2 = Matrix(0, 1);
  const std::vector<Matrix> images = {img0, img1, img2};
  const Matrix f = BuildFrequencyMatrix(images, centroids);
  EXPECT_EQ(f(0, 0), 2);
  EXPECT_EQ(f(0, 1), 1);
  EXPECT_EQ(f(1, 1), 1);
  EXPECT_EQ(f(2, 0) + f(2, 1), 0);
  EXPECT_EQ(BuildFrequencyMatrix(images, centroids, 4), f);
}

TEST(BowTest, MatchesFrequencyRowTimesIdf) {
  Vocabulary v;
  v.centroids = Matrix(2, 1);
  v.centroids(1, 0) = 10;
  v.idf = {0.5, 2.0};
  Matrix d(4, 1);
  d(0, 0) = 1;
  d(1, 0) = 8;
  d(2, 0) = 12;
  d(3, 0) = -1;
  const auto bow = BowVector(d, v);
  ASSERT_EQ(bow.size(), 2u);
  EXPECT_DOUBLE_EQ(bow[0], 0.5 * 0.5);
  EXPECT_DOUBLE_EQ(bow[1], 0.5 * 2.0);
  EXPECT_EQ(BowVector(Matrix(0, 1), v), (std::vector<double>{0, 0}));
}

}  // namespace
}  // namespace synids
