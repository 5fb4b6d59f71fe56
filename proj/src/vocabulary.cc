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

#include "synids/vocabulary.h"

#include <algorithm>
#include <limits>
#include <string>

#include "synids/error.h"
#include "synids/parallel.h"
#include "synids/rng.h"

namespace synids {
namespace {

constexpr std::size_t kAssignChunk = 256;

// Squared distance that gives up once the running sum exceeds `bound`.
// The summation order is fixed, so a completed sum is bitwise identical to
// SquaredDistance().
double BoundedSquaredDistance(const double* a, const double* b,
                              std::size_t n, double bound) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  std::size_t i = 0;
  while (i + 4 <= n) {
    const std::size_t stop = std::min(n - n % 4, i + 32);
    for (; i < stop; i += 4) {
      const double d0 = a[i] - b[i];
      const double d1 = a[i + 1] - b[i + 1];
      const double d2 = a[i + 2] - b[i + 2];
      const double d3 = a[i + 3] - b[i + 3];
      s0 += d0 * d0;
      s1 += d1 * d1;
      s2 += d2 * d2;
      s3 += d3 * d3;
    }
    if ((s0 + s1) + (s2 + s3) > bound) return std::numeric_limits<double>::infinity();
  }
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s0 += d * d;
  }
  return (s0 + s1) + (s2 + s3);
}

struct Nearest {
  std::size_t index;
  double distance;
};

Nearest FindNearest(std::span<const double> point, const Matrix& centroids) {
  Nearest best{0, std::numeric_limits<double>::infinity()};
  for (std::size_t j = 0; j < centroids.rows(); ++j) {
    const double d = BoundedSquaredDistance(
        point.data(), centroids.row(j).data(), point.size(), best.distance);
    if (d < best.distance) best = {j, d};
  }
  return best;
}

Matrix SeedPlusPlus(const Matrix& points, std::size_t k, Rng& rng) {
  const std::size_t n = points.rows();
  Matrix centroids(k, points.cols());
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::size_t pick = rng.UniformInt(n);
  for (std::size_t c = 0; c < k; ++c) {
    std::copy(points.row(pick).begin(), points.row(pick).end(),
              centroids.row(c).begin());
    if (c + 1 == k) break;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i],
                            SquaredDistance(points.row(i), centroids.row(c)));
      total += nearest[i];
    }
    if (total <= 0.0) {
      pick = rng.UniformInt(n);
      continue;
    }
    const double target = rng.Uniform() * total;
    double acc = 0.0;
    pick = n - 1;
    for (std::size_t i = 0; i < n; ++i) {
      acc += nearest[i];
      if (acc > target && nearest[i] > 0.0) {
        pick = i;
        break;
      }
    }
  }
  return centroids;
}

// Assigns every point; returns the number of changed assignments.
std::size_t AssignAll(const Matrix& points, const Matrix& centroids,
                      std::vector<std::size_t>& assignment,
                      std::vector<double>& distance, int jobs) {
  const std::size_t n = points.rows();
  std::vector<std::uint8_t> changed(n, 0);
  ParallelFor((n + kAssignChunk - 1) / kAssignChunk, jobs, [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kAssignChunk);
    for (std::size_t i = c * kAssignChunk; i < end; ++i) {
      const Nearest nn = FindNearest(points.row(i), centroids);
      changed[i] = assignment[i] != nn.index;
      assignment[i] = nn.index;
      distance[i] = nn.distance;
    }
  });
  std::size_t total = 0;
  for (std::uint8_t c : changed) total += c;
  return total;
}

double SumInOrder(const std::vector<double>& values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

}  // namespace

void Matrix::AppendRow(std::span<const double> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "row length mismatch");
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  return BoundedSquaredDistance(a.data(), b.data(), a.size(),
                                std::numeric_limits<double>::infinity());
}

std::size_t Assign(std::span<const double> point, const Matrix& centroids) {
  if (centroids.rows() == 0 || point.size() != centroids.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "descriptor length does not match the vocabulary");
  }
  return FindNearest(point, centroids).index;
}

double KMeansObjective(const Matrix& points, const Matrix& centroids,
                       std::span<const std::size_t> assignment) {
  double s = 0.0;
  for (std::size_t i = 0; i < points.rows(); ++i) {
    s += SquaredDistance(points.row(i), centroids.row(assignment[i]));
  }
  return s;
}

KMeansResult KMeans(const Matrix& points, const KMeansOptions& options) {
  const std::size_t n = points.rows();
  const std::size_t k = options.k;
  const std::size_t dim = points.cols();
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  if (n < k) {
    throw Error(ErrorCode::kInsufficientData,
                "k-means needs at least k=" + std::to_string(k) +
                    " descriptors, got " + std::to_string(n));
  }
  Rng rng(options.seed);
  KMeansResult result;
  result.centroids = SeedPlusPlus(points, k, rng);
  result.assignment.assign(n, k);  // k = unassigned
  std::vector<double> distance(n, 0.0);
  AssignAll(points, result.centroids, result.assignment, distance,
            options.jobs);
  result.objective_trace.push_back(SumInOrder(distance));

  std::vector<std::size_t> counts(k);
  for (int it = 0; it < options.max_iterations; ++it) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t a : result.assignment) ++counts[a];
    for (std::size_t j = 0; j < k; ++j) {
      if (counts[j] != 0) continue;
      // Move the worst-served point into the empty cluster.
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[result.assignment[i]] < 2) continue;
        if (far == n || distance[i] > distance[far]) far = i;
      }
      --counts[result.assignment[far]];
      result.assignment[far] = j;
      distance[far] = 0.0;
      counts[j] = 1;
    }

    Matrix sums(k, dim);
    for (std::size_t i = 0; i < n; ++i) {
      auto dst = sums.row(result.assignment[i]);
      auto src = points.row(i);
      for (std::size_t d = 0; d < dim; ++d) dst[d] += src[d];
    }
    for (std::size_t j = 0; j < k; ++j) {
      auto c = result.centroids.row(j);
      auto s = sums.row(j);
      for (std::size_t d = 0; d < dim; ++d) {
        c[d] = s[d] / static_cast<double>(counts[j]);
      }
    }

    const std::size_t changed = AssignAll(
        points, result.centroids, result.assignment, distance, options.jobs);
    result.objective_trace.push_back(SumInOrder(distance));
    ++result.iterations;
    if (changed == 0) {
      result.converged = true;
      break;
    }
  }
  return result;
}

Matrix BuildFrequencyMatrix(std::span<const Matrix> images,
                            const Matrix& centroids, int jobs) {
  Matrix counts(images.size(), centroids.rows());
  ParallelFor(images.size(), jobs, [&](std::size_t i) {
    const Matrix& desc = images[i];
    for (std::size_t r = 0; r < desc.rows(); ++r) {
      counts(i, Assign(desc.row(r), centroids)) += 1.0;
    }
  });
  return counts;
}

double TermFrequency(std::span<const double> counts, std::size_t j) {
  double total = 0.0;
  for (double c : counts) total += c;
  return total > 0.0 ? counts[j] / total : 0.0;
}

double InverseDocumentFrequency(std::size_t df, std::size_t m,
                                double log_base) {
  if (df == 0) return 0.0;
  return std::log(static_cast<double>(m) / static_cast<double>(df)) /
         std::log(log_base);
}

std::vector<double> ComputeIdf(const Matrix& counts, double log_base) {
  std::vector<double> idf(counts.cols(), 0.0);
  for (std::size_t j = 0; j < counts.cols(); ++j) {
    std::size_t df = 0;
    for (std::size_t i = 0; i < counts.rows(); ++i) df += counts(i, j) > 0;
    idf[j] = InverseDocumentFrequency(df, counts.rows(), log_base);
  }
  return idf;
}

Matrix TfIdfWeight(const Matrix& counts, std::span<const double> idf) {
  if (idf.size() != counts.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "idf length mismatch");
  }
  Matrix weighted(counts.rows(), counts.cols());
  for (std::size_t i = 0; i < counts.rows(); ++i) {
    double total = 0.0;
    for (double c : counts.row(i)) total += c;
    if (total <= 0.0) continue;
    for (std::size_t j = 0; j < counts.cols(); ++j) {
      weighted(i, j) = counts(i, j) / total * idf[j];
    }
  }
  return weighted;
}

std::vector<double> BowVector(const Matrix& descriptors,
                              const Vocabulary& vocabulary) {
  Matrix counts(1, vocabulary.k());
  for (std::size_t r = 0; r < descriptors.rows(); ++r) {
    counts(0, Assign(descriptors.row(r), vocabulary.centroids)) += 1.0;
  }
  const Matrix weighted = TfIdfWeight(counts, vocabulary.idf);
  return {weighted.row(0).begin(), weighted.row(0).end()};
}

}  // namespace synids
