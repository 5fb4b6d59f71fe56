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

// Visual vocabulary: k-means codebook over descriptors, per-image appearance
// counts and tf-idf weighting.

#ifndef SYNIDS_VOCABULARY_H_
#define SYNIDS_VOCABULARY_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace synids {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }

  void AppendRow(std::span<const double> values);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct KMeansOptions {
  std::size_t k = 1000;
  std::uint64_t seed = 0;
  int max_iterations = 100;
  int jobs = 1;
};

struct KMeansResult {
  Matrix centroids;                      // k x dim
  std::vector<std::size_t> assignment;   // per point
  // Objective after each assignment step, starting with the assignment to
  // the k-means++ seeds.
  std::vector<double> objective_trace;
  int iterations = 0;
  bool converged = false;  // assignment fixpoint reached
};

// k-means++ seeding from a deterministic RNG, then Lloyd iterations until the
// assignment stops changing or max_iterations is reached. A cluster that
// empties is re-seeded at the point farthest from its current centroid.
// Result is a function of (points, k, seed) only; `jobs` does not change it.
// Throws kInsufficientData when there are fewer points than k.
KMeansResult KMeans(const Matrix& points, const KMeansOptions& options);

double SquaredDistance(std::span<const double> a, std::span<const double> b);

// Nearest centroid; ties go to the lowest index.
std::size_t Assign(std::span<const double> point, const Matrix& centroids);

// Sum of squared distances from each point to its assigned centroid.
double KMeansObjective(const Matrix& points, const Matrix& centroids,
                       std::span<const std::size_t> assignment);

// counts(i, j) = number of image i's descriptors nearest to centroid j.
// `images[i]` holds image i's descriptors as rows.
Matrix BuildFrequencyMatrix(std::span<const Matrix> images,
                            const Matrix& centroids, int jobs = 1);

// n_t / sum(n); zero for an empty row.
double TermFrequency(std::span<const double> counts, std::size_t j);

// log(m / df) in the given base; zero when df == 0.
double InverseDocumentFrequency(std::size_t df, std::size_t m,
                                double log_base = M_E);

// idf per column of a count matrix.
std::vector<double> ComputeIdf(const Matrix& counts, double log_base = M_E);

// weighted(i, j) = tf(i, j) * idf[j].
Matrix TfIdfWeight(const Matrix& counts, std::span<const double> idf);

struct Vocabulary {
  Matrix centroids;          // k x 128
  std::vector<double> idf;   // k
  std::uint64_t seed = 0;

  std::size_t k() const { return centroids.rows(); }

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;
};

// tf-idf weighted bag of visual words for one image's descriptors.
std::vector<double> BowVector(const Matrix& descriptors,
                              const Vocabulary& vocabulary);

}  // namespace synids

#endif  // SYNIDS_VOCABULARY_H_
