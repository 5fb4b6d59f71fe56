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

// Boosted Gaussian naive Bayes over tf-idf bag-of-words vectors.
//
// Class labels are +1 (ddos) and -1 (legitimate) throughout.

#ifndef SYNIDS_CLASSIFIER_H_
#define SYNIDS_CLASSIFIER_H_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "synids/vocabulary.h"

namespace synids {

inline constexpr int kDdos = +1;
inline constexpr int kLegitimate = -1;
inline constexpr double kDefaultVarianceFloor = 1e-9;

// Per-class prior and per-feature Gaussian likelihood. Index 0 holds the
// legitimate class, index 1 the ddos class.
struct NaiveBayesModel {
  std::array<double, 2> prior{};
  std::array<std::vector<double>, 2> mean;
  std::array<std::vector<double>, 2> variance;

  std::size_t dim() const { return mean[0].size(); }
  double LogPosterior(std::span<const double> x, int label) const;
  // +1 when the ddos log-posterior is strictly larger, else -1.
  int Predict(std::span<const double> x) const;

  friend bool operator==(const NaiveBayesModel&,
                         const NaiveBayesModel&) = default;
};

// Weighted maximum-likelihood fit. Weights are normalized internally, so
// scaling them (or duplicating every sample) leaves the model unchanged.
// Throws kMissingClass unless both classes have positive weight.
NaiveBayesModel TrainNaiveBayes(const Matrix& rows, std::span<const int> labels,
                                std::span<const double> weights,
                                double variance_floor = kDefaultVarianceFloor);

struct BoostedEnsemble {
  std::vector<NaiveBayesModel> learners;
  std::vector<double> alphas;

  // sum_t alpha_t * h_t(x)
  double Score(std::span<const double> x) const;
  // +1 iff Score(x) > threshold.
  int Predict(std::span<const double> x, double threshold = 0.0) const;

  friend bool operator==(const BoostedEnsemble&,
                         const BoostedEnsemble&) = default;
};

struct BoostingOptions {
  int rounds = 10;
  double variance_floor = kDefaultVarianceFloor;
};

struct BoostingRound {
  double weighted_error = 0.0;  // epsilon_t before clamping
  double alpha = 0.0;
  bool kept = false;
  // Unweighted training error of the ensemble after this round.
  double training_error = 0.0;
  // (1/m) * sum_i exp(sum_s alpha_s * [h_s(x_i) != y_i] - sum_s alpha_s / 2)
  // over the kept rounds: the weighted training error that the reweighting
  // minimizes. It bounds training_error from above and never increases.
  double weighted_training_error = 1.0;
};

struct BoostingResult {
  BoostedEnsemble ensemble;
  std::vector<BoostingRound> trace;
};

inline constexpr double kEpsilonClamp = 1e-10;

// Discrete two-class AdaBoost with naive Bayes weak learners trained on the
// current sample weights. Per round: epsilon = weighted error,
// alpha = 0.5*ln((1-eps)/eps) with eps clamped to [1e-10, 1-1e-10], then
// misclassified weights are multiplied by e^alpha and all weights
// renormalized. A round with eps >= 0.5 is discarded and stops
// training; a round with eps <= 1e-10 is kept and stops training.
BoostingResult AdaBoostTrain(const Matrix& rows, std::span<const int> labels,
                             const BoostingOptions& options = {});

struct Prediction {
  int label = kLegitimate;
  double score = 0.0;       // ensemble margin
  double confidence = 0.5;  // 1 / (1 + exp(-2 * score))
};

Prediction PredictVector(const BoostedEnsemble& ensemble,
                         std::span<const double> bow, double threshold = 0.0);

}  // namespace synids

#endif  // SYNIDS_CLASSIFIER_H_
