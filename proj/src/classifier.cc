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

#include "synids/classifier.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "synids/error.h"

namespace synids {
namespace {

int ClassIndex(int label) { return label > 0 ? 1 : 0; }

}  // namespace

double NaiveBayesModel::LogPosterior(std::span<const double> x,
                                     int label) const {
  const int c = ClassIndex(label);
  double lp = std::log(prior[c]);
  const auto& mu = mean[c];
  const auto& var = variance[c];
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double d = x[j] - mu[j];
    lp -= 0.5 * (std::log(2.0 * std::numbers::pi * var[j]) + d * d / var[j]);
  }
  return lp;
}

int NaiveBayesModel::Predict(std::span<const double> x) const {
  return LogPosterior(x, kDdos) > LogPosterior(x, kLegitimate) ? kDdos
                                                               : kLegitimate;
}

NaiveBayesModel TrainNaiveBayes(const Matrix& rows, std::span<const int> labels,
                                std::span<const double> weights,
                                double variance_floor) {
  const std::size_t m = rows.rows();
  const std::size_t dim = rows.cols();
  if (labels.size() != m || weights.size() != m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "labels/weights do not match the sample count");
  }
  std::array<double, 2> class_weight{};
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(weights[i] >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "negative sample weight");
    }
    class_weight[ClassIndex(labels[i])] += weights[i];
    total += weights[i];
  }
  if (!(class_weight[0] > 0.0) || !(class_weight[1] > 0.0)) {
    throw Error(ErrorCode::kMissingClass,
                "naive Bayes needs weighted samples of both classes");
  }

  NaiveBayesModel model;
  for (int c = 0; c < 2; ++c) {
    model.prior[c] = class_weight[c] / total;
    model.mean[c].assign(dim, 0.0);
    model.variance[c].assign(dim, 0.0);
  }
  for (std::size_t i = 0; i < m; ++i) {
    const int c = ClassIndex(labels[i]);
    const double w = weights[i] / class_weight[c];
    auto x = rows.row(i);
    for (std::size_t j = 0; j < dim; ++j) model.mean[c][j] += w * x[j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    const int c = ClassIndex(labels[i]);
    const double w = weights[i] / class_weight[c];
    auto x = rows.row(i);
    for (std::size_t j = 0; j < dim; ++j) {
      const double d = x[j] - model.mean[c][j];
      model.variance[c][j] += w * d * d;
    }
  }
  for (int c = 0; c < 2; ++c) {
    for (double& v : model.variance[c]) v = std::max(v, variance_floor);
  }
  return model;
}

double BoostedEnsemble::Score(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t t = 0; t < learners.size(); ++t) {
    s += alphas[t] * learners[t].Predict(x);
  }
  return s;
}

int BoostedEnsemble::Predict(std::span<const double> x,
                             double threshold) const {
  return Score(x) > threshold ? kDdos : kLegitimate;
}

BoostingResult AdaBoostTrain(const Matrix& rows, std::span<const int> labels,
                             const BoostingOptions& options) {
  const std::size_t m = rows.rows();
  if (labels.size() != m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "label count does not match the sample count");
  }
  if (options.rounds < 1) {
    throw Error(ErrorCode::kInvalidArgument, "boosting needs >= 1 round");
  }
  const bool has_pos =
      std::any_of(labels.begin(), labels.end(), [](int l) { return l > 0; });
  const bool has_neg =
      std::any_of(labels.begin(), labels.end(), [](int l) { return l <= 0; });
  if (!has_pos || !has_neg) {
    throw Error(ErrorCode::kMissingClass,
                "boosting needs samples of both classes");
  }

  BoostingResult result;
  std::vector<double> weights(m, 1.0 / static_cast<double>(m));
  std::vector<double> margin(m, 0.0);
  std::vector<double> missed(m, 0.0);  // sum of alphas of rounds that erred
  double alpha_sum = 0.0;
  std::vector<int> h(m);
  for (int t = 0; t < options.rounds; ++t) {
    NaiveBayesModel nb =
        TrainNaiveBayes(rows, labels, weights, options.variance_floor);
    double eps = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      h[i] = nb.Predict(rows.row(i));
      if (h[i] != (labels[i] > 0 ? kDdos : kLegitimate)) eps += weights[i];
    }
    BoostingRound round;
    round.weighted_error = eps;
    if (eps >= 0.5) {
      round.kept = false;
      if (!result.trace.empty()) {
        round.training_error = result.trace.back().training_error;
        round.weighted_training_error =
            result.trace.back().weighted_training_error;
      } else {
        round.training_error = 1.0;
      }
      result.trace.push_back(round);
      break;
    }
    const double clamped = std::clamp(eps, kEpsilonClamp, 1.0 - kEpsilonClamp);
    const double alpha = 0.5 * std::log((1.0 - clamped) / clamped);
    round.alpha = alpha;
    round.kept = true;

    std::size_t wrong = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const int y = labels[i] > 0 ? kDdos : kLegitimate;
      margin[i] += alpha * h[i];
      const int ensemble = margin[i] > 0.0 ? kDdos : kLegitimate;
      wrong += ensemble != y;
      if (h[i] != y) {
        weights[i] *= std::exp(alpha);
        missed[i] += alpha;
      }
      sum += weights[i];
    }
    for (double& w : weights) w /= sum;
    alpha_sum += alpha;
    double loss = 0.0;
    for (double s : missed) loss += std::exp(s - 0.5 * alpha_sum);
    round.training_error = static_cast<double>(wrong) / static_cast<double>(m);
    round.weighted_training_error = loss / static_cast<double>(m);

    result.ensemble.learners.push_back(std::move(nb));
    result.ensemble.alphas.push_back(alpha);
    result.trace.push_back(round);
    if (eps <= kEpsilonClamp) break;
  }
  return result;
}

Prediction PredictVector(const BoostedEnsemble& ensemble,
                         std::span<const double> bow, double threshold) {
  if (!ensemble.learners.empty() && bow.size() != ensemble.learners[0].dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector has " + std::to_string(bow.size()) +
                    " components, model expects " +
                    std::to_string(ensemble.learners[0].dim()));
  }
  Prediction p;
  p.score = ensemble.Score(bow);
  p.label = p.score > threshold ? kDdos : kLegitimate;
  p.confidence = 1.0 / (1.0 + std::exp(-2.0 * p.score));
  return p;
}

}  // namespace synids
