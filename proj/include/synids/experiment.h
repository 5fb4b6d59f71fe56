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

// Desk-scale train/test experiment: a small and a large training set and one
// held-out test set, all generated from seeded scenarios.

#ifndef SYNIDS_EXPERIMENT_H_
#define SYNIDS_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "synids/evaluation.h"
#include "synids/pipeline.h"
#include "synids/synth.h"

namespace synids {

struct DatasetSize {
  std::size_t legitimate = 0;
  std::size_t ddos = 0;
};

// Full-size frame counts; the experiment multiplies them by its scale.
inline constexpr DatasetSize kSmallTrainingSet{1500, 500};
inline constexpr DatasetSize kLargeTrainingSet{3000, 1500};
inline constexpr DatasetSize kTestSet{1000, 1000};

DatasetSize Scaled(DatasetSize base, double scale);

struct ExperimentOptions {
  double scale = 0.1;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::size_t clusters = 1000;
  int rounds = 10;
  RenderOptions render;
  SiftOptions sift;
  // Attack scenarios cycle through these request rates (packets/s).
  std::vector<double> attack_rates = {15.90, 24.45, 31.20};
  std::vector<BackgroundProfile> background = DefaultBackgroundProfiles();
};

// `count` frames of one class. Legitimate frames come from one
// background-only scenario; ddos frames are split evenly across one scenario
// per attack rate, each under attack for its whole duration.
std::vector<LabeledDescriptors> GenerateFrameSet(
    std::size_t count, bool attack, std::uint64_t seed,
    const ExperimentOptions& options);

struct ExperimentRun {
  std::string name;
  DatasetSize train;
  std::uint64_t descriptors = 0;
  std::size_t learners = 0;
  EvalReport eval;
};

struct ExperimentReport {
  double scale = 0.0;
  std::uint64_t seed = 0;
  std::size_t clusters = 0;
  int rounds = 0;
  DatasetSize test;
  std::vector<ExperimentRun> runs;  // "train-small", then "train-large"
};

ExperimentReport RunExperiment(const ExperimentOptions& options);

std::string ExperimentJson(const ExperimentReport& report);
std::string ExperimentText(const ExperimentReport& report);

}  // namespace synids

#endif  // SYNIDS_EXPERIMENT_H_
