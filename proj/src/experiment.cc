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

#include "synids/experiment.h"

#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "synids/error.h"
#include "synids/rng.h"

namespace synids {

DatasetSize Scaled(DatasetSize base, double scale) {
  auto s = [scale](std::size_t n) {
    return static_cast<std::size_t>(std::llround(static_cast<double>(n) * scale));
  };
  return {s(base.legitimate), s(base.ddos)};
}

std::vector<LabeledDescriptors> GenerateFrameSet(
    std::size_t count, bool attack, std::uint64_t seed,
    const ExperimentOptions& options) {
  std::vector<LabeledDescriptors> out;
  const std::size_t parts = attack ? options.attack_rates.size() : 1;
  if (parts == 0) {
    throw Error(ErrorCode::kInvalidArgument, "no attack rates configured");
  }
  for (std::size_t p = 0; p < parts; ++p) {
    const std::size_t n = count / parts + (p < count % parts ? 1 : 0);
    if (n == 0) continue;
    ScenarioSpec spec;
    spec.seed = DeriveSeed(seed, "scenario." + std::to_string(p));
    spec.background = options.background;
    // One spare window so the first n windows are all full.
    spec.duration_s = static_cast<double>(n + 1) * options.render.window_s;
    if (attack) {
      spec.attack.enabled = true;
      spec.attack.start_s = 0.0;
      spec.attack.end_s = spec.duration_s;
      spec.attack.request_rate_pps = options.attack_rates[p];
    }
    const GeneratedTraffic traffic = Generate(spec);
    std::vector<LabeledDescriptors> frames =
        TrafficDescriptors(traffic.packets, traffic.truth, options.render,
                           options.sift, options.jobs, n);
    if (frames.size() != n) {
      throw Error(ErrorCode::kInsufficientData,
                  "scenario produced " + std::to_string(frames.size()) +
                      " frames, wanted " + std::to_string(n));
    }
    for (LabeledDescriptors& f : frames) out.push_back(std::move(f));
  }
  return out;
}

namespace {

std::vector<LabeledDescriptors> MakeSet(DatasetSize size, std::uint64_t seed,
                                        const std::string& name,
                                        const ExperimentOptions& options) {
  spdlog::info("generating {}: {} legitimate + {} ddos frames", name,
               size.legitimate, size.ddos);
  std::vector<LabeledDescriptors> set = GenerateFrameSet(
      size.legitimate, false, DeriveSeed(seed, name + ".legitimate"), options);
  for (LabeledDescriptors& f :
       GenerateFrameSet(size.ddos, true, DeriveSeed(seed, name + ".ddos"),
                        options)) {
    set.push_back(std::move(f));
  }
  return set;
}

nlohmann::ordered_json EvalJson(const EvalReport& e) {
  return {{"tp", e.counts.tp}, {"fn", e.counts.fn}, {"fp", e.counts.fp},
          {"tn", e.counts.tn}, {"dr", e.dr},        {"fpr", e.fpr},
          {"cr", e.cr}};
}

}  // namespace

ExperimentReport RunExperiment(const ExperimentOptions& options) {
  if (!(options.scale > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "scale must be positive");
  }
  ExperimentReport report;
  report.scale = options.scale;
  report.seed = options.seed;
  report.clusters = options.clusters;
  report.rounds = options.rounds;
  report.test = Scaled(kTestSet, options.scale);

  const std::vector<LabeledDescriptors> test =
      MakeSet(report.test, options.seed, "test", options);
  const struct {
    const char* name;
    DatasetSize size;
  } sets[] = {{"train-small", Scaled(kSmallTrainingSet, options.scale)},
              {"train-large", Scaled(kLargeTrainingSet, options.scale)}};
  for (const auto& s : sets) {
    const std::vector<LabeledDescriptors> train =
        MakeSet(s.size, options.seed, s.name, options);
    TrainOptions to;
    to.clusters = options.clusters;
    to.rounds = options.rounds;
    to.seed = DeriveSeed(options.seed, std::string(s.name) + ".model");
    to.jobs = options.jobs;
    const TrainReport trained =
        TrainFromDescriptors(train, options.render, options.sift, to);
    const std::vector<Prediction> predictions =
        PredictDescriptors(trained.model, test, options.jobs);

    ExperimentRun run;
    run.name = s.name;
    run.train = s.size;
    run.descriptors = trained.model.metadata.descriptor_count;
    run.learners = trained.model.ensemble.learners.size();
    run.eval = MakeReport(ConfusionOf(test, predictions), "test",
                          MetadataText(trained.model));
    spdlog::info("{}: DR {:.4f} FPR {:.4f} CR {:.4f}", run.name, run.eval.dr,
                 run.eval.fpr, run.eval.cr);
    report.runs.push_back(std::move(run));
  }
  return report;
}

std::string ExperimentJson(const ExperimentReport& r) {
  nlohmann::ordered_json j;
  j["scale"] = r.scale;
  j["seed"] = r.seed;
  j["clusters"] = r.clusters;
  j["rounds"] = r.rounds;
  j["test"] = {{"legitimate", r.test.legitimate}, {"ddos", r.test.ddos}};
  j["runs"] = nlohmann::json::array();
  for (const ExperimentRun& run : r.runs) {
    j["runs"].push_back({{"name", run.name},
                         {"train_legitimate", run.train.legitimate},
                         {"train_ddos", run.train.ddos},
                         {"descriptors", run.descriptors},
                         {"learners", run.learners},
                         {"eval", EvalJson(run.eval)}});
  }
  return j.dump(2) + "\n";
}

std::string ExperimentText(const ExperimentReport& r) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "scale %.3g  seed %llu  k %zu  T %d  test %zu legitimate / "
                "%zu ddos\n",
                r.scale, static_cast<unsigned long long>(r.seed), r.clusters,
                r.rounds, r.test.legitimate, r.test.ddos);
  out += buf;
  out += "set            train(L/D)   TP   FN   FP   TN      DR     FPR      CR\n";
  for (const ExperimentRun& run : r.runs) {
    const Confusion& c = run.eval.counts;
    std::snprintf(buf, sizeof buf,
                  "%-13s %5zu/%-5zu %4llu %4llu %4llu %4llu  %6.4f  %6.4f  "
                  "%6.4f\n",
                  run.name.c_str(), run.train.legitimate, run.train.ddos,
                  static_cast<unsigned long long>(c.tp),
                  static_cast<unsigned long long>(c.fn),
                  static_cast<unsigned long long>(c.fp),
                  static_cast<unsigned long long>(c.tn), run.eval.dr,
                  run.eval.fpr, run.eval.cr);
    out += buf;
  }
  return out;
}

}  // namespace synids
