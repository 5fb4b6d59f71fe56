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

#include "synids/evaluation.h"

#include <cstdio>

#include "json.hpp"

#include "synids/error.h"

namespace synids {

Confusion Tally(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "label lists differ in length");
  }
  Confusion c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool attack = truth[i] > 0;
    const bool alarm = predicted[i] > 0;
    if (attack) {
      alarm ? ++c.tp : ++c.fn;
    } else {
      alarm ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

double DetectionRate(const Confusion& c) {
  if (c.tp + c.fn == 0) {
    throw Error(ErrorCode::kEmptyClass, "no ddos frames in the evaluation set");
  }
  return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
}

double FalsePositiveRate(const Confusion& c) {
  if (c.fp + c.tn == 0) {
    throw Error(ErrorCode::kEmptyClass,
                "no legitimate frames in the evaluation set");
  }
  return static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn);
}

double ComplexRate(double dr, double fpr) { return (dr + (1.0 - fpr)) / 2.0; }

EvalReport MakeReport(const Confusion& counts, std::string dataset,
                      std::string model_metadata) {
  EvalReport r;
  r.counts = counts;
  r.dr = DetectionRate(counts);
  r.fpr = FalsePositiveRate(counts);
  r.cr = ComplexRate(r.dr, r.fpr);
  r.dataset = std::move(dataset);
  r.model_metadata = std::move(model_metadata);
  return r;
}

std::string ReportText(const EvalReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "frames: %llu (ddos %llu, legitimate %llu)\n"
                "TP %llu  FN %llu  FP %llu  TN %llu\n"
                "DR  %.4f\nFPR %.4f\nCR  %.4f\n",
                static_cast<unsigned long long>(r.counts.total()),
                static_cast<unsigned long long>(r.counts.tp + r.counts.fn),
                static_cast<unsigned long long>(r.counts.fp + r.counts.tn),
                static_cast<unsigned long long>(r.counts.tp),
                static_cast<unsigned long long>(r.counts.fn),
                static_cast<unsigned long long>(r.counts.fp),
                static_cast<unsigned long long>(r.counts.tn), r.dr, r.fpr,
                r.cr);
  std::string out;
  if (!r.dataset.empty()) out += "dataset: " + r.dataset + "\n";
  return out + buf;
}

std::string ReportJson(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["dataset"] = r.dataset;
  j["counts"] = {{"tp", r.counts.tp},
                 {"fn", r.counts.fn},
                 {"fp", r.counts.fp},
                 {"tn", r.counts.tn}};
  j["dr"] = r.dr;
  j["fpr"] = r.fpr;
  j["cr"] = r.cr;
  j["model_metadata"] = r.model_metadata;
  return j.dump(2) + "\n";
}

}  // namespace synids
