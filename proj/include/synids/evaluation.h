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

#ifndef SYNIDS_EVALUATION_H_
#define SYNIDS_EVALUATION_H_

#include <cstdint>
#include <span>
#include <string>

namespace synids {

struct Confusion {
  std::uint64_t tp = 0;  // ddos frames predicted ddos
  std::uint64_t fn = 0;  // ddos frames predicted legitimate
  std::uint64_t fp = 0;  // legitimate frames predicted ddos
  std::uint64_t tn = 0;  // legitimate frames predicted legitimate

  std::uint64_t total() const { return tp + fn + fp + tn; }
  friend bool operator==(const Confusion&, const Confusion&) = default;
};

// Tallies paired truth/predicted labels (+1 ddos, -1 legitimate).
Confusion Tally(std::span<const int> truth, std::span<const int> predicted);

// Detection rate TP/(TP+FN). Throws kEmptyClass when there are no ddos frames.
double DetectionRate(const Confusion& c);
// False positive rate FP/(FP+TN). Throws kEmptyClass without legitimate frames.
double FalsePositiveRate(const Confusion& c);
// Complex rate (dr + (1 - fpr)) / 2.
double ComplexRate(double dr, double fpr);

struct EvalReport {
  Confusion counts;
  double dr = 0.0;
  double fpr = 0.0;
  double cr = 0.0;
  std::string dataset;         // free-form descriptor
  std::string model_metadata;  // key=value lines
};

EvalReport MakeReport(const Confusion& counts, std::string dataset = {},
                      std::string model_metadata = {});

std::string ReportText(const EvalReport& report);
std::string ReportJson(const EvalReport& report);

}  // namespace synids

#endif  // SYNIDS_EVALUATION_H_
