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

#include "json.hpp"
#include "synids/error.h"
#include "synids/evaluation.h"

namespace synids {
namespace {

TEST(EvaluationTest, WorkedExamples) {
  const Confusion c{984, 16, 43, 957};
  const EvalReport r = MakeReport(c);
  EXPECT_NEAR(r.dr, 0.984, 1e-12);
  EXPECT_NEAR(r.fpr, 0.043, 1e-12);
  EXPECT_NEAR(r.cr, 0.9705, 1e-12);
  EXPECT_NEAR(ComplexRate(0.095, 0.032), 0.5315, 1e-12);
  EXPECT_EQ(ComplexRate(1.0, 0.0), 1.0);
  EXPECT_EQ(ComplexRate(0.0, 1.0), 0.0);
}

TEST(EvaluationTest, TallyPairsLabels) {
  const std::vector<int> truth = {1, 1, 1, -1, -1};
  const std::vector<int> pred = {1, -1, 1, 1, -1};
  EXPECT_EQ(Tally(truth, pred), (Confusion{2, 1, 1, 1}));
  const std::vector<int> short_pred = {1};
  EXPECT_THROW(Tally(truth, short_pred), Error);
}

TEST(EvaluationTest, MissingClassIsEmptyClass) {
  try {
    DetectionRate(Confusion{0, 0, 3, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyClass);
    EXPECT_EQ(ExitCodeFor(e.code()), 2);
  }
  EXPECT_THROW(FalsePositiveRate(Confusion{3, 4, 0, 0}), Error);
  EXPECT_THROW(MakeReport(Confusion{}), Error);
}

TEST(EvaluationTest, JsonAndTextReports) {
  const EvalReport r = MakeReport({984, 16, 43, 957}, "test set", "k=1000\n");
  const auto j = nlohmann::json::parse(ReportJson(r));
  EXPECT_EQ(j["counts"]["tp"], 984);
  EXPECT_EQ(j["counts"]["tn"], 957);
  EXPECT_NEAR(j["cr"].get<double>(), 0.9705, 1e-12);
  EXPECT_EQ(j["dataset"], "test set");
  const std::string text = ReportText(r);
  EXPECT_NE(text.find("0.9705"), std::string::npos);
}

TEST(ErrorTest, ExitCodes) {
  EXPECT_EQ(ExitCodeFor(ErrorCode::kMissingClass), 2);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kEmptyInput), 2);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kInsufficientData), 3);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kFormatVersionMismatch), 4);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kChecksumMismatch), 4);
  EXPECT_EQ(ExitCodeFor(ErrorCode::kFileError), 1);
}

}  // namespace
}  // namespace synids
