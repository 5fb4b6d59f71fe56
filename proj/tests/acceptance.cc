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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>
#include <unistd.h>

#include "oracles.h"
#include "synids/capture.h"
#include "synids/classifier.h"
#include "synids/error.h"
#include "synids/evaluation.h"
#include "synids/experiment.h"
#include "synids/file_io.h"
#include "synids/hull.h"
#include "synids/model.h"
#include "synids/parallel.h"
#include "synids/pipeline.h"
#include "synids/projection.h"
#include "synids/sift.h"
#include "synids/synth.h"
#include "synids/vocabulary.h"

namespace synids {
namespace {

// Outcome of one criterion: pass flag plus a short measurement summary.
struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "failed: " + what;
    }
  }
  void Note(const std::string& text) {
    if (!detail.empty()) detail += "; ";
    detail += text;
  }
};

std::string Fmt(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

Outcome ComplexRateArithmetic() {
  Outcome o;
  const EvalReport r = MakeReport({984, 16, 43, 957});
  o.Require(std::abs(r.cr - 0.9705) <= 1e-12, "CR(984,16,43,957) = 0.9705");
  o.Require(std::abs(ComplexRate(0.095, 0.032) - 0.5315) <= 1e-12,
            "CR(0.095, 0.032) = 0.5315");
  o.Note("CR=" + Fmt("%.15g", r.cr) + ", " + Fmt("%.15g", ComplexRate(0.095, 0.032)));
  return o;
}

Outcome ProjectionAgainstLeastSquares() {
  Outcome o;
  std::mt19937_64 g(20260101);
  std::uniform_real_distribution<double> dir(-1, 1), pt(0, 1);
  double worst = 0;
  int cases = 0, redraws = 0;
  while (cases < 1000) {
    const std::size_t n = 2 + g() % 15;
    std::vector<double> a(n), b(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = dir(g);
      b[i] = dir(g);
      x[i] = pt(g);
    }
    ProjectionBasis basis;
    try {
      basis = MakeBasis(a, b);
    } catch (const Error&) {
      ++redraws;
      continue;
    }
    const PlanePoint p = ProjectPoint(x, basis);
    const auto [u, v] = oracle::LeastSquaresProjection(x, basis.a, basis.b);
    worst = std::max({worst, std::abs(p.u - u), std::abs(p.v - v)});
    ++cases;
  }
  o.Require(worst <= 1e-9, "max |error| <= 1e-9");
  o.Note(Fmt("1000 cases, max error %.2e", worst) +
         (redraws ? ", " + std::to_string(redraws) + " degenerate redraws" : ""));
  return o;
}

Outcome HullAgainstEdgeOracle() {
  Outcome o;
  std::mt19937_64 g(7);
  int mismatches = 0, outside = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(g() % 30);
    std::uniform_real_distribution<double> d(-10, 10);
    std::vector<PlanePoint> pts;
    std::vector<oracle::Pt> opts;
    for (int i = 0; i < n; ++i) {
      double u = d(g), v = d(g);
      if (trial % 3 == 0) {  // lattice points: duplicates and collinear runs
        u = std::round(u / 4);
        v = std::round(v / 4);
      }
      pts.push_back({u, v});
      opts.push_back({u, v});
    }
    const auto hull = ConvexHull(pts);
    std::vector<oracle::Pt> got;
    for (const PlanePoint& p : hull) got.push_back({p.u, p.v});
    std::sort(got.begin(), got.end());
    if (got != oracle::HullVertexSet(opts)) ++mismatches;
    for (const PlanePoint& p : pts) outside += !HullContains(hull, p);
  }
  o.Require(mismatches == 0, "vertex sets equal");
  o.Require(outside == 0, "all input points contained");
  o.Note("200 sets, " + std::to_string(mismatches) + " mismatches, " +
         std::to_string(outside) + " uncontained points");
  return o;
}

Outcome TfIdfToyCorpus() {
  Outcome o;
  const std::vector<std::vector<double>> counts = {
      {2, 1, 0, 0}, {1, 0, 3, 0}, {4, 0, 0, 1}, {1, 2, 2, 0}, {3, 0, 0, 0}};
  Matrix m(5, 4);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = counts[i][j];
  }
  const Matrix w = TfIdfWeight(m, ComputeIdf(m));
  const auto want = oracle::TfIdf(counts);
  double worst = 0;
  bool zero_column = true;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 4; ++j) worst = std::max(worst, std::abs(w(i, j) - want[i][j]));
    zero_column &= w(i, 0) == 0.0;
  }
  o.Require(worst <= 1e-12, "weights within 1e-12");
  o.Require(zero_column, "ubiquitous cluster column exactly 0");
  o.Note(Fmt("max error %.2e", worst));
  return o;
}

Matrix Blobs(std::mt19937_64& g, std::size_t n, std::size_t dim) {
  std::normal_distribution<double> d(0, 1);
  Matrix m(n, dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = d(g) + 3.0 * static_cast<double>(i % 4);
  }
  return m;
}

Outcome KMeansProperties() {
  Outcome o;
  std::mt19937_64 g(99);
  int increases = 0, not_optimal = 0;
  for (int inst = 0; inst < 20; ++inst) {
    const std::size_t n = 30 + 8 * static_cast<std::size_t>(inst);  // <= 182
    const std::size_t dim = 2 + inst % 6;
    const Matrix pts = Blobs(g, n, dim);
    KMeansOptions opt;
    opt.k = 2 + inst % 9;
    opt.seed = 1000 + inst;
    opt.max_iterations = 1000;
    const KMeansResult r = KMeans(pts, opt);
    for (std::size_t t = 1; t < r.objective_trace.size(); ++t) {
      increases += r.objective_trace[t] > r.objective_trace[t - 1];
    }
    // Local optimum: no point prefers another centroid and every centroid
    // is the mean of its members.
    bool optimal = r.converged;
    std::vector<std::vector<double>> sums(opt.k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> sizes(opt.k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const double own = SquaredDistance(pts.row(i), r.centroids.row(r.assignment[i]));
      for (std::size_t c = 0; c < opt.k; ++c) {
        optimal &= own <= SquaredDistance(pts.row(i), r.centroids.row(c)) + 1e-12;
      }
      ++sizes[r.assignment[i]];
      for (std::size_t j = 0; j < dim; ++j) sums[r.assignment[i]][j] += pts(i, j);
    }
    for (std::size_t c = 0; c < opt.k; ++c) {
      optimal &= sizes[c] > 0;
      for (std::size_t j = 0; j < dim && sizes[c] > 0; ++j) {
        optimal &= std::abs(r.centroids(c, j) - sums[c][j] / sizes[c]) <= 1e-9;
      }
    }
    not_optimal += !optimal;
  }
  const Matrix pts = Blobs(g, 123, 7);
  KMeansOptions one;
  one.k = 1;
  const KMeansResult r1 = KMeans(pts, one);
  double worst = 0;
  for (std::size_t j = 0; j < 7; ++j) {
    long double s = 0;
    for (std::size_t i = 0; i < 123; ++i) s += pts(i, j);
    worst = std::max(worst, std::abs(r1.centroids(0, j) - static_cast<double>(s / 123)));
  }
  o.Require(increases == 0, "objective non-increasing");
  o.Require(not_optimal == 0, "local optimum reached");
  o.Require(worst <= 1e-12, "k=1 centroid equals the mean");
  o.Note("20 instances, " + std::to_string(increases) + " increases, " +
         std::to_string(not_optimal) + " non-optimal; " + Fmt("k=1 error %.2e", worst));
  return o;
}

std::vector<LabeledDescriptors> DeterminismCorpus() {
  ScenarioSpec s;
  s.seed = 17;
  s.duration_s = 120;
  s.attack.enabled = true;
  s.attack.start_s = 60;
  s.attack.end_s = 120;
  const GeneratedTraffic g = Generate(s);
  return TrafficDescriptors(g.packets, g.truth, RenderOptions{}, SiftOptions{}, 1);
}

Outcome Determinism() {
  Outcome o;
  const auto frames = DeterminismCorpus();
  TrainOptions opt;
  opt.clusters = 100;
  opt.seed = 42;
  opt.jobs = 1;
  const TrainedModel a = TrainFromDescriptors(frames, RenderOptions{}, SiftOptions{}, opt).model;
  const TrainedModel b = TrainFromDescriptors(frames, RenderOptions{}, SiftOptions{}, opt).model;
  opt.jobs = 8;
  const TrainedModel c = TrainFromDescriptors(frames, RenderOptions{}, SiftOptions{}, opt).model;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("synids_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  SaveModel(a, dir / "a.bin");
  SaveModel(b, dir / "b.bin");
  SaveModel(c, dir / "c.bin");
  const auto bytes_a = ReadFileBytes(dir / "a.bin");
  o.Require(bytes_a == ReadFileBytes(dir / "b.bin"), "two runs give identical files");
  o.Require(bytes_a == ReadFileBytes(dir / "c.bin"), "jobs 1 and 8 give identical files");
  const TrainedModel loaded = LoadModel(dir / "a.bin");
  std::filesystem::remove_all(dir);

  // Bag-of-words vectors of random descriptor subsets of the corpus frames.
  std::mt19937_64 g(5);
  std::vector<std::vector<double>> vectors;
  while (vectors.size() < 1000) {
    const Matrix& src = frames[g() % frames.size()].descriptors;
    Matrix subset(0, kDescriptorDim);
    for (std::size_t i = 0; i < src.rows(); ++i) {
      if (g() % 2) subset.AppendRow(src.row(i));
    }
    vectors.push_back(BowVector(subset, a.vocabulary));
  }
  auto predict_all = [&](const TrainedModel& m, int jobs) {
    std::vector<Prediction> out(vectors.size());
    ParallelFor(vectors.size(), jobs, [&](std::size_t i) { out[i] = Predict(m, vectors[i]); });
    return out;
  };
  const auto p1 = predict_all(a, 1), p1b = predict_all(b, 1), p8 = predict_all(loaded, 8);
  std::size_t differ = 0, ddos = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    differ += p1[i].label != p1b[i].label || p1[i].score != p1b[i].score ||
              p1[i].label != p8[i].label || p1[i].score != p8[i].score ||
              p1[i].confidence != p8[i].confidence;
    ddos += p1[i].label == kDdos;
  }
  o.Require(differ == 0, "1000 predictions identical");
  o.Note(std::to_string(bytes_a.size()) + "-byte model, " + std::to_string(differ) +
         " differing predictions (" + std::to_string(ddos) + " ddos)");
  return o;
}

Outcome EndToEnd() {
  Outcome o;
  ExperimentOptions opt;
  opt.scale = 0.1;
  opt.seed = 1;
  const ExperimentReport r = RunExperiment(opt);
  const ExperimentRun& small = r.runs.at(0);
  const ExperimentRun& large = r.runs.at(1);
  o.Require(small.train.legitimate == 150 && small.train.ddos == 50, "small set 150/50");
  o.Require(large.train.legitimate == 300 && large.train.ddos == 150, "large set 300/150");
  o.Require(r.test.legitimate == 100 && r.test.ddos == 100, "test set 100/100");
  o.Require(large.eval.dr >= small.eval.dr, "DR(large) >= DR(small)");
  o.Require(large.eval.cr >= 0.85, "CR(large) >= 0.85");
  o.Note(Fmt("small DR %.3f", small.eval.dr) + Fmt(" FPR %.3f", small.eval.fpr) +
         Fmt(" CR %.3f", small.eval.cr) + Fmt(", large DR %.3f", large.eval.dr) +
         Fmt(" FPR %.3f", large.eval.fpr) + Fmt(" CR %.3f", large.eval.cr));
  return o;
}

Outcome CaptureRoundTrip() {
  Outcome o;
  std::size_t total = 0, mismatched = 0, truncation_failures = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ScenarioSpec s;
    s.seed = seed;
    s.duration_s = 30;
    s.attack.enabled = seed % 2 == 0;
    s.attack.start_s = 10;
    s.attack.end_s = 30;
    const GeneratedTraffic g = Generate(s);
    const auto bytes = EncodeCapture(g.packets);
    const CaptureParseResult r = ParseCapture(bytes);
    total += g.packets.size();
    if (r.error || r.packets.size() != g.packets.size()) {
      ++mismatched;
      continue;
    }
    for (std::size_t i = 0; i < g.packets.size(); ++i) {
      PacketMeta want = g.packets[i], got = r.packets[i];
      want.session_id = got.session_id = 0;  // recomputed by session grouping
      mismatched += !(want == got);
    }
    // Cut inside the last record: everything before it survives.
    auto cut = bytes;
    cut.resize(cut.size() - 1 - seed);
    const CaptureParseResult t = ParseCapture(cut);
    const bool ok = t.error == ErrorCode::kTruncatedRecord &&
                    t.packets.size() == g.packets.size() - 1 &&
                    std::equal(t.packets.begin(), t.packets.end(), r.packets.begin());
    truncation_failures += !ok;
  }
  o.Require(mismatched == 0, "records round-trip");
  o.Require(truncation_failures == 0, "truncated files report TruncatedRecord with partial results");
  o.Note(std::to_string(total) + " packets over 10 scenarios, " +
         std::to_string(mismatched) + " mismatches, " +
         std::to_string(truncation_failures) + " truncation failures");
  return o;
}

GrayImage SquareFixture() {
  GrayImage g(128, 128, 0);
  for (int y = 40; y < 88; ++y) {
    for (int x = 40; x < 88; ++x) g.at(x, y) = 255;
  }
  return g;
}

Outcome DescriptorContracts() {
  Outcome o;
  // Real frames plus the square fixture.
  ScenarioSpec s;
  s.seed = 23;
  s.duration_s = 30;
  s.attack.enabled = true;
  s.attack.start_s = 15;
  s.attack.end_s = 30;
  const GeneratedTraffic g = Generate(s);
  auto frames = TrafficDescriptors(g.packets, g.truth, RenderOptions{}, SiftOptions{}, 1);
  LabeledDescriptors fixture;
  fixture.descriptors = DescriptorMatrix(ExtractDescriptors(SquareFixture()));
  frames.push_back(fixture);
  std::size_t count = 0, violations = 0;
  for (const auto& f : frames) {
    for (std::size_t i = 0; i < f.descriptors.rows(); ++i) {
      const auto row = f.descriptors.row(i);
      double n2 = 0;
      bool ok = row.size() == kDescriptorDim;
      for (double v : row) {
        n2 += v * v;
        ok &= v <= 0.2 + 1e-6;
      }
      ok &= std::abs(std::sqrt(n2) - 1.0) <= 1e-6;
      violations += !ok;
      ++count;
    }
  }
  std::size_t uniform = 0;
  for (std::uint8_t level : {0, 77, 255}) uniform += DetectKeypoints(GrayImage(1000, 1000, level)).size();

  const GrayImage a = SquareFixture();
  GrayImage up(256, 256);
  for (int y = 0; y < 256; ++y) {
    for (int x = 0; x < 256; ++x) up.at(x, y) = a.at(x / 2, y / 2);
  }
  const auto ka = DetectKeypoints(a), kb = DetectKeypoints(up);
  std::size_t recurring = 0;
  for (const Keypoint& p : ka) {
    for (const Keypoint& q : kb) {
      // Upscaled pixel centre x maps back to (x + 0.5) / 2 - 0.5.
      if (std::hypot((q.x + 0.5) / 2 - 0.5 - p.x, (q.y + 0.5) / 2 - 0.5 - p.y) <= p.scale) {
        ++recurring;
        break;
      }
    }
  }
  const double rate = ka.empty() ? 0.0 : double(recurring) / ka.size();
  o.Require(count > 0 && violations == 0, "length 128, unit norm, components <= 0.2");
  o.Require(uniform == 0, "uniform image yields no keypoints");
  o.Require(rate >= 0.6, "2x upscale recurrence >= 60%");
  o.Note(std::to_string(count) + " descriptors, " + std::to_string(violations) +
         " violations; recurrence " + std::to_string(recurring) + "/" +
         std::to_string(ka.size()));
  return o;
}

// Noisy two-class data: ddos rows are shifted and more spread out.
void NoisyCorpus(std::uint64_t seed, std::size_t m, std::size_t dim,
                 std::vector<std::vector<double>>& x, std::vector<int>& y) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> d(0, 1);
  x.assign(m, std::vector<double>(dim));
  y.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    y[i] = i % 2 == 0 ? kDdos : kLegitimate;
    for (std::size_t j = 0; j < dim; ++j) {
      x[i][j] = (y[i] > 0 ? 1.8 : 1.0) * d(g) + (y[i] > 0 ? 0.7 : 0.0);
    }
  }
}

Outcome BoostingTrace() {
  Outcome o;
  double worst = 0;
  int rounds = 0, increases = 0, shape = 0, zero_one_increases = 0;
  // The 40-point fixture first, then nine larger corpora.
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t m = seed == 1 ? 40 : 40 + 6 * seed, dim = 1 + seed % 4;
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    NoisyCorpus(seed, m, dim, x, y);
    Matrix rows(m, dim);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < dim; ++j) rows(i, j) = x[i][j];
    }
    const BoostingResult r = AdaBoostTrain(rows, y);
    const auto ref = oracle::ScalarAdaBoost(x, y, 10);
    if (r.trace.size() != ref.size()) {
      ++shape;
      continue;
    }
    for (std::size_t t = 0; t < ref.size(); ++t) {
      worst = std::max({worst, std::abs(r.trace[t].weighted_error - ref[t].eps),
                        std::abs(r.trace[t].alpha - ref[t].alpha),
                        std::abs(r.trace[t].weighted_training_error - ref[t].weighted_error)});
      shape += r.trace[t].kept != ref[t].kept;
      if (t > 0) {
        increases += r.trace[t].weighted_training_error >
                     r.trace[t - 1].weighted_training_error;
        zero_one_increases += r.trace[t].training_error > r.trace[t - 1].training_error;
      }
      ++rounds;
    }
  }
  o.Require(shape == 0 && worst <= 1e-9, "per-round epsilon and alpha within 1e-9");
  o.Require(increases == 0, "weighted training error non-increasing");
  o.Note(std::to_string(rounds) + " rounds over 10 corpora, " + Fmt("max error %.2e", worst) +
         ", " + std::to_string(increases) + " weighted-error increases (" +
         std::to_string(zero_one_increases) + " rises in unweighted 0/1 error)");
  return o;
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace synids

int main() {
  using namespace synids;
  spdlog::set_level(spdlog::level::warn);
  const std::vector<Criterion> criteria = {
      {"complex-rate arithmetic", 1, ComplexRateArithmetic},
      {"projection matches least squares", 5, ProjectionAgainstLeastSquares},
      {"convex hull matches edge oracle", 10, HullAgainstEdgeOracle},
      {"tf-idf toy corpus", 0, TfIdfToyCorpus},
      {"k-means properties", 0, KMeansProperties},
      {"training and prediction determinism", 0, Determinism},
      {"end-to-end experiment at scale 0.1", 600, EndToEnd},
      {"capture round-trip and truncation", 0, CaptureRoundTrip},
      {"descriptor contracts", 0, DescriptorContracts},
      {"boosting trace", 0, BoostingTrace},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.Note(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs >= c.budget_s) {
      o.pass = false;
      o.Note(Fmt("over the %.0f s budget", c.budget_s));
    }
    failures += !o.pass;
    std::printf("%s [%zu] %s (%.3f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, c.name,
                secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
