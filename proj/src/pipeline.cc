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

#include "synids/pipeline.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "synids/error.h"
#include "synids/file_io.h"
#include "synids/parallel.h"
#include "synids/rng.h"
#include "synids/sessions.h"

namespace synids {

CanvasCalibration CalibrationFor(const RenderOptions& options) {
  return MakeCalibration(CoordinateBounds(options.basis), options.width,
                         options.height);
}

std::vector<FrameRecord> RenderTraffic(std::span<const PacketMeta> packets,
                                       const std::vector<TimeInterval>* truth,
                                       const RenderOptions& options, int jobs,
                                       const FrameSink& sink,
                                       std::size_t max_frames) {
  const std::vector<Session> sessions = GroupSessions(packets);
  std::vector<FramePlan> plans =
      PlanFrames(sessions, WindowMicros(options.window_s));
  if (max_frames != 0 && plans.size() > max_frames) plans.resize(max_frames);
  const CanvasCalibration cal = CalibrationFor(options);

  std::vector<FrameRecord> records(plans.size());
  for (std::size_t i = 0; i < plans.size(); ++i) {
    FrameRecord& r = records[i];
    r.index = plans[i].index;
    r.window_start = plans[i].window_start;
    r.window_end = plans[i].window_end;
    r.sessions = plans[i].slices.size();
    r.label = truth == nullptr
                  ? FrameLabel::kUnlabeled
                  : LabelWindow(r.window_start, r.window_end, *truth);
  }
  ParallelFor(plans.size(), jobs, [&](std::size_t i) {
    SessionImageFrame frame = RenderFrame(plans[i], sessions, options.basis, cal);
    if (options.diff) {
      const RgbaImage previous =
          i == 0 ? RgbaImage(options.width, options.height)
                 : RenderFrame(plans[i - 1], sessions, options.basis, cal).pixels;
      sink(records[i], DiffImage(previous, frame.pixels));
    } else {
      sink(records[i], frame.pixels);
    }
  });
  return records;
}

Matrix DescriptorMatrix(const DescriptorSet& set) {
  Matrix m(set.size(), kDescriptorDim);
  for (std::size_t i = 0; i < set.size(); ++i) {
    std::copy(set.descriptors[i].begin(), set.descriptors[i].end(),
              m.row(i).begin());
  }
  return m;
}

Matrix ImageDescriptors(const RgbaImage& image, const SiftOptions& sift) {
  return DescriptorMatrix(ExtractDescriptors(ToGrayscale(image), sift));
}

std::vector<LabeledDescriptors> TrafficDescriptors(
    std::span<const PacketMeta> packets, const std::vector<TimeInterval>& truth,
    const RenderOptions& render, const SiftOptions& sift, int jobs,
    std::size_t max_frames) {
  std::vector<Matrix> descriptors;
  // Sized before rendering starts; each frame writes only its own slot.
  const std::vector<Session> sessions = GroupSessions(packets);
  descriptors.resize(
      PlanFrames(sessions, WindowMicros(render.window_s)).size());
  const auto records = RenderTraffic(
      packets, &truth, render, jobs,
      [&](const FrameRecord& r, const RgbaImage& image) {
        descriptors[r.index] = ImageDescriptors(image, sift);
      },
      max_frames);
  std::vector<LabeledDescriptors> out(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    out[i].frame = records[i];
    out[i].descriptors = std::move(descriptors[i]);
  }
  return out;
}

TrainReport TrainFromDescriptors(std::span<const LabeledDescriptors> frames,
                                 const RenderOptions& render,
                                 const SiftOptions& sift,
                                 const TrainOptions& options) {
  std::vector<int> labels;
  std::uint64_t legit = 0, ddos = 0;
  for (const LabeledDescriptors& f : frames) {
    switch (f.frame.label) {
      case FrameLabel::kLegitimate:
        ++legit;
        labels.push_back(kLegitimate);
        break;
      case FrameLabel::kDdos:
        ++ddos;
        labels.push_back(kDdos);
        break;
      case FrameLabel::kUnlabeled:
        throw Error(ErrorCode::kInvalidArgument,
                    "training frame " + std::to_string(f.frame.index) +
                        " has no label");
    }
  }
  if (legit == 0 || ddos == 0) {
    throw Error(ErrorCode::kMissingClass,
                "training needs legitimate and ddos frames (got " +
                    std::to_string(legit) + " and " + std::to_string(ddos) + ")");
  }

  Matrix pooled;
  std::vector<Matrix> per_image;
  per_image.reserve(frames.size());
  for (const LabeledDescriptors& f : frames) {
    for (std::size_t r = 0; r < f.descriptors.rows(); ++r) {
      pooled.AppendRow(f.descriptors.row(r));
    }
    per_image.push_back(f.descriptors);
  }
  spdlog::info("training on {} legitimate + {} ddos frames, {} descriptors",
               legit, ddos, pooled.rows());

  KMeansOptions km;
  km.k = options.clusters;
  km.seed = DeriveSeed(options.seed, "vocabulary");
  km.max_iterations = options.kmeans_max_iterations;
  km.jobs = options.jobs;
  KMeansResult clusters = KMeans(pooled, km);
  spdlog::info("k-means: k={} iterations={} converged={} objective={}",
               km.k, clusters.iterations, clusters.converged,
               clusters.objective_trace.back());

  TrainReport report;
  TrainedModel& model = report.model;
  model.vocabulary.centroids = std::move(clusters.centroids);
  model.vocabulary.seed = km.seed;
  const Matrix counts =
      BuildFrequencyMatrix(per_image, model.vocabulary.centroids, options.jobs);
  model.idf_log_base = options.idf_log_base;
  model.vocabulary.idf = ComputeIdf(counts, options.idf_log_base);
  const Matrix weighted = TfIdfWeight(counts, model.vocabulary.idf);

  BoostingOptions bo;
  bo.rounds = options.rounds;
  BoostingResult boosted = AdaBoostTrain(weighted, labels, bo);
  for (const BoostingRound& r : boosted.trace) {
    spdlog::debug(
        "boosting: eps={:.6f} alpha={:.6f} kept={} train_error={:.4f} "
        "weighted_train_error={:.6f}",
        r.weighted_error, r.alpha, r.kept, r.training_error,
        r.weighted_training_error);
  }

  model.calibration = CalibrationFor(render);
  model.basis = render.basis;
  model.window_s = render.window_s;
  model.diff_frames = render.diff;
  model.sift = sift;
  model.ensemble = std::move(boosted.ensemble);
  model.metadata.seed = options.seed;
  model.metadata.k = options.clusters;
  model.metadata.rounds = static_cast<std::uint64_t>(options.rounds);
  model.metadata.legitimate_images = legit;
  model.metadata.ddos_images = ddos;
  model.metadata.descriptor_count = pooled.rows();

  report.boosting = std::move(boosted.trace);
  report.kmeans_iterations = clusters.iterations;
  report.kmeans_converged = clusters.converged;
  report.kmeans_objective = clusters.objective_trace.back();
  return report;
}

std::string TrainLogJson(const TrainReport& report) {
  const TrainedModel& m = report.model;
  nlohmann::ordered_json j;
  j["seed"] = m.metadata.seed;
  j["clusters"] = m.metadata.k;
  j["rounds"] = m.metadata.rounds;
  j["legitimate_frames"] = m.metadata.legitimate_images;
  j["ddos_frames"] = m.metadata.ddos_images;
  j["descriptors"] = m.metadata.descriptor_count;
  j["window_s"] = m.window_s;
  j["canvas"] = {m.calibration.width, m.calibration.height};
  j["diff_frames"] = m.diff_frames;
  j["idf_log_base"] = m.idf_log_base;
  j["kmeans"] = {{"iterations", report.kmeans_iterations},
                 {"converged", report.kmeans_converged},
                 {"objective", report.kmeans_objective}};
  j["boosting"] = nlohmann::json::array();
  for (const BoostingRound& r : report.boosting) {
    j["boosting"].push_back({{"weighted_error", r.weighted_error},
                             {"alpha", r.alpha},
                             {"kept", r.kept},
                             {"training_error", r.training_error},
                             {"weighted_training_error",
                              r.weighted_training_error}});
  }
  return j.dump(2) + "\n";
}

std::vector<Prediction> PredictDescriptors(
    const TrainedModel& model, std::span<const LabeledDescriptors> frames,
    int jobs) {
  std::vector<Prediction> out(frames.size());
  ParallelFor(frames.size(), jobs, [&](std::size_t i) {
    out[i] = Predict(model, BowVector(frames[i].descriptors, model.vocabulary));
  });
  return out;
}

Confusion ConfusionOf(std::span<const LabeledDescriptors> frames,
                      std::span<const Prediction> predictions) {
  std::vector<int> truth, predicted;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].frame.label == FrameLabel::kUnlabeled) continue;
    truth.push_back(frames[i].frame.label == FrameLabel::kDdos ? kDdos
                                                               : kLegitimate);
    predicted.push_back(predictions[i].label);
  }
  return Tally(truth, predicted);
}

std::string FrameFileName(const FrameRecord& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "frame_%05zu_%lld.png", r.index,
                static_cast<long long>(r.window_start));
  return buf;
}

std::string ManifestLine(const FrameRecord& r) {
  nlohmann::ordered_json j;
  j["frame"] = FrameFileName(r);
  j["index"] = r.index;
  j["window_start_us"] = r.window_start;
  j["window_end_us"] = r.window_end;
  j["sessions"] = r.sessions;
  j["label"] = std::string(FrameLabelName(r.label));
  return j.dump();
}

std::string RenderSidecarJson(const RenderOptions& o) {
  nlohmann::ordered_json j;
  j["window_s"] = o.window_s;
  j["width"] = o.width;
  j["height"] = o.height;
  j["diff"] = o.diff;
  j["basis_a"] = o.basis.a;
  j["basis_b"] = o.basis.b;
  return j.dump(2) + "\n";
}

RenderOptions ReadRenderSidecar(const std::filesystem::path& path) {
  const auto bytes = ReadFileBytes(path);
  RenderOptions o;
  try {
    const auto j = nlohmann::json::parse(bytes.begin(), bytes.end());
    o.window_s = j.at("window_s").get<double>();
    o.width = j.at("width").get<int>();
    o.height = j.at("height").get<int>();
    o.diff = j.at("diff").get<bool>();
    o.basis = MakeBasis(j.at("basis_a").get<std::vector<double>>(),
                        j.at("basis_b").get<std::vector<double>>(),
                        /*normalize=*/false);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormatError,
                "bad render sidecar " + path.string() + ": " + e.what());
  }
  return o;
}

std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileError, "cannot open " + path.string());
  std::vector<ManifestEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      ManifestEntry e;
      e.frame = j.at("frame").get<std::string>();
      e.record.index = j.value("index", out.size());
      e.record.window_start = j.value("window_start_us", std::int64_t{0});
      e.record.window_end = j.value("window_end_us", std::int64_t{0});
      e.record.sessions = j.value("sessions", std::size_t{0});
      const auto label = ParseFrameLabel(j.at("label").get<std::string>());
      if (!label) throw Error(ErrorCode::kLineParse, "unknown label");
      e.record.label = *label;
      out.push_back(std::move(e));
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kLineParse, path.string() + ":" +
                                             std::to_string(line_no) + ": " +
                                             e.what());
    }
  }
  return out;
}

std::vector<std::filesystem::path> ListPngFrames(
    const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kFileError, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace synids
