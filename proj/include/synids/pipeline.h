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

// End-to-end stages shared by the command-line tool and the tests:
// traffic -> frames -> descriptors -> model, and model -> predictions.

#ifndef SYNIDS_PIPELINE_H_
#define SYNIDS_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "synids/classifier.h"
#include "synids/evaluation.h"
#include "synids/frames.h"
#include "synids/model.h"
#include "synids/packet.h"
#include "synids/projection.h"
#include "synids/raster.h"
#include "synids/sift.h"
#include "synids/vocabulary.h"

namespace synids {

struct RenderOptions {
  double window_s = kDefaultWindowSeconds;
  int width = 1000;
  int height = 1000;
  bool diff = false;  // render |frame_i - frame_{i-1}| instead of frame_i
  ProjectionBasis basis = DefaultBasis(kFeatureDim);
};

CanvasCalibration CalibrationFor(const RenderOptions& options);

struct FrameRecord {
  std::size_t index = 0;
  std::int64_t window_start = 0;
  std::int64_t window_end = 0;
  std::size_t sessions = 0;
  FrameLabel label = FrameLabel::kUnlabeled;
};

// Called once per frame, possibly concurrently for different frames.
using FrameSink = std::function<void(const FrameRecord&, const RgbaImage&)>;

// Groups packets into sessions, plans tumbling windows and renders each
// window on up to `jobs` threads. Frames are labelled from `truth` (or left
// unlabelled when `truth` is null). Returns the records in index order;
// `max_frames` (0 = all) keeps only the first frames.
std::vector<FrameRecord> RenderTraffic(std::span<const PacketMeta> packets,
                                       const std::vector<TimeInterval>* truth,
                                       const RenderOptions& options, int jobs,
                                       const FrameSink& sink,
                                       std::size_t max_frames = 0);

// Descriptors of one image as rows of a Matrix (float values widened).
Matrix DescriptorMatrix(const DescriptorSet& set);
Matrix ImageDescriptors(const RgbaImage& image, const SiftOptions& sift);

struct LabeledDescriptors {
  FrameRecord frame;
  Matrix descriptors;  // n x 128
};

// RenderTraffic + SIFT per frame.
std::vector<LabeledDescriptors> TrafficDescriptors(
    std::span<const PacketMeta> packets, const std::vector<TimeInterval>& truth,
    const RenderOptions& render, const SiftOptions& sift, int jobs,
    std::size_t max_frames = 0);

struct TrainOptions {
  std::size_t clusters = 1000;
  int rounds = 10;
  std::uint64_t seed = 0;
  int jobs = 1;
  int kmeans_max_iterations = 100;
  double idf_log_base = M_E;
};

struct TrainReport {
  TrainedModel model;
  std::vector<BoostingRound> boosting;
  int kmeans_iterations = 0;
  bool kmeans_converged = false;
  double kmeans_objective = 0.0;
};

// Vocabulary (k-means over all descriptors), tf-idf weighting and boosting.
// Frames must be labelled; throws kMissingClass when a class has no frames
// and kInsufficientData when there are fewer descriptors than clusters.
TrainReport TrainFromDescriptors(std::span<const LabeledDescriptors> frames,
                                 const RenderOptions& render,
                                 const SiftOptions& sift,
                                 const TrainOptions& options);

// JSON training log: effective parameters, descriptor counts, k-means and
// per-round boosting figures.
std::string TrainLogJson(const TrainReport& report);

// Predictions for precomputed descriptors, on up to `jobs` threads.
std::vector<Prediction> PredictDescriptors(
    const TrainedModel& model, std::span<const LabeledDescriptors> frames,
    int jobs);

// Confusion of predictions against frame labels; unlabelled frames skipped.
Confusion ConfusionOf(std::span<const LabeledDescriptors> frames,
                      std::span<const Prediction> predictions);

// Render-directory layout: PNG frames named FrameFileName(), a frames.jsonl
// manifest (one line per frame) and a render.json sidecar with the options.
std::string FrameFileName(const FrameRecord& record);
std::string ManifestLine(const FrameRecord& record);
std::string RenderSidecarJson(const RenderOptions& options);
RenderOptions ReadRenderSidecar(const std::filesystem::path& path);

struct ManifestEntry {
  std::string frame;  // file name relative to the manifest
  FrameRecord record;
};
std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path);

// Sorted *.png files of a directory. Throws kFileError if it is missing.
std::vector<std::filesystem::path> ListPngFrames(
    const std::filesystem::path& dir);

}  // namespace synids

#endif  // SYNIDS_PIPELINE_H_
