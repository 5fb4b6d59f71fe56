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

// Self-contained trained detector and its on-disk format.
//
// File layout (all integers and doubles little-endian, doubles as IEEE-754
// binary64 bit patterns):
//
//   magic        8 bytes  "SYNIDS01"
//   version      u32      kModelFormatVersion
//   payload_len  u64
//   payload      payload_len bytes
//   checksum     u32      CRC-32 (zlib polynomial) of the payload
//
// Payload, in order:
//   vocabulary   u64 k, u64 dim, k*dim f64 centroids (row-major),
//                k f64 idf, f64 idf_log_base, u64 vocabulary seed
//   calibration  f64 u_min, u_max, v_min, v_max, i32 width, i32 height
//   basis        u64 n, n f64 a, n f64 b   (gram is recomputed on load)
//   render       f64 window_s, u8 diff_frames
//   sift         i32 octaves, i32 scales_per_octave, f64 sigma0,
//                f64 assumed_blur, f64 contrast_threshold, f64 edge_ratio,
//                u64 max_descriptors
//   ensemble     f64 threshold, u64 T, then per learner: f64 alpha,
//                u64 dim, 2 f64 priors (legitimate, ddos), then for each
//                class (legitimate, ddos) dim f64 means and dim f64 variances
//   metadata     u64 byte length, UTF-8 "key=value\n" text

#ifndef SYNIDS_MODEL_H_
#define SYNIDS_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "synids/classifier.h"
#include "synids/projection.h"
#include "synids/raster.h"
#include "synids/sift.h"
#include "synids/vocabulary.h"

namespace synids {

inline constexpr char kModelMagic[9] = "SYNIDS01";
inline constexpr std::uint32_t kModelFormatVersion = 1;

struct TrainingMetadata {
  std::uint64_t seed = 0;
  std::uint64_t k = 0;
  std::uint64_t rounds = 0;  // requested T
  std::uint64_t legitimate_images = 0;
  std::uint64_t ddos_images = 0;
  std::uint64_t descriptor_count = 0;

  friend bool operator==(const TrainingMetadata&,
                         const TrainingMetadata&) = default;
};

struct TrainedModel {
  Vocabulary vocabulary;
  double idf_log_base = 2.718281828459045;
  CanvasCalibration calibration;
  ProjectionBasis basis;
  double window_s = 5.0;
  bool diff_frames = false;
  SiftOptions sift;
  BoostedEnsemble ensemble;
  double threshold = 0.0;
  TrainingMetadata metadata;
};

bool SameModel(const TrainedModel& a, const TrainedModel& b);

// Deterministic "key=value" lines describing the training run.
std::string MetadataText(const TrainedModel& model);

std::vector<std::uint8_t> EncodeModel(const TrainedModel& model);
// Throws kFormatError, kFormatVersionMismatch or kChecksumMismatch.
TrainedModel DecodeModel(std::span<const std::uint8_t> bytes);

// Atomic write (temporary file + rename). Throws kFileError.
void SaveModel(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel LoadModel(const std::filesystem::path& path);

// tf-idf vector of an image's descriptors against the model vocabulary.
std::vector<double> ModelBow(const TrainedModel& model,
                             const DescriptorSet& descriptors);

// Full per-image prediction: grayscale, SIFT, bag of words, ensemble.
Prediction PredictImage(const TrainedModel& model, const RgbaImage& image);

// bow must have length k; throws kDimensionMismatch otherwise.
Prediction Predict(const TrainedModel& model, std::span<const double> bow);

}  // namespace synids

#endif  // SYNIDS_MODEL_H_
