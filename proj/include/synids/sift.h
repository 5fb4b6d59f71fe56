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

// Scale-invariant keypoints and 128-dimensional gradient-histogram
// descriptors.
//
// Keypoints are extrema of the difference-of-Gaussian scale space, refined
// to sub-pixel / sub-scale position by a quadratic fit, filtered by contrast
// and by the ratio of principal curvatures, and given the dominant gradient
// orientation of their neighbourhood. Each descriptor is a 4x4 grid of
// 8-bin orientation histograms over the rotated, scale-normalized patch.

#ifndef SYNIDS_SIFT_H_
#define SYNIDS_SIFT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "synids/raster.h"

namespace synids {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 0)
      : width(w),
        height(h),
        pixels(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
  std::uint8_t& at(int x, int y) {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
};

// Luma round(0.299 R + 0.587 G + 0.114 B) of the colour pre-multiplied by
// alpha against black. Integer arithmetic, round half up.
GrayImage ToGrayscale(const RgbaImage& image);

inline constexpr std::size_t kDescriptorDim = 128;
using Descriptor = std::array<float, kDescriptorDim>;

struct Keypoint {
  double x = 0.0;            // canvas pixels
  double y = 0.0;
  double scale = 0.0;        // sigma in canvas pixels
  double orientation = 0.0;  // radians in [0, 2*pi)
  double response = 0.0;     // |DoG| at the refined extremum
  int octave = 0;
  int layer = 0;             // nearest Gaussian layer within the octave
  double octave_sigma = 0.0; // sigma in octave pixels
};

struct SiftOptions {
  int octaves = 4;
  int scales_per_octave = 3;
  double sigma0 = 1.6;
  double assumed_blur = 0.5;
  double contrast_threshold = 0.03;  // on |DoG| with intensities in [0,1]
  double edge_ratio = 10.0;
  std::size_t max_descriptors = 500;
};

struct DescriptorSet {
  std::vector<Keypoint> keypoints;
  std::vector<Descriptor> descriptors;  // parallel to keypoints

  std::size_t size() const { return descriptors.size(); }
};

// Ordered by descending response, ties by (y, x, scale). Requires an image
// of at least 32x32 (smaller images yield no keypoints).
std::vector<Keypoint> DetectKeypoints(const GrayImage& image,
                                      const SiftOptions& options = {});

// Describes keypoints produced by DetectKeypoints on the same image, keeping
// their order. Patches without enough gradient energy to reach a unit-norm
// descriptor under the 0.2 clamp are dropped.
DescriptorSet Describe(const GrayImage& image,
                       std::span<const Keypoint> keypoints,
                       const SiftOptions& options = {});

// Detect + describe on a shared scale space, capped at max_descriptors
// (highest responses kept).
DescriptorSet ExtractDescriptors(const GrayImage& image,
                                 const SiftOptions& options = {});

// Normalizes to unit length, then clamps components at 0.2 and renormalizes
// until stable. Returns false when the vector cannot satisfy both (fewer
// than 25 nonzero components, or no energy).
bool NormalizeDescriptor(std::span<double, kDescriptorDim> values);

// Debug dump: 32-byte header (magic "SYNDSC1\0", u64 count, u32 dim,
// 12 zero bytes) followed by count rows of dim little-endian float32.
void WriteDescriptorDump(const std::filesystem::path& path,
                         std::span<const Descriptor> descriptors);
std::vector<Descriptor> ReadDescriptorDump(const std::filesystem::path& path);

}  // namespace synids

#endif  // SYNIDS_SIFT_H_
