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

#ifndef SYNIDS_RASTER_H_
#define SYNIDS_RASTER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "synids/projection.h"

namespace synids {

struct Rgba {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  std::uint8_t a = 0;

  friend bool operator==(const Rgba&, const Rgba&) = default;
};

// Row-major 8-bit RGBA raster.
class RgbaImage {
 public:
  RgbaImage() = default;
  RgbaImage(int width, int height, Rgba fill = {0, 0, 0, 255});

  int width() const { return width_; }
  int height() const { return height_; }

  Rgba at(int x, int y) const;
  void set(int x, int y, Rgba c);

  std::span<std::uint8_t> bytes() { return data_; }
  std::span<const std::uint8_t> bytes() const { return data_; }

  friend bool operator==(const RgbaImage&, const RgbaImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// Round-half-up of (src*alpha + dst*(255-alpha)) / 255, integers only.
inline std::uint8_t BlendChannel(std::uint8_t src, std::uint8_t dst,
                                 std::uint8_t alpha) {
  const unsigned c = unsigned{src} * alpha + unsigned{dst} * (255u - alpha);
  return static_cast<std::uint8_t>((2 * c + 255) / 510);
}

// Source-over compositing of `src` onto `dst`.
Rgba CompositeOver(Rgba src, Rgba dst);

// Hue from the fractional part of id * (golden ratio conjugate), computed in
// 64-bit fixed point; saturation 0.8, value 0.9, alpha 0.5.
Rgba SessionColor(std::uint64_t session_id);

// Fractional hue in [0, 1) used by SessionColor.
double SessionHue(std::uint64_t session_id);

Rgba HsvToRgba(double hue_deg, double saturation, double value, double alpha);

// Affine world -> pixel map sending (u_min, v_min) to (0, 0) and
// (u_max, v_max) to (width-1, height-1).
struct CanvasCalibration {
  PlaneBounds bounds;
  int width = 0;
  int height = 0;
  double scale_x = 0.0;
  double scale_y = 0.0;

  struct Pixel {
    double x;
    double y;
  };
  // Mapped coordinates, clamped to the canvas.
  Pixel ToPixel(const PlanePoint& p) const;

  friend bool operator==(const CanvasCalibration&,
                         const CanvasCalibration&) = default;
};

CanvasCalibration MakeCalibration(const PlaneBounds& bounds, int width,
                                  int height);

// Fills a CCW convex hull given in world coordinates. Pixels whose centres
// (integer coordinates) lie inside or on the mapped polygon are composited
// once each. Hulls with fewer than three vertices, or that cover no pixel
// centre, are drawn as 3-pixel-wide points or segments. Returns the number of
// pixels touched.
std::size_t Rasterize(RgbaImage& image, std::span<const PlanePoint> hull,
                      Rgba color, const CanvasCalibration& cal);

}  // namespace synids

#endif  // SYNIDS_RASTER_H_
