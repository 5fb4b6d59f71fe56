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

#include "synids/raster.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "synids/error.h"

namespace synids {
namespace {

constexpr double kEdgeEps = 1e-9;

std::uint8_t ToByte(double unit) {
  const double x = std::floor(std::clamp(unit, 0.0, 1.0) * 255.0 + 0.5 + 1e-9);
  return static_cast<std::uint8_t>(std::min(x, 255.0));
}

// Inclusive [lo, hi] pixel span per canvas row; lo > hi means empty.
class RowSpans {
 public:
  RowSpans(int width, int height)
      : width_(width),
        spans_(static_cast<std::size_t>(height),
               {std::numeric_limits<int>::max(),
                std::numeric_limits<int>::min()}) {}

  void Add(int y, int lo, int hi) {
    if (y < 0 || y >= static_cast<int>(spans_.size())) return;
    lo = std::max(lo, 0);
    hi = std::min(hi, width_ - 1);
    if (lo > hi) return;
    auto& s = spans_[static_cast<std::size_t>(y)];
    s.first = std::min(s.first, lo);
    s.second = std::max(s.second, hi);
  }

  std::size_t PixelCount() const {
    std::size_t n = 0;
    for (const auto& [lo, hi] : spans_) {
      if (lo <= hi) n += static_cast<std::size_t>(hi - lo + 1);
    }
    return n;
  }

  std::size_t Paint(RgbaImage& image, Rgba color) const {
    for (std::size_t y = 0; y < spans_.size(); ++y) {
      const auto [lo, hi] = spans_[y];
      for (int x = lo; x <= hi; ++x) {
        const int row = static_cast<int>(y);
        image.set(x, row, CompositeOver(color, image.at(x, row)));
      }
    }
    return PixelCount();
  }

 private:
  int width_;
  std::vector<std::pair<int, int>> spans_;
};

using Pixel = CanvasCalibration::Pixel;

void FillConvex(const std::vector<Pixel>& poly, RowSpans& spans) {
  double ymin = poly[0].y, ymax = poly[0].y;
  for (const Pixel& p : poly) {
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const int y0 = static_cast<int>(std::ceil(ymin - kEdgeEps));
  const int y1 = static_cast<int>(std::floor(ymax + kEdgeEps));
  for (int y = y0; y <= y1; ++y) {
    double xl = std::numeric_limits<double>::infinity();
    double xr = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Pixel& a = poly[i];
      const Pixel& b = poly[(i + 1) % poly.size()];
      const double lo = std::min(a.y, b.y) - kEdgeEps;
      const double hi = std::max(a.y, b.y) + kEdgeEps;
      if (y < lo || y > hi) continue;
      if (std::abs(b.y - a.y) <= kEdgeEps) {
        xl = std::min({xl, a.x, b.x});
        xr = std::max({xr, a.x, b.x});
        continue;
      }
      const double t = std::clamp((y - a.y) / (b.y - a.y), 0.0, 1.0);
      const double x = a.x + t * (b.x - a.x);
      xl = std::min(xl, x);
      xr = std::max(xr, x);
    }
    if (xl > xr) continue;
    spans.Add(y, static_cast<int>(std::ceil(xl - kEdgeEps)),
              static_cast<int>(std::floor(xr + kEdgeEps)));
  }
}

// 3x3 stamps along every edge of the (closed) vertex chain.
void StrokeThick(const std::vector<Pixel>& poly, RowSpans& spans) {
  auto stamp = [&](double x, double y) {
    const int cx = static_cast<int>(std::floor(x + 0.5));
    const int cy = static_cast<int>(std::floor(y + 0.5));
    for (int dy = -1; dy <= 1; ++dy) spans.Add(cy + dy, cx - 1, cx + 1);
  };
  if (poly.size() == 1) {
    stamp(poly[0].x, poly[0].y);
    return;
  }
  const std::size_t edges = poly.size() == 2 ? 1 : poly.size();
  for (std::size_t i = 0; i < edges; ++i) {
    const Pixel& a = poly[i];
    const Pixel& b = poly[(i + 1) % poly.size()];
    const double len = std::max(std::abs(b.x - a.x), std::abs(b.y - a.y));
    const int steps = std::max(1, static_cast<int>(std::ceil(len)));
    for (int s = 0; s <= steps; ++s) {
      const double t = static_cast<double>(s) / steps;
      stamp(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
    }
  }
}

}  // namespace

RgbaImage::RgbaImage(int width, int height, Rgba fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "image dimensions must be > 0");
  }
  data_.resize(static_cast<std::size_t>(width) * height * 4);
  for (std::size_t i = 0; i < data_.size(); i += 4) {
    data_[i] = fill.r;
    data_[i + 1] = fill.g;
    data_[i + 2] = fill.b;
    data_[i + 3] = fill.a;
  }
}

Rgba RgbaImage::at(int x, int y) const {
  const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 4;
  return {data_[i], data_[i + 1], data_[i + 2], data_[i + 3]};
}

void RgbaImage::set(int x, int y, Rgba c) {
  const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 4;
  data_[i] = c.r;
  data_[i + 1] = c.g;
  data_[i + 2] = c.b;
  data_[i + 3] = c.a;
}

Rgba CompositeOver(Rgba src, Rgba dst) {
  return {BlendChannel(src.r, dst.r, src.a), BlendChannel(src.g, dst.g, src.a),
          BlendChannel(src.b, dst.b, src.a), BlendChannel(255, dst.a, src.a)};
}

double SessionHue(std::uint64_t session_id) {
  // 2^64 / golden ratio; multiplication wraps mod 2^64.
  const std::uint64_t frac = session_id * 0x9E3779B97F4A7C15ull;
  return static_cast<double>(frac >> 11) * 0x1.0p-53;
}

Rgba HsvToRgba(double hue_deg, double saturation, double value,
               double alpha) {
  const double c = value * saturation;
  const double h = std::fmod(hue_deg, 360.0) / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(h, 2.0) - 1.0));
  const double m = value - c;
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(h)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  return {ToByte(r + m), ToByte(g + m), ToByte(b + m), ToByte(alpha)};
}

Rgba SessionColor(std::uint64_t session_id) {
  return HsvToRgba(SessionHue(session_id) * 360.0, 0.8, 0.9, 0.5);
}

CanvasCalibration MakeCalibration(const PlaneBounds& bounds, int width,
                                  int height) {
  if (width < 2 || height < 2) {
    throw Error(ErrorCode::kInvalidArgument, "canvas must be at least 2x2");
  }
  if (!(bounds.u_max > bounds.u_min) || !(bounds.v_max > bounds.v_min)) {
    throw Error(ErrorCode::kInvalidArgument, "empty projection bounds");
  }
  CanvasCalibration cal;
  cal.bounds = bounds;
  cal.width = width;
  cal.height = height;
  cal.scale_x = (width - 1) / (bounds.u_max - bounds.u_min);
  cal.scale_y = (height - 1) / (bounds.v_max - bounds.v_min);
  return cal;
}

CanvasCalibration::Pixel CanvasCalibration::ToPixel(
    const PlanePoint& p) const {
  const double x = (p.u - bounds.u_min) * scale_x;
  const double y = (p.v - bounds.v_min) * scale_y;
  return {std::clamp(x, 0.0, static_cast<double>(width - 1)),
          std::clamp(y, 0.0, static_cast<double>(height - 1))};
}

std::size_t Rasterize(RgbaImage& image, std::span<const PlanePoint> hull,
                      Rgba color, const CanvasCalibration& cal) {
  if (hull.empty()) return 0;
  std::vector<Pixel> poly;
  poly.reserve(hull.size());
  for (const PlanePoint& p : hull) poly.push_back(cal.ToPixel(p));

  RowSpans spans(image.width(), image.height());
  if (poly.size() >= 3) FillConvex(poly, spans);
  if (spans.PixelCount() == 0) StrokeThick(poly, spans);
  return spans.Paint(image, color);
}

}  // namespace synids
