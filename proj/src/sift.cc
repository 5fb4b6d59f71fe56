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

#include "synids/sift.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

#include "synids/error.h"

namespace synids {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kImageBorder = 5;
constexpr int kMaxInterpSteps = 5;
constexpr int kOrientationBins = 36;
constexpr double kOrientationSigmaFactor = 1.5;
constexpr double kOrientationRadiusFactor = 3.0 * kOrientationSigmaFactor;
constexpr int kDescriptorWidth = 4;
constexpr int kDescriptorBins = 8;
constexpr double kDescriptorScaleFactor = 3.0;
constexpr double kDescriptorClamp = 0.2;
constexpr int kMinImageSide = 32;
constexpr int kMinOctaveSide = 2 * kImageBorder + 3;

struct FloatImage {
  int w = 0;
  int h = 0;
  std::vector<float> px;

  FloatImage() = default;
  FloatImage(int width, int height)
      : w(width), h(height), px(static_cast<std::size_t>(width) * height) {}

  float at(int x, int y) const {
    return px[static_cast<std::size_t>(y) * w + x];
  }
  float& at(int x, int y) { return px[static_cast<std::size_t>(y) * w + x]; }
  const float* row(int y) const { return px.data() + std::size_t(y) * w; }
  float* row(int y) { return px.data() + std::size_t(y) * w; }
};

std::vector<float> GaussianKernel(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(4.0 * sigma)));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
    sum += k[i + radius];
  }
  std::vector<float> out(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    out[i] = static_cast<float>(k[i] / sum);
  }
  return out;
}

// Separable blur with edge replication.
FloatImage Blur(const FloatImage& src, double sigma) {
  const std::vector<float> kernel = GaussianKernel(sigma);
  const int r = static_cast<int>(kernel.size() / 2);
  FloatImage tmp(src.w, src.h);
  std::vector<float> padded(static_cast<std::size_t>(src.w + 2 * r));
  for (int y = 0; y < src.h; ++y) {
    const float* in = src.row(y);
    for (int x = 0; x < src.w + 2 * r; ++x) {
      padded[x] = in[std::clamp(x - r, 0, src.w - 1)];
    }
    float* out = tmp.row(y);
    std::fill(out, out + src.w, 0.0f);
    for (int j = 0; j <= 2 * r; ++j) {
      const float kj = kernel[j];
      const float* p = padded.data() + j;
      for (int x = 0; x < src.w; ++x) out[x] += kj * p[x];
    }
  }
  FloatImage dst(src.w, src.h);
  for (int y = 0; y < src.h; ++y) {
    float* out = dst.row(y);
    std::fill(out, out + src.w, 0.0f);
    for (int j = 0; j <= 2 * r; ++j) {
      const float kj = kernel[j];
      const float* in = tmp.row(std::clamp(y + j - r, 0, src.h - 1));
      for (int x = 0; x < src.w; ++x) out[x] += kj * in[x];
    }
  }
  return dst;
}

FloatImage Downsample(const FloatImage& src) {
  FloatImage dst(src.w / 2, src.h / 2);
  for (int y = 0; y < dst.h; ++y) {
    for (int x = 0; x < dst.w; ++x) dst.at(x, y) = src.at(2 * x, 2 * y);
  }
  return dst;
}

struct Octave {
  std::vector<FloatImage> gauss;  // S + 3 layers
  std::vector<FloatImage> dog;    // S + 2 layers
};

class ScaleSpace {
 public:
  ScaleSpace(const GrayImage& image, const SiftOptions& opt) : opt_(opt) {
    if (image.width < kMinImageSide || image.height < kMinImageSide) return;
    FloatImage base(image.width, image.height);
    for (std::size_t i = 0; i < base.px.size(); ++i) {
      base.px[i] = image.pixels[i] / 255.0f;
    }
    const int s = opt.scales_per_octave;
    const double init = std::sqrt(std::max(
        0.01, opt.sigma0 * opt.sigma0 - opt.assumed_blur * opt.assumed_blur));
    base = Blur(base, init);

    std::vector<double> increments(s + 3, 0.0);
    for (int i = 1; i < s + 3; ++i) {
      const double prev = opt.sigma0 * std::pow(2.0, (i - 1.0) / s);
      const double total = prev * std::pow(2.0, 1.0 / s);
      increments[i] = std::sqrt(total * total - prev * prev);
    }

    for (int o = 0; o < opt.octaves; ++o) {
      FloatImage first = o == 0 ? std::move(base)
                                : Downsample(octaves_.back().gauss[s]);
      if (first.w < kMinOctaveSide || first.h < kMinOctaveSide) break;
      Octave oct;
      oct.gauss.push_back(std::move(first));
      for (int i = 1; i < s + 3; ++i) {
        oct.gauss.push_back(Blur(oct.gauss.back(), increments[i]));
      }
      for (int i = 0; i < s + 2; ++i) {
        const FloatImage& a = oct.gauss[i];
        const FloatImage& b = oct.gauss[i + 1];
        FloatImage d(a.w, a.h);
        for (std::size_t p = 0; p < d.px.size(); ++p) d.px[p] = b.px[p] - a.px[p];
        oct.dog.push_back(std::move(d));
      }
      octaves_.push_back(std::move(oct));
    }
  }

  const std::vector<Octave>& octaves() const { return octaves_; }
  const SiftOptions& options() const { return opt_; }

 private:
  SiftOptions opt_;
  std::vector<Octave> octaves_;
};

bool IsExtremum(const std::vector<FloatImage>& dog, int layer, int x, int y) {
  const float v = dog[layer].at(x, y);
  const bool is_max = v > 0;
  for (int l = layer - 1; l <= layer + 1; ++l) {
    const FloatImage& img = dog[l];
    for (int dy = -1; dy <= 1; ++dy) {
      const float* row = img.row(y + dy);
      for (int dx = -1; dx <= 1; ++dx) {
        if (l == layer && dx == 0 && dy == 0) continue;
        const float n = row[x + dx];
        if (is_max ? !(v > n) : !(v < n)) return false;
      }
    }
  }
  return true;
}

// Solves the 3x3 system h * x = b by Gaussian elimination with partial
// pivoting. Returns false when singular.
bool Solve3(std::array<std::array<double, 3>, 3> h, std::array<double, 3> b,
            std::array<double, 3>& x) {
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r) {
      if (std::abs(h[r][c]) > std::abs(h[piv][c])) piv = r;
    }
    if (std::abs(h[piv][c]) < 1e-12) return false;
    std::swap(h[c], h[piv]);
    std::swap(b[c], b[piv]);
    for (int r = c + 1; r < 3; ++r) {
      const double f = h[r][c] / h[c][c];
      for (int k = c; k < 3; ++k) h[r][k] -= f * h[c][k];
      b[r] -= f * b[c];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < 3; ++k) s -= h[r][k] * x[k];
    x[r] = s / h[r][r];
  }
  return true;
}

// Quadratic refinement of a DoG extremum; fills the keypoint on success.
bool Localize(const ScaleSpace& space, int o, int layer, int x, int y,
              Keypoint& kp) {
  const SiftOptions& opt = space.options();
  const std::vector<FloatImage>& dog = space.octaves()[o].dog;
  const int s = opt.scales_per_octave;
  const int w = dog[0].w;
  const int h = dog[0].h;
  std::array<double, 3> offset{};
  std::array<double, 3> grad{};
  int step = 0;
  for (; step < kMaxInterpSteps; ++step) {
    const FloatImage& prev = dog[layer - 1];
    const FloatImage& cur = dog[layer];
    const FloatImage& next = dog[layer + 1];
    const double v2 = 2.0 * cur.at(x, y);
    grad = {(cur.at(x + 1, y) - cur.at(x - 1, y)) * 0.5,
            (cur.at(x, y + 1) - cur.at(x, y - 1)) * 0.5,
            (next.at(x, y) - prev.at(x, y)) * 0.5};
    const double dxx = cur.at(x + 1, y) + cur.at(x - 1, y) - v2;
    const double dyy = cur.at(x, y + 1) + cur.at(x, y - 1) - v2;
    const double dss = next.at(x, y) + prev.at(x, y) - v2;
    const double dxy = (cur.at(x + 1, y + 1) - cur.at(x - 1, y + 1) -
                        cur.at(x + 1, y - 1) + cur.at(x - 1, y - 1)) * 0.25;
    const double dxs = (next.at(x + 1, y) - next.at(x - 1, y) -
                        prev.at(x + 1, y) + prev.at(x - 1, y)) * 0.25;
    const double dys = (next.at(x, y + 1) - next.at(x, y - 1) -
                        prev.at(x, y + 1) + prev.at(x, y - 1)) * 0.25;
    const std::array<std::array<double, 3>, 3> hess = {
        {{dxx, dxy, dxs}, {dxy, dyy, dys}, {dxs, dys, dss}}};
    if (!Solve3(hess, {-grad[0], -grad[1], -grad[2]}, offset)) return false;
    if (std::abs(offset[0]) < 0.5 && std::abs(offset[1]) < 0.5 &&
        std::abs(offset[2]) < 0.5) {
      break;
    }
    if (std::abs(offset[0]) > w || std::abs(offset[1]) > h ||
        std::abs(offset[2]) > s + 2) {
      return false;
    }
    x += static_cast<int>(std::lround(offset[0]));
    y += static_cast<int>(std::lround(offset[1]));
    layer += static_cast<int>(std::lround(offset[2]));
    if (layer < 1 || layer > s || x < kImageBorder ||
        x >= w - kImageBorder || y < kImageBorder || y >= h - kImageBorder) {
      return false;
    }
  }
  if (step >= kMaxInterpSteps) return false;

  const FloatImage& cur = dog[layer];
  const double contrast =
      cur.at(x, y) + 0.5 * (grad[0] * offset[0] + grad[1] * offset[1] +
                            grad[2] * offset[2]);
  if (std::abs(contrast) < opt.contrast_threshold) return false;

  const double v2 = 2.0 * cur.at(x, y);
  const double dxx = cur.at(x + 1, y) + cur.at(x - 1, y) - v2;
  const double dyy = cur.at(x, y + 1) + cur.at(x, y - 1) - v2;
  const double dxy = (cur.at(x + 1, y + 1) - cur.at(x - 1, y + 1) -
                      cur.at(x + 1, y - 1) + cur.at(x - 1, y - 1)) * 0.25;
  const double tr = dxx + dyy;
  const double det = dxx * dyy - dxy * dxy;
  const double r = opt.edge_ratio;
  if (det <= 0 || tr * tr * r >= (r + 1) * (r + 1) * det) return false;

  const double scale_index = layer + offset[2];
  const double unit = std::ldexp(1.0, o);
  kp.x = (x + offset[0]) * unit;
  kp.y = (y + offset[1]) * unit;
  kp.octave = o;
  kp.layer = std::clamp(static_cast<int>(std::lround(scale_index)), 0, s + 2);
  kp.octave_sigma = opt.sigma0 * std::pow(2.0, scale_index / s);
  kp.scale = kp.octave_sigma * unit;
  kp.response = std::abs(contrast);
  return true;
}

bool Gradient(const FloatImage& img, int x, int y, double& mag,
              double& angle) {
  if (x <= 0 || x >= img.w - 1 || y <= 0 || y >= img.h - 1) return false;
  const double dx = img.at(x + 1, y) - img.at(x - 1, y);
  const double dy = img.at(x, y + 1) - img.at(x, y - 1);
  mag = std::sqrt(dx * dx + dy * dy);
  angle = std::atan2(dy, dx);
  return true;
}

double DominantOrientation(const FloatImage& img, double cx, double cy,
                           double sigma) {
  std::array<double, kOrientationBins> hist{};
  const int x0 = static_cast<int>(std::lround(cx));
  const int y0 = static_cast<int>(std::lround(cy));
  const int radius =
      static_cast<int>(std::lround(kOrientationRadiusFactor * sigma));
  const double wsig = kOrientationSigmaFactor * sigma;
  const double expf = -1.0 / (2.0 * wsig * wsig);
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      double mag, angle;
      if (!Gradient(img, x0 + dx, y0 + dy, mag, angle)) continue;
      const double wgt = std::exp((dx * dx + dy * dy) * expf);
      int bin = static_cast<int>(
          std::lround(kOrientationBins * angle / kTwoPi));
      bin = ((bin % kOrientationBins) + kOrientationBins) % kOrientationBins;
      hist[bin] += wgt * mag;
    }
  }
  std::array<double, kOrientationBins> smooth{};
  for (int i = 0; i < kOrientationBins; ++i) {
    auto at = [&](int k) {
      return hist[(i + k + kOrientationBins) % kOrientationBins];
    };
    smooth[i] = (at(-2) + at(2)) * (1.0 / 16) + (at(-1) + at(1)) * (4.0 / 16) +
                at(0) * (6.0 / 16);
  }
  int best = 0;
  for (int i = 1; i < kOrientationBins; ++i) {
    if (smooth[i] > smooth[best]) best = i;
  }
  const double l = smooth[(best + kOrientationBins - 1) % kOrientationBins];
  const double r = smooth[(best + 1) % kOrientationBins];
  const double c = smooth[best];
  const double denom = l - 2 * c + r;
  const double peak = denom != 0.0 ? best + 0.5 * (l - r) / denom : best;
  double ori = kTwoPi * peak / kOrientationBins;
  ori = std::fmod(ori, kTwoPi);
  if (ori < 0) ori += kTwoPi;
  if (ori >= kTwoPi) ori = 0.0;
  return ori;
}

// Raw 4x4x8 histogram with trilinear interpolation, patch rotated by the
// keypoint orientation.
std::array<double, kDescriptorDim> RawDescriptor(const FloatImage& img,
                                                 double cx, double cy,
                                                 double sigma, double ori) {
  constexpr int d = kDescriptorWidth;
  constexpr int n = kDescriptorBins;
  const double hist_width = kDescriptorScaleFactor * sigma;
  int radius = static_cast<int>(
      std::lround(hist_width * std::numbers::sqrt2 * (d + 1) * 0.5));
  radius = std::min(radius, static_cast<int>(std::sqrt(
                                double(img.w) * img.w + double(img.h) * img.h)));
  const double cos_t = std::cos(ori) / hist_width;
  const double sin_t = std::sin(ori) / hist_width;
  const double exp_scale = -1.0 / (d * d * 0.5);
  const double bins_per_rad = n / kTwoPi;
  const int x0 = static_cast<int>(std::lround(cx));
  const int y0 = static_cast<int>(std::lround(cy));

  std::array<double, (d + 2) * (d + 2) * (n + 2)> hist{};
  for (int i = -radius; i <= radius; ++i) {
    for (int j = -radius; j <= radius; ++j) {
      const double c_rot = j * cos_t + i * sin_t;
      const double r_rot = -j * sin_t + i * cos_t;
      const double rbin = r_rot + d / 2.0 - 0.5;
      const double cbin = c_rot + d / 2.0 - 0.5;
      if (!(rbin > -1 && rbin < d && cbin > -1 && cbin < d)) continue;
      double mag, angle;
      if (!Gradient(img, x0 + j, y0 + i, mag, angle)) continue;
      double obin = std::fmod(angle - ori, kTwoPi);
      if (obin < 0) obin += kTwoPi;
      obin *= bins_per_rad;
      const double wmag =
          mag * std::exp((c_rot * c_rot + r_rot * r_rot) * exp_scale);

      const int r0 = static_cast<int>(std::floor(rbin));
      const int c0 = static_cast<int>(std::floor(cbin));
      int o0 = static_cast<int>(std::floor(obin));
      const double fr = rbin - r0;
      const double fc = cbin - c0;
      const double fo = obin - o0;
      if (o0 < 0) o0 += n;
      if (o0 >= n) o0 -= n;
      const double v_r1 = wmag * fr, v_r0 = wmag - v_r1;
      const double v_rc11 = v_r1 * fc, v_rc10 = v_r1 - v_rc11;
      const double v_rc01 = v_r0 * fc, v_rc00 = v_r0 - v_rc01;
      const double v_rco111 = v_rc11 * fo, v_rco110 = v_rc11 - v_rco111;
      const double v_rco101 = v_rc10 * fo, v_rco100 = v_rc10 - v_rco101;
      const double v_rco011 = v_rc01 * fo, v_rco010 = v_rc01 - v_rco011;
      const double v_rco001 = v_rc00 * fo, v_rco000 = v_rc00 - v_rco001;
      const int idx = ((r0 + 1) * (d + 2) + c0 + 1) * (n + 2) + o0;
      hist[idx] += v_rco000;
      hist[idx + 1] += v_rco001;
      hist[idx + (n + 2)] += v_rco010;
      hist[idx + (n + 3)] += v_rco011;
      hist[idx + (d + 2) * (n + 2)] += v_rco100;
      hist[idx + (d + 2) * (n + 2) + 1] += v_rco101;
      hist[idx + (d + 3) * (n + 2)] += v_rco110;
      hist[idx + (d + 3) * (n + 2) + 1] += v_rco111;
    }
  }
  std::array<double, kDescriptorDim> out{};
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const int idx = ((i + 1) * (d + 2) + (j + 1)) * (n + 2);
      hist[idx] += hist[idx + n];  // orientation wrap-around
      hist[idx + 1] += hist[idx + n + 1];
      for (int k = 0; k < n; ++k) out[(i * d + j) * n + k] = hist[idx + k];
    }
  }
  return out;
}

bool KeypointOrder(const Keypoint& a, const Keypoint& b) {
  if (a.response != b.response) return a.response > b.response;
  if (a.y != b.y) return a.y < b.y;
  if (a.x != b.x) return a.x < b.x;
  return a.scale < b.scale;
}

std::vector<Keypoint> Detect(const ScaleSpace& space) {
  const SiftOptions& opt = space.options();
  const int s = opt.scales_per_octave;
  const float prelim = static_cast<float>(0.5 * opt.contrast_threshold);
  std::vector<Keypoint> keypoints;
  for (int o = 0; o < static_cast<int>(space.octaves().size()); ++o) {
    const Octave& oct = space.octaves()[o];
    for (int layer = 1; layer <= s; ++layer) {
      const FloatImage& img = oct.dog[layer];
      for (int y = kImageBorder; y < img.h - kImageBorder; ++y) {
        const float* row = img.row(y);
        for (int x = kImageBorder; x < img.w - kImageBorder; ++x) {
          if (std::abs(row[x]) <= prelim) continue;
          if (!IsExtremum(oct.dog, layer, x, y)) continue;
          Keypoint kp;
          if (!Localize(space, o, layer, x, y, kp)) continue;
          const double unit = std::ldexp(1.0, o);
          kp.orientation = DominantOrientation(
              oct.gauss[kp.layer], kp.x / unit, kp.y / unit, kp.octave_sigma);
          keypoints.push_back(kp);
        }
      }
    }
  }
  std::sort(keypoints.begin(), keypoints.end(), KeypointOrder);
  // A refined extremum can be reached from two neighbouring samples.
  keypoints.erase(
      std::unique(keypoints.begin(), keypoints.end(),
                  [](const Keypoint& a, const Keypoint& b) {
                    return a.x == b.x && a.y == b.y && a.scale == b.scale;
                  }),
      keypoints.end());
  return keypoints;
}

DescriptorSet DescribeWith(const ScaleSpace& space,
                           std::span<const Keypoint> keypoints,
                           std::size_t limit) {
  DescriptorSet set;
  for (const Keypoint& kp : keypoints) {
    if (set.size() >= limit) break;
    if (kp.octave < 0 ||
        kp.octave >= static_cast<int>(space.octaves().size())) {
      continue;
    }
    const Octave& oct = space.octaves()[kp.octave];
    const double unit = std::ldexp(1.0, kp.octave);
    std::array<double, kDescriptorDim> raw =
        RawDescriptor(oct.gauss[std::clamp<int>(kp.layer, 0,
                                                 oct.gauss.size() - 1)],
                      kp.x / unit, kp.y / unit, kp.octave_sigma,
                      kp.orientation);
    if (!NormalizeDescriptor(raw)) continue;
    Descriptor desc;
    for (std::size_t i = 0; i < kDescriptorDim; ++i) {
      desc[i] = static_cast<float>(raw[i]);
    }
    set.keypoints.push_back(kp);
    set.descriptors.push_back(desc);
  }
  return set;
}

}  // namespace

GrayImage ToGrayscale(const RgbaImage& image) {
  GrayImage gray(image.width(), image.height());
  const auto bytes = image.bytes();
  for (std::size_t i = 0, p = 0; p < gray.pixels.size(); ++p, i += 4) {
    const unsigned a = bytes[i + 3];
    auto premul = [a](unsigned c) { return (2 * c * a + 255) / 510; };
    const unsigned luma =
        (299 * premul(bytes[i]) + 587 * premul(bytes[i + 1]) +
         114 * premul(bytes[i + 2]) + 500) /
        1000;
    gray.pixels[p] = static_cast<std::uint8_t>(std::min(luma, 255u));
  }
  return gray;
}

bool NormalizeDescriptor(std::span<double, kDescriptorDim> values) {
  double norm2 = 0.0;
  std::size_t nonzero = 0;
  for (double v : values) {
    norm2 += v * v;
    if (v > 0) ++nonzero;
  }
  constexpr double kCap2 = kDescriptorClamp * kDescriptorClamp;
  // Unit norm with every component <= 0.2 needs at least 25 nonzeros.
  if (!(norm2 > 1e-24) || nonzero * kCap2 < 1.0 - 1e-12) return false;

  // Fixpoint of clamp-then-renormalize: find the scale s with
  // sum(min(s*v, 0.2)^2) == 1 by walking the components in descending order.
  std::array<double, kDescriptorDim> sorted;
  std::copy(values.begin(), values.end(), sorted.begin());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double tail2 = norm2;
  double scale = 0.0;
  for (std::size_t c = 0; c < kDescriptorDim; ++c) {
    const double room = 1.0 - c * kCap2;
    if (room <= 0 || tail2 <= 0) return false;
    scale = std::sqrt(room / tail2);
    if (scale * sorted[c] <= kDescriptorClamp) break;
    tail2 -= sorted[c] * sorted[c];
  }
  for (double& v : values) v = std::min(v * scale, kDescriptorClamp);
  return true;
}

std::vector<Keypoint> DetectKeypoints(const GrayImage& image,
                                      const SiftOptions& options) {
  return Detect(ScaleSpace(image, options));
}

DescriptorSet Describe(const GrayImage& image,
                       std::span<const Keypoint> keypoints,
                       const SiftOptions& options) {
  if (keypoints.empty()) return {};
  return DescribeWith(ScaleSpace(image, options), keypoints,
                      keypoints.size());
}

DescriptorSet ExtractDescriptors(const GrayImage& image,
                                 const SiftOptions& options) {
  const ScaleSpace space(image, options);
  const std::vector<Keypoint> keypoints = Detect(space);
  return DescribeWith(space, keypoints, options.max_descriptors);
}

void WriteDescriptorDump(const std::filesystem::path& path,
                         std::span<const Descriptor> descriptors) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kFileError, "cannot open " + path.string());
  std::array<std::uint8_t, 32> header{};
  std::memcpy(header.data(), "SYNDSC1\0", 8);
  const std::uint64_t count = descriptors.size();
  const std::uint32_t dim = kDescriptorDim;
  for (int i = 0; i < 8; ++i) header[8 + i] = (count >> (8 * i)) & 0xFF;
  for (int i = 0; i < 4; ++i) header[16 + i] = (dim >> (8 * i)) & 0xFF;
  out.write(reinterpret_cast<const char*>(header.data()), header.size());
  for (const Descriptor& d : descriptors) {
    for (float f : d) {
      std::uint32_t bits;
      std::memcpy(&bits, &f, 4);
      const char le[4] = {static_cast<char>(bits), static_cast<char>(bits >> 8),
                          static_cast<char>(bits >> 16),
                          static_cast<char>(bits >> 24)};
      out.write(le, 4);
    }
  }
  if (!out) throw Error(ErrorCode::kFileError, "write failed: " + path.string());
}

std::vector<Descriptor> ReadDescriptorDump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileError, "cannot open " + path.string());
  std::array<std::uint8_t, 32> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  if (!in || std::memcmp(header.data(), "SYNDSC1\0", 8) != 0) {
    throw Error(ErrorCode::kFormatError, "not a descriptor dump");
  }
  std::uint64_t count = 0;
  std::uint32_t dim = 0;
  for (int i = 0; i < 8; ++i) count |= std::uint64_t{header[8 + i]} << (8 * i);
  for (int i = 0; i < 4; ++i) dim |= std::uint32_t{header[16 + i]} << (8 * i);
  if (dim != kDescriptorDim) {
    throw Error(ErrorCode::kFormatError, "unexpected descriptor dimension");
  }
  std::vector<Descriptor> out(count);
  for (Descriptor& d : out) {
    for (float& f : d) {
      std::uint8_t le[4];
      in.read(reinterpret_cast<char*>(le), 4);
      const std::uint32_t bits = le[0] | (le[1] << 8) | (le[2] << 16) |
                                 (std::uint32_t{le[3]} << 24);
      std::memcpy(&f, &bits, 4);
    }
  }
  if (!in) throw Error(ErrorCode::kFormatError, "descriptor dump truncated");
  return out;
}

}  // namespace synids
