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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "oracles.h"
#include "synids/error.h"
#include "synids/frames.h"
#include "synids/hull.h"
#include "synids/png_io.h"
#include "synids/raster.h"
#include "test_util.h"

namespace synids {
namespace {

std::vector<oracle::Pt> SortedVertices(const std::vector<PlanePoint>& hull) {
  std::vector<oracle::Pt> out;
  for (const PlanePoint& p : hull) out.push_back({p.u, p.v});
  std::sort(out.begin(), out.end());
  return out;
}

TEST(HullTest, MatchesEdgeTestOracle) {
  std::mt19937_64 g(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(g() % 30);
    // Half the trials use a coarse grid to force duplicates and collinearity.
    const bool grid = trial % 2 == 0;
    std::uniform_real_distribution<double> d(-5, 5);
    std::vector<PlanePoint> pts;
    std::vector<oracle::Pt> opts;
    for (int i = 0; i < n; ++i) {
      double u = d(g), v = d(g);
      if (grid) {
        u = std::round(u / 2.5);
        v = std::round(v / 2.5);
      }
      pts.push_back({u, v});
      opts.push_back({u, v});
    }
    const auto hull = ConvexHull(pts);
    EXPECT_EQ(SortedVertices(hull), oracle::HullVertexSet(opts)) << trial;
    const std::size_t h = hull.size();
    for (std::size_t i = 0; h >= 3 && i < h; ++i) {
      EXPECT_GT(Cross(hull[i], hull[(i + 1) % h], hull[(i + 2) % h]), 0.0);
    }
    for (const PlanePoint& p : pts) EXPECT_TRUE(HullContains(hull, p));
  }
}

TEST(HullTest, DegenerateInputs) {
  EXPECT_THROW(ConvexHull(std::vector<PlanePoint>{}), Error);
  const std::vector<PlanePoint> same = {{1, 1}, {1, 1}, {1, 1}};
  EXPECT_EQ(ConvexHull(same).size(), 1u);
  const std::vector<PlanePoint> line = {{0, 0}, {2, 2}, {1, 1}, {3, 3}};
  const auto seg = ConvexHull(line);
  ASSERT_EQ(seg.size(), 2u);
  EXPECT_EQ(seg[0], (PlanePoint{0, 0}));
  EXPECT_EQ(seg[1], (PlanePoint{3, 3}));
  EXPECT_TRUE(HullContains(seg, {1.5, 1.5}));
  EXPECT_FALSE(HullContains(seg, {1.5, 1.6}));
}

TEST(HullTest, SquareWithInteriorAndEdgePoints) {
  const std::vector<PlanePoint> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1},
                                       {0.5, 0.5}, {0.5, 0}, {1, 0.3}};
  const auto hull = ConvexHull(pts);
  ASSERT_EQ(hull.size(), 4u);
  EXPECT_EQ(hull[0], (PlanePoint{0, 0}));
  EXPECT_EQ(hull[1], (PlanePoint{1, 0}));
  EXPECT_DOUBLE_EQ(PolygonArea(hull), 1.0);
  EXPECT_FALSE(HullContains(hull, {1.01, 0.5}));
  EXPECT_TRUE(HullContains(hull, {1.0, 0.5}));
}

TEST(RasterTest, BlendChannelIsRoundedAlphaBlend) {
  for (int s = 0; s < 256; s += 5) {
    for (int d = 0; d < 256; d += 7) {
      for (int a = 0; a < 256; a += 3) {
        const double exact = (s * a + d * (255.0 - a)) / 255.0;
        EXPECT_EQ(BlendChannel(s, d, a), static_cast<int>(std::floor(exact + 0.5)));
      }
    }
  }
  EXPECT_EQ(BlendChannel(255, 0, 128), 128);
  EXPECT_EQ(BlendChannel(200, 100, 255), 200);
  EXPECT_EQ(BlendChannel(200, 100, 0), 100);
}

TEST(RasterTest, CompositeOverOpaqueBlack) {
  const Rgba out = CompositeOver({230, 46, 46, 128}, {0, 0, 0, 255});
  EXPECT_EQ(out, (Rgba{115, 23, 23, 255}));
}

TEST(RasterTest, SessionColorForIdZero) {
  EXPECT_EQ(SessionColor(0), (Rgba{230, 46, 46, 128}));
  for (std::uint64_t id : {1ull, 77ull, 0xFFFFFFFFFFFFull}) {
    const double h = SessionHue(id);
    EXPECT_GE(h, 0.0);
    EXPECT_LT(h, 1.0);
    EXPECT_EQ(SessionColor(id).a, 128);
  }
  EXPECT_NE(SessionColor(1), SessionColor(2));
}

TEST(RasterTest, CalibrationMapsCornersToCanvasCorners) {
  const CanvasCalibration cal = MakeCalibration({-1, 3, 2, 4}, 1000, 500);
  const auto lo = cal.ToPixel({-1, 2});
  const auto hi = cal.ToPixel({3, 4});
  EXPECT_DOUBLE_EQ(lo.x, 0);
  EXPECT_DOUBLE_EQ(lo.y, 0);
  EXPECT_DOUBLE_EQ(hi.x, 999);
  EXPECT_DOUBLE_EQ(hi.y, 499);
  const auto out = cal.ToPixel({10, -10});
  EXPECT_DOUBLE_EQ(out.x, 999);
  EXPECT_DOUBLE_EQ(out.y, 0);
  EXPECT_THROW(MakeCalibration({0, 0, 0, 1}, 10, 10), Error);
}

TEST(RasterTest, FillMatchesPixelCentreOracle) {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  const CanvasCalibration cal = MakeCalibration({0, 1, 0, 1}, 64, 48);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PlanePoint> pts;
    for (int i = 0; i < 8; ++i) pts.push_back({d(g), d(g)});
    const auto hull = ConvexHull(pts);
    std::vector<PlanePoint> pix;
    for (const PlanePoint& p : hull) {
      const auto q = cal.ToPixel(p);
      pix.push_back({q.x, q.y});
    }
    RgbaImage img(64, 48);
    const Rgba c{200, 10, 10, 128};
    const std::size_t touched = Rasterize(img, hull, c, cal);
    std::size_t expected = 0;
    for (int y = 0; y < 48; ++y) {
      for (int x = 0; x < 64; ++x) {
        const bool inside = HullContains(pix, {double(x), double(y)}, 1e-7);
        expected += inside;
        const Rgba want = inside ? CompositeOver(c, {0, 0, 0, 255})
                                 : Rgba{0, 0, 0, 255};
        ASSERT_EQ(img.at(x, y), want) << trial << " " << x << "," << y;
      }
    }
    EXPECT_EQ(touched, expected);
  }
}

TEST(RasterTest, DegenerateHullDrawsThickStroke) {
  const CanvasCalibration cal = MakeCalibration({0, 10, 0, 10}, 11, 11);
  RgbaImage img(11, 11);
  const std::vector<PlanePoint> point = {{5, 5}};
  EXPECT_EQ(Rasterize(img, point, {255, 255, 255, 255}, cal), 9u);
  EXPECT_EQ(img.at(4, 4), (Rgba{255, 255, 255, 255}));
  EXPECT_EQ(img.at(3, 5), (Rgba{0, 0, 0, 255}));
  RgbaImage line_img(11, 11);
  const std::vector<PlanePoint> seg = {{2, 5}, {8, 5}};
  EXPECT_EQ(Rasterize(line_img, seg, {255, 255, 255, 255}, cal), 27u);
}

TEST(RasterTest, OverlapIsCompositedPerHull) {
  const CanvasCalibration cal = MakeCalibration({0, 9, 0, 9}, 10, 10);
  RgbaImage img(10, 10);
  const std::vector<PlanePoint> sq = {{0, 0}, {9, 0}, {9, 9}, {0, 9}};
  const Rgba c{230, 46, 46, 128};
  Rasterize(img, sq, c, cal);
  Rasterize(img, sq, c, cal);
  const Rgba once = CompositeOver(c, {0, 0, 0, 255});
  EXPECT_EQ(img.at(5, 5), CompositeOver(c, once));
}

Session MakeSession(std::uint64_t id, std::vector<std::int64_t> times) {
  Session s;
  s.session_id = id;
  for (std::int64_t t : times) {
    PacketMeta p;
    p.session_id = id;
    p.timestamp = t;
    p.size_bytes = 60;
    p.protocol = 6;
    p.src_port = 1000 + static_cast<std::uint16_t>(t % 1000);
    s.packets.push_back(p);
  }
  s.first_seen = times.front();
  s.last_seen = times.back();
  return s;
}

TEST(FramesTest, PlanFramesAssignsEachPacketOnce) {
  const std::vector<Session> sessions = {
      MakeSession(1, {0, 1'000'000, 6'000'000}),
      MakeSession(2, {4'999'999, 5'000'000, 10'000'000}),
  };
  const auto plans = PlanFrames(sessions, 5'000'000);
  ASSERT_EQ(plans.size(), 2u);
  EXPECT_EQ(plans[0].window_start, 0);
  EXPECT_EQ(plans[1].window_end, 10'000'000);
  std::size_t total = 0;
  for (const auto& plan : plans) {
    for (const auto& s : plan.slices) total += s.end - s.begin;
  }
  EXPECT_EQ(total, 6u);
  // The last packet, stamped exactly at the final window end, stays in it.
  ASSERT_EQ(plans[1].slices.size(), 2u);
  EXPECT_EQ(plans[1].slices[1].session, 1u);
  EXPECT_EQ(plans[1].slices[1].end - plans[1].slices[1].begin, 2u);
  EXPECT_TRUE(PlanFrames(std::vector<Session>{}, 5'000'000).empty());
  EXPECT_THROW(PlanFrames(sessions, 0), Error);
}

TEST(FramesTest, LabelWindowOverlap) {
  const std::vector<TimeInterval> attacks = {{10, 20}};
  EXPECT_EQ(LabelWindow(0, 10, attacks), FrameLabel::kLegitimate);
  EXPECT_EQ(LabelWindow(0, 11, attacks), FrameLabel::kDdos);
  EXPECT_EQ(LabelWindow(20, 30, attacks), FrameLabel::kDdos);
  EXPECT_EQ(LabelWindow(21, 30, attacks), FrameLabel::kLegitimate);
  EXPECT_EQ(LabelWindow(0, 100, {}), FrameLabel::kLegitimate);
  EXPECT_EQ(ParseFrameLabel(FrameLabelName(FrameLabel::kDdos)), FrameLabel::kDdos);
  EXPECT_FALSE(ParseFrameLabel("bogus").has_value());
}

TEST(FramesTest, DiffImageIsAbsoluteDifference) {
  RgbaImage a(2, 1), b(2, 1);
  a.set(0, 0, {10, 200, 30, 255});
  b.set(0, 0, {50, 100, 30, 128});
  const RgbaImage d = DiffImage(a, b);
  EXPECT_EQ(d.at(0, 0), (Rgba{40, 100, 0, 255}));
  EXPECT_EQ(d.at(1, 0), (Rgba{0, 0, 0, 255}));
  EXPECT_THROW(DiffImage(a, RgbaImage(3, 1)), Error);
}

TEST(FramesTest, FrameStreamDrawsOnePolygonPerSlice) {
  const std::vector<Session> sessions = {
      MakeSession(1, {0, 1'000'000, 2'000'000}),
      MakeSession(2, {500'000, 7'000'000}),
  };
  const ProjectionBasis basis = DefaultBasis(kFeatureDim);
  const CanvasCalibration cal = MakeCalibration(CoordinateBounds(basis), 100, 100);
  const auto frames = FrameStream(sessions, basis, cal, 5.0);
  ASSERT_EQ(frames.size(), 2u);
  EXPECT_EQ(frames[0].polygons.size(), 2u);
  EXPECT_EQ(frames[1].polygons.size(), 1u);
  EXPECT_EQ(frames[1].polygons[0].session_id, 2u);
  EXPECT_EQ(frames[0].polygons[0].color, SessionColor(1));
  bool drawn = false;
  for (int y = 0; y < 100 && !drawn; ++y) {
    for (int x = 0; x < 100; ++x) drawn |= frames[0].pixels.at(x, y) != Rgba{0, 0, 0, 255};
  }
  EXPECT_TRUE(drawn);
}

TEST(PngTest, RoundTripIsLossless) {
  testing::TempDir dir;
  RgbaImage img(17, 9);
  std::mt19937 g(5);
  for (int y = 0; y < 9; ++y) {
    for (int x = 0; x < 17; ++x) {
      img.set(x, y, {static_cast<std::uint8_t>(g()), static_cast<std::uint8_t>(g()),
                     static_cast<std::uint8_t>(g()), static_cast<std::uint8_t>(g())});
    }
  }
  WritePng(dir / "a.png", img);
  EXPECT_EQ(ReadPng(dir / "a.png"), img);
  EXPECT_THROW(ReadPng(dir / "missing.png"), Error);
}

}  // namespace
}  // namespace synids
