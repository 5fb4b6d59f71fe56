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

#include "synids/frames.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "synids/error.h"
#include "synids/hull.h"

namespace synids {

std::string_view FrameLabelName(FrameLabel label) {
  switch (label) {
    case FrameLabel::kLegitimate: return "legitimate";
    case FrameLabel::kDdos: return "ddos";
    case FrameLabel::kUnlabeled: return "unlabeled";
  }
  return "unlabeled";
}

std::optional<FrameLabel> ParseFrameLabel(std::string_view name) {
  if (name == "legitimate") return FrameLabel::kLegitimate;
  if (name == "ddos") return FrameLabel::kDdos;
  if (name == "unlabeled") return FrameLabel::kUnlabeled;
  return std::nullopt;
}

std::int64_t WindowMicros(double window_s) {
  if (!(window_s > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "window must be positive");
  }
  return std::max<std::int64_t>(1, std::llround(window_s * 1e6));
}

std::vector<FramePlan> PlanFrames(std::span<const Session> sessions,
                                  std::int64_t window_us) {
  if (window_us <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "window must be positive");
  }
  std::int64_t t0 = std::numeric_limits<std::int64_t>::max();
  std::int64_t t1 = std::numeric_limits<std::int64_t>::min();
  for (const Session& s : sessions) {
    if (s.packets.empty()) continue;
    t0 = std::min(t0, s.packets.front().timestamp);
    t1 = std::max(t1, s.packets.back().timestamp);
  }
  if (t0 > t1) return {};

  const std::int64_t span = t1 - t0;
  const std::size_t count = std::max<std::size_t>(
      1, static_cast<std::size_t>((span + window_us - 1) / window_us));
  std::vector<FramePlan> plans(count);
  for (std::size_t i = 0; i < count; ++i) {
    plans[i].index = i;
    plans[i].window_start = t0 + static_cast<std::int64_t>(i) * window_us;
    plans[i].window_end = plans[i].window_start + window_us;
  }
  auto window_of = [&](std::int64_t t) {
    return std::min(count - 1, static_cast<std::size_t>((t - t0) / window_us));
  };
  for (std::size_t si = 0; si < sessions.size(); ++si) {
    const auto& pkts = sessions[si].packets;
    std::size_t begin = 0;
    while (begin < pkts.size()) {
      const std::size_t w = window_of(pkts[begin].timestamp);
      std::size_t end = begin + 1;
      while (end < pkts.size() && window_of(pkts[end].timestamp) == w) ++end;
      plans[w].slices.push_back({si, begin, end});
      begin = end;
    }
  }
  return plans;
}

SessionImageFrame RenderFrame(const FramePlan& plan,
                              std::span<const Session> sessions,
                              const ProjectionBasis& basis,
                              const CanvasCalibration& cal) {
  SessionImageFrame frame;
  frame.pixels = RgbaImage(cal.width, cal.height);
  frame.window_start = plan.window_start;
  frame.window_end = plan.window_end;
  frame.polygons.reserve(plan.slices.size());
  std::vector<PlanePoint> points;
  for (const SessionSlice& slice : plan.slices) {
    const Session& s = sessions[slice.session];
    points.clear();
    for (std::size_t i = slice.begin; i < slice.end; ++i) {
      points.push_back(ProjectPoint(Featurize(s.packets[i]).values, basis));
    }
    SessionPolygon poly;
    poly.session_id = s.session_id;
    poly.hull = ConvexHull(points);
    poly.color = SessionColor(s.session_id);
    Rasterize(frame.pixels, poly.hull, poly.color, cal);
    frame.polygons.push_back(std::move(poly));
  }
  return frame;
}

std::vector<SessionImageFrame> FrameStream(std::span<const Session> sessions,
                                           const ProjectionBasis& basis,
                                           const CanvasCalibration& cal,
                                           double window_s) {
  std::vector<SessionImageFrame> frames;
  for (const FramePlan& plan : PlanFrames(sessions, WindowMicros(window_s))) {
    frames.push_back(RenderFrame(plan, sessions, basis, cal));
  }
  return frames;
}

RgbaImage DiffImage(const RgbaImage& previous, const RgbaImage& current) {
  if (previous.width() != current.width() ||
      previous.height() != current.height()) {
    throw Error(ErrorCode::kDimensionMismatch, "frame sizes differ");
  }
  RgbaImage out(current.width(), current.height());
  auto src_a = previous.bytes();
  auto src_b = current.bytes();
  auto dst = out.bytes();
  for (std::size_t i = 0; i < dst.size(); i += 4) {
    for (std::size_t c = 0; c < 3; ++c) {
      dst[i + c] = static_cast<std::uint8_t>(
          std::abs(int{src_b[i + c]} - int{src_a[i + c]}));
    }
    dst[i + 3] = 255;
  }
  return out;
}

FrameLabel LabelWindow(std::int64_t window_start, std::int64_t window_end,
                       std::span<const TimeInterval> attacks) {
  for (const TimeInterval& iv : attacks) {
    if (iv.start < window_end && iv.end >= window_start) {
      return FrameLabel::kDdos;
    }
  }
  return FrameLabel::kLegitimate;
}

}  // namespace synids
