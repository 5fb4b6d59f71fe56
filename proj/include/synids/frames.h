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

// Time-windowed rendering of sessions into a stream of frames.

#ifndef SYNIDS_FRAMES_H_
#define SYNIDS_FRAMES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "synids/packet.h"
#include "synids/projection.h"
#include "synids/raster.h"

namespace synids {

enum class FrameLabel { kLegitimate, kDdos, kUnlabeled };

std::string_view FrameLabelName(FrameLabel label);
std::optional<FrameLabel> ParseFrameLabel(std::string_view name);

struct SessionPolygon {
  std::uint64_t session_id = 0;
  std::vector<PlanePoint> hull;  // CCW, world coordinates
  Rgba color;
};

struct SessionImageFrame {
  RgbaImage pixels;
  std::int64_t window_start = 0;  // microseconds, inclusive
  std::int64_t window_end = 0;    // microseconds, exclusive
  std::vector<SessionPolygon> polygons;
  FrameLabel label = FrameLabel::kUnlabeled;
};

// Contiguous run of one session's packets that falls inside a window.
struct SessionSlice {
  std::size_t session = 0;  // index into the session list
  std::size_t begin = 0;    // packet range [begin, end)
  std::size_t end = 0;
};

struct FramePlan {
  std::size_t index = 0;
  std::int64_t window_start = 0;
  std::int64_t window_end = 0;
  std::vector<SessionSlice> slices;  // in session order
};

// Interval [start, end] in microseconds.
struct TimeInterval {
  std::int64_t start = 0;
  std::int64_t end = 0;
};

inline constexpr double kDefaultWindowSeconds = 5.0;

// Tumbling windows of `window_us` from the earliest packet; the count is
// ceil(span / window) (at least one) and the final window also takes packets
// stamped exactly at its end. Each packet lands in exactly one window.
std::vector<FramePlan> PlanFrames(std::span<const Session> sessions,
                                  std::int64_t window_us);

// Renders one planned frame: per session, the projected points of its packets
// in the window form a hull that is filled in session order.
SessionImageFrame RenderFrame(const FramePlan& plan,
                              std::span<const Session> sessions,
                              const ProjectionBasis& basis,
                              const CanvasCalibration& cal);

// PlanFrames + RenderFrame over the whole capture.
std::vector<SessionImageFrame> FrameStream(std::span<const Session> sessions,
                                           const ProjectionBasis& basis,
                                           const CanvasCalibration& cal,
                                           double window_s);

// Per-pixel absolute difference of two equally sized frames; alpha is 255.
RgbaImage DiffImage(const RgbaImage& previous, const RgbaImage& current);

// ddos when the window overlaps any attack interval, legitimate otherwise.
FrameLabel LabelWindow(std::int64_t window_start, std::int64_t window_end,
                       std::span<const TimeInterval> attacks);

std::int64_t WindowMicros(double window_s);

}  // namespace synids

#endif  // SYNIDS_FRAMES_H_
