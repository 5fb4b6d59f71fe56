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

#ifndef SYNIDS_PACKET_H_
#define SYNIDS_PACKET_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace synids {

enum class Direction : std::uint8_t { kInbound = 0, kOutbound = 1 };

namespace ipproto {
inline constexpr std::uint8_t kIcmp = 1;
inline constexpr std::uint8_t kTcp = 6;
inline constexpr std::uint8_t kUdp = 17;
}  // namespace ipproto

namespace tcpflag {
inline constexpr std::uint8_t kFin = 0x01;
inline constexpr std::uint8_t kSyn = 0x02;
inline constexpr std::uint8_t kRst = 0x04;
inline constexpr std::uint8_t kPsh = 0x08;
inline constexpr std::uint8_t kAck = 0x10;
}  // namespace tcpflag

// Metadata of one captured packet. Timestamps are microseconds since epoch.
struct PacketMeta {
  std::uint64_t session_id = 0;
  std::int64_t timestamp = 0;
  Direction direction = Direction::kInbound;
  std::uint32_t src_addr = 0;
  std::uint32_t dst_addr = 0;
  std::uint16_t src_port = 0;
  std::uint16_t dst_port = 0;
  std::uint16_t size_bytes = 0;
  std::uint8_t protocol = 0;
  std::uint8_t tcp_flags = 0;
  std::uint32_t tcp_tsval = 0;
  std::uint16_t payload_len = 0;

  friend bool operator==(const PacketMeta&, const PacketMeta&) = default;
};

struct Session {
  std::uint64_t session_id = 0;
  std::vector<PacketMeta> packets;  // sorted by timestamp
  std::int64_t first_seen = 0;
  std::int64_t last_seen = 0;
};

inline constexpr std::size_t kFeatureDim = 10;

// Unit-hypercube feature vector derived from a packet.
struct FeatureVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

// Fixed 10-component layout:
//   [direction, src_addr/2^32, dst_addr/2^32, src_port/65535, dst_port/65535,
//    min(size,1514)/1514, protocol/255, tcp_flags/255,
//    (tsval mod 2^20)/2^20, min(payload,1460)/1460]
FeatureVector Featurize(const PacketMeta& p);

// 64-bit id of the direction-normalized 5-tuple (protocol and the two
// addr:port endpoints in sorted order). Both directions of a flow hash alike.
std::uint64_t FlowHash(const PacketMeta& p);

}  // namespace synids

#endif  // SYNIDS_PACKET_H_
