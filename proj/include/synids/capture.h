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

// Reader and writer for the classic libpcap capture file format
// (Ethernet link type, IPv4 TCP/UDP/ICMP only).

#ifndef SYNIDS_CAPTURE_H_
#define SYNIDS_CAPTURE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "synids/error.h"
#include "synids/packet.h"

namespace synids {

inline constexpr std::uint32_t kPcapMagic = 0xA1B2C3D4;
inline constexpr std::uint32_t kPcapMagicSwapped = 0xD4C3B2A1;
inline constexpr std::size_t kPcapGlobalHeaderSize = 24;
inline constexpr std::size_t kPcapRecordHeaderSize = 16;

struct CaptureOptions {
  // When set, packets sent by this address are outbound and all others
  // inbound. Otherwise a packet is inbound when its destination port is not
  // above its source port (client ephemeral port -> service port).
  std::optional<std::uint32_t> local_addr;
};

struct CaptureParseResult {
  std::vector<PacketMeta> packets;
  // Records that were not Ethernet/IPv4 TCP, UDP or ICMP, or were too short
  // to decode.
  std::size_t skipped = 0;
  // Set when parsing stopped early; `packets` holds what was read before.
  std::optional<ErrorCode> error;
  std::string error_message;
};

// Throws Error(kMalformedHeader) for a bad magic or short global header.
CaptureParseResult ParseCapture(std::span<const std::uint8_t> bytes,
                                const CaptureOptions& options = {});

CaptureParseResult ReadCaptureFile(const std::filesystem::path& path,
                                   const CaptureOptions& options = {});

Direction InferDirection(const PacketMeta& p, const CaptureOptions& options);

// Writes a little-endian capture. Only headers are stored (incl_len covers
// Ethernet + IPv4 + L4 header); orig_len carries size_bytes. tcp_tsval is
// written as a TCP timestamp option when nonzero.
void WriteCapture(std::span<const PacketMeta> packets, std::ostream& out);
std::vector<std::uint8_t> EncodeCapture(std::span<const PacketMeta> packets);

// Length of Ethernet + IPv4 + L4 headers as WriteCapture lays them out.
std::size_t EncodedHeaderLength(const PacketMeta& p);

}  // namespace synids

#endif  // SYNIDS_CAPTURE_H_
