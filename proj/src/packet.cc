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

#include "synids/packet.h"

#include <algorithm>
#include <utility>

namespace synids {
namespace {

constexpr double kTwo32 = 4294967296.0;
constexpr double kTwo20 = 1048576.0;

void HashBytes(std::uint64_t& h, std::uint64_t value, int bytes) {
  for (int i = 0; i < bytes; ++i) {
    h ^= (value >> (8 * i)) & 0xFF;
    h *= 0x100000001B3ull;
  }
}

}  // namespace

FeatureVector Featurize(const PacketMeta& p) {
  FeatureVector f;
  f.values = {
      p.direction == Direction::kOutbound ? 1.0 : 0.0,
      p.src_addr / kTwo32,
      p.dst_addr / kTwo32,
      p.src_port / 65535.0,
      p.dst_port / 65535.0,
      std::min<unsigned>(p.size_bytes, 1514) / 1514.0,
      p.protocol / 255.0,
      p.tcp_flags / 255.0,
      (p.tcp_tsval % (1u << 20)) / kTwo20,
      std::min<unsigned>(p.payload_len, 1460) / 1460.0,
  };
  return f;
}

std::uint64_t FlowHash(const PacketMeta& p) {
  std::uint64_t a = (std::uint64_t{p.src_addr} << 16) | p.src_port;
  std::uint64_t b = (std::uint64_t{p.dst_addr} << 16) | p.dst_port;
  if (b < a) std::swap(a, b);
  std::uint64_t h = 0xCBF29CE484222325ull;
  HashBytes(h, p.protocol, 1);
  HashBytes(h, a, 6);
  HashBytes(h, b, 6);
  return h;
}

}  // namespace synids
