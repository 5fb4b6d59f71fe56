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

#include "synids/jsonl.h"

#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "json.hpp"
#include "synids/error.h"

namespace synids {
namespace {

using nlohmann::json;

template <typename T>
T Field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  }
  if (!it->is_number_integer()) {
    throw std::invalid_argument(std::string("field \"") + key +
                                "\" is not an integer");
  }
  if constexpr (std::is_signed_v<T>) {
    const std::int64_t v = it->get<std::int64_t>();
    return static_cast<T>(v);
  } else {
    if (it->is_number_unsigned()) {
      const std::uint64_t v = it->get<std::uint64_t>();
      if (v > std::numeric_limits<T>::max()) {
        throw std::invalid_argument(std::string("field \"") + key +
                                    "\" out of range");
      }
      return static_cast<T>(v);
    }
    const std::int64_t v = it->get<std::int64_t>();
    if (v < 0 || static_cast<std::uint64_t>(v) > std::numeric_limits<T>::max()) {
      throw std::invalid_argument(std::string("field \"") + key +
                                  "\" out of range");
    }
    return static_cast<T>(v);
  }
}

PacketMeta PacketFromJson(const json& obj) {
  if (!obj.is_object()) throw std::invalid_argument("line is not an object");
  PacketMeta p;
  p.session_id = Field<std::uint64_t>(obj, "session_id");
  p.timestamp = Field<std::int64_t>(obj, "timestamp");
  const auto dir = Field<std::uint8_t>(obj, "direction");
  if (dir > 1) throw std::invalid_argument("direction must be 0 or 1");
  p.direction = static_cast<Direction>(dir);
  p.src_addr = Field<std::uint32_t>(obj, "src_addr");
  p.dst_addr = Field<std::uint32_t>(obj, "dst_addr");
  p.src_port = Field<std::uint16_t>(obj, "src_port");
  p.dst_port = Field<std::uint16_t>(obj, "dst_port");
  p.size_bytes = Field<std::uint16_t>(obj, "size_bytes");
  p.protocol = Field<std::uint8_t>(obj, "protocol");
  p.tcp_flags = Field<std::uint8_t>(obj, "tcp_flags");
  p.tcp_tsval = Field<std::uint32_t>(obj, "tcp_tsval");
  p.payload_len = Field<std::uint16_t>(obj, "payload_len");
  if (p.payload_len > p.size_bytes) {
    throw std::invalid_argument("payload_len exceeds size_bytes");
  }
  return p;
}

}  // namespace

JsonlParseResult ParseMetadataJsonl(std::istream& in) {
  JsonlParseResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      result.packets.push_back(PacketFromJson(json::parse(line)));
    } catch (const std::exception& e) {
      result.errors.push_back({line_no, e.what()});
    }
  }
  return result;
}

JsonlParseResult ReadMetadataJsonlFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileError, "cannot open " + path.string());
  return ParseMetadataJsonl(in);
}

std::string PacketToJsonLine(const PacketMeta& p) {
  json obj = {
      {"session_id", p.session_id},
      {"timestamp", p.timestamp},
      {"direction", static_cast<int>(p.direction)},
      {"src_addr", p.src_addr},
      {"dst_addr", p.dst_addr},
      {"src_port", p.src_port},
      {"dst_port", p.dst_port},
      {"size_bytes", p.size_bytes},
      {"protocol", p.protocol},
      {"tcp_flags", p.tcp_flags},
      {"tcp_tsval", p.tcp_tsval},
      {"payload_len", p.payload_len},
  };
  return obj.dump();
}

void WriteMetadataJsonl(std::span<const PacketMeta> packets,
                        std::ostream& out) {
  for (const PacketMeta& p : packets) out << PacketToJsonLine(p) << '\n';
  if (!out) throw Error(ErrorCode::kFileError, "jsonl write failed");
}

}  // namespace synids
