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

#ifndef SYNIDS_JSONL_H_
#define SYNIDS_JSONL_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "synids/packet.h"

namespace synids {

struct LineError {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct JsonlParseResult {
  std::vector<PacketMeta> packets;
  std::vector<LineError> errors;  // one per skipped line
};

// One JSON object per line, keys named after the PacketMeta fields. Blank
// lines are ignored; invalid lines are skipped and reported.
JsonlParseResult ParseMetadataJsonl(std::istream& in);
JsonlParseResult ReadMetadataJsonlFile(const std::filesystem::path& path);

std::string PacketToJsonLine(const PacketMeta& p);
void WriteMetadataJsonl(std::span<const PacketMeta> packets,
                        std::ostream& out);

}  // namespace synids

#endif  // SYNIDS_JSONL_H_
