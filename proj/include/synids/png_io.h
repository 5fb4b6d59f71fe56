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

#ifndef SYNIDS_PNG_IO_H_
#define SYNIDS_PNG_IO_H_

#include <filesystem>

#include "synids/raster.h"

namespace synids {

// 8-bit RGBA PNG. Both throw Error(kFileError) on failure.
void WritePng(const std::filesystem::path& path, const RgbaImage& image);
RgbaImage ReadPng(const std::filesystem::path& path);

}  // namespace synids

#endif  // SYNIDS_PNG_IO_H_
