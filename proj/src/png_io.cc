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

#include "synids/png_io.h"

#include <png.h>

#include <cstring>
#include <string>

#include "synids/error.h"

namespace synids {

void WritePng(const std::filesystem::path& path, const RgbaImage& image) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = PNG_FORMAT_RGBA;
  if (!png_image_write_to_file(&png, path.c_str(), 0, image.bytes().data(), 0,
                               nullptr)) {
    throw Error(ErrorCode::kFileError,
                "cannot write " + path.string() + ": " + png.message);
  }
}

RgbaImage ReadPng(const std::filesystem::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    throw Error(ErrorCode::kFileError,
                "cannot read " + path.string() + ": " + png.message);
  }
  png.format = PNG_FORMAT_RGBA;
  RgbaImage image(static_cast<int>(png.width), static_cast<int>(png.height));
  if (!png_image_finish_read(&png, nullptr, image.bytes().data(), 0,
                             nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw Error(ErrorCode::kFileError,
                "cannot decode " + path.string() + ": " + msg);
  }
  return image;
}

}  // namespace synids
