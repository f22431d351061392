// Copyright 2026 The taskaug Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>

#include "taskaug/core/raster.hpp"

namespace taskaug::io {

// Reads PNG (any bit depth/color type, converted to 8-bit RGB) or JPEG.
// Throws IoError on unreadable files.
RgbImage read_rgb(const std::filesystem::path& path);

// Encodes 8-bit RGB PNG bytes. Output is deterministic for identical input.
std::string encode_png(const RgbImage& image);
void write_png(const std::filesystem::path& path, const RgbImage& image);

// Reads a 16-bit (or 8-bit, widened) single-channel PNG.
Gray16Image read_gray16_png(const std::filesystem::path& path);
void write_gray16_png(const std::filesystem::path& path, const Gray16Image& image);

}  // namespace taskaug::io
