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

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "taskaug/core/raster.hpp"

namespace taskaug::ingest {

// COCO run-length encoding: column-major runs alternating 0s and 1s,
// starting with a (possibly empty) run of 0s.
Mask decode_rle_counts(const std::vector<std::uint32_t>& counts, int width, int height);

// Decodes the compressed string form used by pycocotools.
std::vector<std::uint32_t> decode_rle_string(std::string_view s);
std::string encode_rle_string(const std::vector<std::uint32_t>& counts);

std::vector<std::uint32_t> encode_rle_counts(const Mask& mask);

// Fills pixels whose centers fall inside any of the polygons (even-odd rule).
// Each polygon is a flat list x0,y0,x1,y1,...
Mask rasterize_polygons(const std::vector<std::vector<double>>& polygons, int width, int height);

}  // namespace taskaug::ingest
