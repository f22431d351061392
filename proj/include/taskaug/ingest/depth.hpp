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
#include <map>
#include <string>
#include <utility>

#include "taskaug/core/raster.hpp"

namespace taskaug::ingest {

enum class DepthNormalization { relative_0_1 };

// Relative depth: 16-bit values map linearly onto [0, 1]; larger is closer.
struct DepthMap {
  std::string image_id;
  Gray16Image raster;
  DepthNormalization normalization = DepthNormalization::relative_0_1;

  double at(int x, int y) const { return raster.at(x, y) / 65535.0; }
  int width() const { return raster.width; }
  int height() const { return raster.height; }
};

using ImageDims = std::map<std::string, std::pair<int, int>>;  // image_id -> (width, height)

// Loads every depth map listed in a TSV manifest ("image_id<TAB>filename",
// filenames relative to `directory`). Throws IoError on a missing file and
// InvalidArgument on a dimension mismatch or unknown image, naming the image.
std::map<std::string, DepthMap> load_depth_maps(const std::filesystem::path& directory,
                                                const std::filesystem::path& manifest,
                                                const ImageDims& dims);

}  // namespace taskaug::ingest
