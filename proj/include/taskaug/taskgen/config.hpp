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

#include "taskaug/imageops/ops.hpp"

namespace taskaug::taskgen {

struct GenerationConfig {
  std::uint64_t seed = 0;
  double min_size_ratio = 1.5;
  double min_depth_margin = 0.10;       // relative depth units
  double min_brightness_margin = 0.10;  // luma in [0, 1]
  double min_position_margin = 0.05;    // fraction of the queried image dimension
  double min_point_distance = 0.10;     // fraction of the image diagonal
  int max_tasks_per_type_per_image = 1;
  double binary_balance_tolerance = 0.1;

  int budget = 0;  // images per domain; 0 keeps every image
  unsigned workers = 1;
  int min_tile_size = 8;
  double dominant_hue_share = 0.40;
  int color_tile_size = 64;
  imageops::CorruptionGrid grid;

  // Throws InvalidArgument when a margin is not positive or the grid is invalid.
  void validate() const;
};

}  // namespace taskaug::taskgen
