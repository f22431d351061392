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

#include "taskaug/taskgen/config.hpp"

#include <string>

#include "taskaug/common/error.hpp"

namespace taskaug::taskgen {

void GenerationConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0)) throw InvalidArgument(std::string(name) + " must be > 0");
  };
  positive(min_depth_margin, "min_depth_margin");
  positive(min_brightness_margin, "min_brightness_margin");
  positive(min_position_margin, "min_position_margin");
  positive(min_point_distance, "min_point_distance");
  if (!(min_size_ratio > 1)) throw InvalidArgument("min_size_ratio must be > 1");
  if (max_tasks_per_type_per_image < 1) throw InvalidArgument("max_tasks_per_type_per_image must be >= 1");
  if (binary_balance_tolerance < 0 || binary_balance_tolerance > 0.5) {
    throw InvalidArgument("binary_balance_tolerance must be in [0, 0.5]");
  }
  if (budget < 0) throw InvalidArgument("budget must be >= 0");
  if (min_tile_size < 1) throw InvalidArgument("min_tile_size must be >= 1");
  if (!(dominant_hue_share > 0 && dominant_hue_share <= 1)) throw InvalidArgument("dominant_hue_share must be in (0, 1]");
  if (color_tile_size < 1) throw InvalidArgument("color_tile_size must be >= 1");
  grid.validate();
}

}  // namespace taskaug::taskgen
