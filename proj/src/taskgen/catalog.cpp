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

#include "taskaug/taskgen/catalog.hpp"

namespace taskaug::taskgen {

const std::vector<TaskCatalogEntry>& task_catalog() {
  using T = TaskType;
  static const std::vector<TaskCatalogEntry> catalog = {
      {T::T1_1, {"class_name"}, "positive: a present class; negative: a dataset class absent from the image", "yes iff the class is present", "T1.1"},
      {T::T1_2, {"class_name"}, "a present class", "number of instances of the class", "T1.2"},
      {T::T1_3, {"class_name"}, "at least one object", "yes iff the image has two or more objects", "T1.3"},
      {T::T2_1, {"occluded"}, "resolved occlusion consensus", "no -> fully visible, yes -> partially occluded", "T2.1"},
      {T::T2_2, {"truncated"}, "resolved truncation consensus", "consensus answer", "T2.2"},
      {T::T2_3, {"segmentation_area"}, "region blur measurably lowers Laplacian variance in the mask", "variant with the blurred object", "T2.3"},
      {T::T2_4, {"segmentation_area"}, "region noise measurably raises Laplacian variance in the mask", "variant with the noisy object", "T2.4"},
      {T::T2_5, {}, "every blur variant has lower Laplacian variance than the original", "the original image", "T2.5"},
      {T::T2_6, {}, "every noise variant has higher Laplacian variance than the original", "the original image", "T2.6"},
      {T::T3_1, {"segmentation_area"}, "area ratio >= min_size_ratio", "colour of the larger object", "T3.1"},
      {T::T3_2, {"bbox_x_min", "bbox_x_max"}, "bbox-centre x gap >= min_position_margin * width", "colour of the object with smaller centre x", "T3.2"},
      {T::T3_3, {"bbox_y_min", "bbox_y_max"}, "bbox-centre y gap >= min_position_margin * height", "colour of the object with larger centre y", "T3.3"},
      {T::T3_4, {"bbox_x_min", "bbox_x_max"}, "no other object centre in the margin band left of the marked one", "yes iff another centre lies left by the margin", "T3.4"},
      {T::T3_5, {"bbox_y_min", "bbox_y_max"}, "no other object centre in the margin band below the marked one", "yes iff another centre lies lower by the margin", "T3.5"},
      {T::T4_1, {"segmask_touches_segmask_with"}, "any object pair", "yes iff the masks are adjacent", "T4.1"},
      {T::T4_2, {"direction"}, "resolved direction consensus", "toward -> A, away -> B, left -> C, right -> D", "T4.2"},
      {T::T5_1, {"brightness_score"}, ">= dominant_hue_share of mask pixels in one hue bin", "tile of the dominant hue bin", "T5.1"},
      {T::T5_2, {}, "pairwise mean-luma gaps >= min_brightness_margin", "variant ranked 2nd by mean luma", "T5.2"},
      {T::T5_3, {}, "every colour shift changes the image measurably", "the original image", "T5.3"},
      {T::T5_4, {}, "local 9x9 luma gap >= min_brightness_margin, distance >= min_point_distance", "yes iff the red point is brighter", "T5.4"},
      {T::T6_1, {"average_depth"}, "average depth gap >= min_depth_margin", "colour of the object with larger relative depth", "T6.1"},
      {T::T6_2, {}, "point depth gap >= min_depth_margin, distance >= min_point_distance", "yes iff the red point is closer", "T6.2"},
      {T::T7_1, {}, "disjoint tile placement; correct tile differs from every rotated distractor", "the rotated correct tile", "T7.1"},
      {T::T7_2, {}, "disjoint tile placement; correct tile differs from every distractor", "the correct tile", "T7.2"},
      {T::T8_1, {}, "always", "the unrotated image", "T8.1"},
  };
  return catalog;
}

}  // namespace taskaug::taskgen
