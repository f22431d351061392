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

#include <string>
#include <string_view>
#include <vector>

#include "taskaug/core/types.hpp"
#include "taskaug/ingest/coco.hpp"

namespace taskaug::ingest {

enum class HumanAttribute { occluded, truncated, direction };
std::string_view to_string(HumanAttribute a);
std::optional<HumanAttribute> parse_human_attribute(std::string_view s);
// Answer tokens raters may give for the attribute.
std::vector<std::string> allowed_answers(HumanAttribute a);

struct AnnotationJobItem {
  std::string image_id;
  std::string object_id;
  HumanAttribute attribute;
  BBox crop;
};

struct AnnotationJob {
  std::string job_id;
  std::vector<AnnotationJobItem> items;
  int max_raters = 5;
  int consensus_threshold = 4;
};

struct ExportedJob {
  AnnotationJob job;
  std::string csv;
};

// One row per (object, attribute) in (image_id, object_id, attribute) order.
// Throws InvalidArgument when `attributes` is empty or threshold > max_raters.
ExportedJob export_annotation_job(const std::vector<AnnotatedImage>& dataset,
                                  const std::vector<HumanAttribute>& attributes,
                                  std::string job_id, int max_raters = 5,
                                  int consensus_threshold = 4);

struct ImportedRatings {
  std::vector<HumanRating> ratings;  // only items without errors, grouped by item, rank order
  std::vector<ItemError> errors;
};

// Reads rater results. Columns (by header name): job_id, image_id, object_id,
// task_id, attribute, rater_id, answer, rank_in_sequence. Items with
// non-consecutive ranks or unknown answer tokens are reported and dropped.
ImportedRatings import_human_annotations(std::string_view csv_text);

std::string format_ratings_csv(const std::vector<HumanRating>& ratings, std::string_view job_id);

}  // namespace taskaug::ingest
