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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taskaug/core/raster.hpp"

namespace taskaug {

struct ObjectInstance {
  std::string object_id;
  std::string class_name;
  Mask mask;
  BBox bbox;
};

struct AnnotatedImage {
  std::string image_id;
  int width = 0;
  int height = 0;
  RgbImage pixels;
  std::vector<ObjectInstance> objects;
  std::string domain_tag;

  const ObjectInstance* find_object(std::string_view id) const;
};

enum class Source { heuristic, model, human };
enum class TriState { yes, no, unresolved };
enum class Direction { toward_camera, away, left, right, unresolved };

std::string_view to_string(Source s);
std::string_view to_string(TriState s);
std::string_view to_string(Direction d);
std::optional<TriState> parse_tristate(std::string_view s);
std::optional<Direction> parse_direction(std::string_view s);

// Provenance of each enrichment attribute: geometry and photometry come from
// existing annotations, depth from a model, the rest from human raters.
std::optional<Source> attribute_source(std::string_view attribute);

struct MetadataRecord {
  std::string image_id;
  std::string object_id;
  std::string class_name;
  BBox bbox;

  double relative_size = 0.0;
  std::int64_t segmentation_area = 0;
  bool bbox_touches_bbox = false;
  bool segmask_touches_segmask = false;
  std::vector<std::string> segmask_touches_segmask_with;
  double brightness_score = 0.0;
  double michelson_contrast_score = 0.0;

  std::optional<double> average_depth;
  std::optional<double> top_95_depth;
  std::optional<double> bottom_5_depth;

  std::optional<TriState> occluded;
  std::optional<TriState> truncated;
  std::optional<Direction> direction;

  // One entry per attribute that is present on this record.
  std::map<std::string, Source> source_tags;

  void tag(const std::string& attribute);
};

// Image-level measurements used by whole-image tasks.
struct ImageMetadata {
  std::string image_id;
  double brightness = 0.0;
};

enum class TaskType : std::uint8_t {
  T1_1, T1_2, T1_3,
  T2_1, T2_2, T2_3, T2_4, T2_5, T2_6,
  T3_1, T3_2, T3_3, T3_4, T3_5,
  T4_1, T4_2,
  T5_1, T5_2, T5_3, T5_4,
  T6_1, T6_2,
  T7_1, T7_2,
  T8_1,
};
inline constexpr std::size_t kTaskTypeCount = 25;

enum class AnswerType { binary, count, quiz4, color };

const std::array<TaskType, kTaskTypeCount>& all_task_types();
// "T3.1" style identifier.
std::string_view task_code(TaskType t);
std::string_view task_name(TaskType t);
std::optional<TaskType> parse_task_type(std::string_view code);
AnswerType answer_type_of(TaskType t);
std::string_view to_string(AnswerType a);
std::optional<AnswerType> parse_answer_type(std::string_view s);

// True if `answer` is a canonical answer token for the answer type: "yes"/"no",
// "a".."d", "red"/"green", or a decimal integer without leading zeros.
bool is_canonical_answer(AnswerType type, std::string_view answer);

enum class MarkerColor { red, green };
enum class MarkerStyle { box, point };
std::string_view to_string(MarkerColor c);
std::string_view to_string(MarkerStyle s);
std::optional<MarkerColor> parse_marker_color(std::string_view s);
std::optional<MarkerStyle> parse_marker_style(std::string_view s);

struct Point {
  int x = 0, y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

// One overlay request: a box around an object or a disc on a point.
struct Marking {
  MarkerColor color = MarkerColor::red;
  MarkerStyle style = MarkerStyle::box;
  std::string object_id;         // for box markings
  std::optional<Point> point;    // for point markings

  friend bool operator==(const Marking&, const Marking&) = default;
};

struct TaskInstance {
  std::string task_id;
  TaskType task_type = TaskType::T1_1;
  AnswerType answer_type = AnswerType::binary;
  std::string image_id;
  std::string domain;
  std::vector<std::string> image_refs;
  std::string prompt_text;
  std::vector<std::string> options;
  std::string answer_key;
  std::vector<std::string> subject_object_ids;
  std::vector<Marking> markings;
  std::uint64_t generation_seed = 0;
  std::vector<std::string> provenance;
};

enum class EvalStatus { answered, unparseable, unanswered_safety, transport_error };
std::string_view to_string(EvalStatus s);
std::optional<EvalStatus> parse_eval_status(std::string_view s);

struct EvalRecord {
  std::string task_id;
  std::string model_id;
  std::string raw_response;
  std::optional<std::string> parsed_answer;
  EvalStatus status = EvalStatus::transport_error;
  double latency_ms = 0.0;
  int attempt_count = 0;
};

struct HumanRating {
  std::string task_id;  // set for task-level ratings
  std::string image_id;
  std::string object_id;
  std::string attribute;  // occluded | truncated | direction for object-level ratings
  std::string rater_id;
  std::string answer;
  int rank_in_sequence = 0;

  // Grouping key: the task id, or image/object/attribute for object ratings.
  std::string item_key() const;
};

}  // namespace taskaug
