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

#include "taskaug/core/types.hpp"

#include <algorithm>

#include "taskaug/core/validate.hpp"

namespace taskaug {

std::optional<BBox> tight_bbox(const Mask& mask) {
  int x0 = mask.width, y0 = mask.height, x1 = -1, y1 = -1;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (!mask.at(x, y)) continue;
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  if (x1 < 0) return std::nullopt;
  return BBox{x0, y0, x1 + 1, y1 + 1};
}

const ObjectInstance* AnnotatedImage::find_object(std::string_view id) const {
  for (const auto& o : objects) {
    if (o.object_id == id) return &o;
  }
  return nullptr;
}

std::string_view to_string(Source s) {
  switch (s) {
    case Source::heuristic: return "heuristic";
    case Source::model: return "model";
    case Source::human: return "human";
  }
  return "?";
}

std::string_view to_string(TriState s) {
  switch (s) {
    case TriState::yes: return "yes";
    case TriState::no: return "no";
    case TriState::unresolved: return "unresolved";
  }
  return "?";
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::toward_camera: return "toward_camera";
    case Direction::away: return "away";
    case Direction::left: return "left";
    case Direction::right: return "right";
    case Direction::unresolved: return "unresolved";
  }
  return "?";
}

std::optional<TriState> parse_tristate(std::string_view s) {
  if (s == "yes") return TriState::yes;
  if (s == "no") return TriState::no;
  if (s == "unresolved") return TriState::unresolved;
  return std::nullopt;
}

std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "toward_camera") return Direction::toward_camera;
  if (s == "away") return Direction::away;
  if (s == "left") return Direction::left;
  if (s == "right") return Direction::right;
  if (s == "unresolved") return Direction::unresolved;
  return std::nullopt;
}

std::optional<Source> attribute_source(std::string_view a) {
  static constexpr std::string_view kHeuristic[] = {
      "relative_size",       "segmentation_area",        "bbox_touches_bbox",
      "segmask_touches_segmask", "segmask_touches_segmask_with", "brightness_score",
      "michelson_contrast_score", "bbox_x_min", "bbox_y_min", "bbox_x_max", "bbox_y_max",
      "class_name"};
  static constexpr std::string_view kModel[] = {"average_depth", "top_95_depth", "bottom_5_depth"};
  static constexpr std::string_view kHuman[] = {"occluded", "truncated", "direction"};
  if (std::ranges::find(kHeuristic, a) != std::end(kHeuristic)) return Source::heuristic;
  if (std::ranges::find(kModel, a) != std::end(kModel)) return Source::model;
  if (std::ranges::find(kHuman, a) != std::end(kHuman)) return Source::human;
  return std::nullopt;
}

void MetadataRecord::tag(const std::string& attribute) {
  source_tags[attribute] = attribute_source(attribute).value();
}

namespace {

struct TaskInfo {
  TaskType type;
  std::string_view code;
  std::string_view name;
  AnswerType answer;
};

constexpr std::array<TaskInfo, kTaskTypeCount> kTasks{{
    {TaskType::T1_1, "T1.1", "Is Object Present", AnswerType::binary},
    {TaskType::T1_2, "T1.2", "Count Objects", AnswerType::count},
    {TaskType::T1_3, "T1.3", "Is Other Object Present", AnswerType::binary},
    {TaskType::T2_1, "T2.1", "Is Object Occluded", AnswerType::quiz4},
    {TaskType::T2_2, "T2.2", "Is Object Truncated", AnswerType::binary},
    {TaskType::T2_3, "T2.3", "Blur Object", AnswerType::quiz4},
    {TaskType::T2_4, "T2.4", "Noise Object", AnswerType::quiz4},
    {TaskType::T2_5, "T2.5", "Blur Of Image", AnswerType::quiz4},
    {TaskType::T2_6, "T2.6", "Noise Of Image", AnswerType::quiz4},
    {TaskType::T3_1, "T3.1", "Size Comparison", AnswerType::color},
    {TaskType::T3_2, "T3.2", "Horizontal Comparison", AnswerType::color},
    {TaskType::T3_3, "T3.3", "Vertical Comparison", AnswerType::color},
    {TaskType::T3_4, "T3.4", "Is Other Object Left", AnswerType::binary},
    {TaskType::T3_5, "T3.5", "Is Other Object Lower", AnswerType::binary},
    {TaskType::T4_1, "T4.1", "Is Object Touching Other Object", AnswerType::binary},
    {TaskType::T4_2, "T4.2", "Is Object Facing Camera", AnswerType::quiz4},
    {TaskType::T5_1, "T5.1", "Color Object Matching", AnswerType::quiz4},
    {TaskType::T5_2, "T5.2", "2nd Brightest Image", AnswerType::quiz4},
    {TaskType::T5_3, "T5.3", "Color Of Image", AnswerType::quiz4},
    {TaskType::T5_4, "T5.4", "Brightness Comparison Of Two Points", AnswerType::binary},
    {TaskType::T6_1, "T6.1", "Depth Comparison", AnswerType::color},
    {TaskType::T6_2, "T6.2", "Depth Two Points", AnswerType::binary},
    {TaskType::T7_1, "T7.1", "Jigsaw Rotation Puzzle", AnswerType::quiz4},
    {TaskType::T7_2, "T7.2", "Jigsaw Puzzle", AnswerType::quiz4},
    {TaskType::T8_1, "T8.1", "Rotation Of Image", AnswerType::quiz4},
}};

const TaskInfo& info(TaskType t) { return kTasks[static_cast<std::size_t>(t)]; }

}  // namespace

const std::array<TaskType, kTaskTypeCount>& all_task_types() {
  static const auto types = [] {
    std::array<TaskType, kTaskTypeCount> out{};
    for (std::size_t i = 0; i < kTaskTypeCount; ++i) out[i] = kTasks[i].type;
    return out;
  }();
  return types;
}

std::string_view task_code(TaskType t) { return info(t).code; }
std::string_view task_name(TaskType t) { return info(t).name; }
AnswerType answer_type_of(TaskType t) { return info(t).answer; }

std::optional<TaskType> parse_task_type(std::string_view code) {
  for (const auto& ti : kTasks) {
    if (ti.code == code) return ti.type;
  }
  return std::nullopt;
}

std::string_view to_string(AnswerType a) {
  switch (a) {
    case AnswerType::binary: return "binary";
    case AnswerType::count: return "count";
    case AnswerType::quiz4: return "quiz4";
    case AnswerType::color: return "color";
  }
  return "?";
}

std::optional<AnswerType> parse_answer_type(std::string_view s) {
  for (auto a : {AnswerType::binary, AnswerType::count, AnswerType::quiz4, AnswerType::color}) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

bool is_canonical_answer(AnswerType type, std::string_view a) {
  switch (type) {
    case AnswerType::binary: return a == "yes" || a == "no";
    case AnswerType::color: return a == "red" || a == "green";
    case AnswerType::quiz4: return a == "a" || a == "b" || a == "c" || a == "d";
    case AnswerType::count:
      if (a.empty()) return false;
      if (a.size() > 1 && a[0] == '0') return false;
      return std::ranges::all_of(a, [](char c) { return c >= '0' && c <= '9'; });
  }
  return false;
}

std::string_view to_string(MarkerColor c) { return c == MarkerColor::red ? "red" : "green"; }
std::string_view to_string(MarkerStyle s) { return s == MarkerStyle::box ? "box" : "point"; }

std::optional<MarkerColor> parse_marker_color(std::string_view s) {
  if (s == "red") return MarkerColor::red;
  if (s == "green") return MarkerColor::green;
  return std::nullopt;
}

std::optional<MarkerStyle> parse_marker_style(std::string_view s) {
  if (s == "box") return MarkerStyle::box;
  if (s == "point") return MarkerStyle::point;
  return std::nullopt;
}

std::string_view to_string(EvalStatus s) {
  switch (s) {
    case EvalStatus::answered: return "answered";
    case EvalStatus::unparseable: return "unparseable";
    case EvalStatus::unanswered_safety: return "unanswered_safety";
    case EvalStatus::transport_error: return "transport_error";
  }
  return "?";
}

std::optional<EvalStatus> parse_eval_status(std::string_view s) {
  for (auto st : {EvalStatus::answered, EvalStatus::unparseable, EvalStatus::unanswered_safety,
                  EvalStatus::transport_error}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

std::string HumanRating::item_key() const {
  if (!task_id.empty()) return task_id;
  return image_id + "/" + object_id + "/" + attribute;
}

ValidationReport validate_dataset(const std::vector<AnnotatedImage>& dataset) {
  ValidationReport report;
  auto add = [&](const std::string& image, const std::string& object, std::string kind,
                 std::string detail) {
    report.violations.push_back({image, object, std::move(kind), std::move(detail)});
  };

  std::vector<std::string_view> image_ids;
  for (const auto& img : dataset) image_ids.push_back(img.image_id);
  std::ranges::sort(image_ids);
  for (std::size_t i = 1; i < image_ids.size(); ++i) {
    if (image_ids[i] == image_ids[i - 1] && (i < 2 || image_ids[i - 2] != image_ids[i])) {
      add(std::string(image_ids[i]), "", "duplicate id", "image id appears more than once");
    }
  }

  for (const auto& img : dataset) {
    if (img.width <= 0 || img.height <= 0) {
      add(img.image_id, "", "bad dimensions",
          std::to_string(img.width) + "x" + std::to_string(img.height));
    }
    if (img.pixels.width != img.width || img.pixels.height != img.height) {
      add(img.image_id, "", "pixel dimension mismatch",
          "raster is " + std::to_string(img.pixels.width) + "x" + std::to_string(img.pixels.height));
    }

    std::vector<std::string_view> ids;
    for (const auto& obj : img.objects) ids.push_back(obj.object_id);
    std::ranges::sort(ids);
    for (std::size_t i = 1; i < ids.size(); ++i) {
      if (ids[i] == ids[i - 1] && (i < 2 || ids[i - 2] != ids[i])) {
        add(img.image_id, std::string(ids[i]), "duplicate id", "object id appears more than once");
      }
    }

    for (const auto& obj : img.objects) {
      if (obj.mask.width != img.width || obj.mask.height != img.height) {
        add(img.image_id, obj.object_id, "mask dimension mismatch", "");
        continue;
      }
      if (obj.bbox.x_min >= obj.bbox.x_max || obj.bbox.y_min >= obj.bbox.y_max) {
        add(img.image_id, obj.object_id, "degenerate bbox", "");
      }
      const auto tight = tight_bbox(obj.mask);
      if (!tight) {
        add(img.image_id, obj.object_id, "empty mask", "");
      } else if (!(*tight == obj.bbox)) {
        add(img.image_id, obj.object_id, "bbox not tight",
            "expected [" + std::to_string(tight->x_min) + "," + std::to_string(tight->y_min) + "," +
                std::to_string(tight->x_max) + "," + std::to_string(tight->y_max) + ")");
      }
    }
  }
  return report;
}

}  // namespace taskaug
