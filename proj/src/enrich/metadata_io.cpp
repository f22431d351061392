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

#include "taskaug/enrich/metadata_io.hpp"

#include <json.hpp>

#include <sstream>

#include "taskaug/common/error.hpp"

namespace taskaug::enrich {

using nlohmann::ordered_json;

std::string to_jsonl(const std::vector<MetadataRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    ordered_json j;
    j["image_id"] = r.image_id;
    j["object_id"] = r.object_id;
    j["class_name"] = r.class_name;
    j["bbox_x_min"] = r.bbox.x_min;
    j["bbox_y_min"] = r.bbox.y_min;
    j["bbox_x_max"] = r.bbox.x_max;
    j["bbox_y_max"] = r.bbox.y_max;
    j["relative_size"] = r.relative_size;
    j["segmentation_area"] = r.segmentation_area;
    j["bbox_touches_bbox"] = r.bbox_touches_bbox;
    j["segmask_touches_segmask"] = r.segmask_touches_segmask;
    j["segmask_touches_segmask_with"] = r.segmask_touches_segmask_with;
    j["brightness_score"] = r.brightness_score;
    j["michelson_contrast_score"] = r.michelson_contrast_score;
    if (r.average_depth) j["average_depth"] = *r.average_depth;
    if (r.top_95_depth) j["top_95_depth"] = *r.top_95_depth;
    if (r.bottom_5_depth) j["bottom_5_depth"] = *r.bottom_5_depth;
    if (r.occluded) j["occluded"] = to_string(*r.occluded);
    if (r.truncated) j["truncated"] = to_string(*r.truncated);
    if (r.direction) j["direction"] = to_string(*r.direction);
    ordered_json tags = ordered_json::object();
    for (const auto& [attr, src] : r.source_tags) tags[attr] = to_string(src);
    j["source_tags"] = std::move(tags);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<MetadataRecord> from_jsonl(std::string_view text) {
  std::vector<MetadataRecord> out;
  std::istringstream lines{std::string(text)};
  std::string line;
  std::size_t offset = 0;
  while (std::getline(lines, line)) {
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const ordered_json::parse_error& e) {
      throw ParseError(std::string("bad metadata record: ") + e.what(), line_start + e.byte);
    }
    MetadataRecord r;
    r.image_id = j.at("image_id").get<std::string>();
    r.object_id = j.at("object_id").get<std::string>();
    r.class_name = j.at("class_name").get<std::string>();
    r.bbox = {j.at("bbox_x_min").get<int>(), j.at("bbox_y_min").get<int>(),
              j.at("bbox_x_max").get<int>(), j.at("bbox_y_max").get<int>()};
    r.relative_size = j.at("relative_size").get<double>();
    r.segmentation_area = j.at("segmentation_area").get<std::int64_t>();
    r.bbox_touches_bbox = j.at("bbox_touches_bbox").get<bool>();
    r.segmask_touches_segmask = j.at("segmask_touches_segmask").get<bool>();
    r.segmask_touches_segmask_with = j.at("segmask_touches_segmask_with").get<std::vector<std::string>>();
    r.brightness_score = j.at("brightness_score").get<double>();
    r.michelson_contrast_score = j.at("michelson_contrast_score").get<double>();
    if (j.contains("average_depth")) r.average_depth = j["average_depth"].get<double>();
    if (j.contains("top_95_depth")) r.top_95_depth = j["top_95_depth"].get<double>();
    if (j.contains("bottom_5_depth")) r.bottom_5_depth = j["bottom_5_depth"].get<double>();
    if (j.contains("occluded")) r.occluded = parse_tristate(j["occluded"].get<std::string>());
    if (j.contains("truncated")) r.truncated = parse_tristate(j["truncated"].get<std::string>());
    if (j.contains("direction")) r.direction = parse_direction(j["direction"].get<std::string>());
    for (const auto& [attr, src] : j.at("source_tags").items()) {
      const auto s = src.get<std::string>();
      r.source_tags[attr] = s == "model" ? Source::model : s == "human" ? Source::human : Source::heuristic;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace taskaug::enrich
