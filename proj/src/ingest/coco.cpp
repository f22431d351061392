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

#include "taskaug/ingest/coco.hpp"

#include <json.hpp>

#include <map>

#include "taskaug/common/error.hpp"
#include "taskaug/ingest/rle.hpp"
#include "taskaug/io/image_io.hpp"

namespace taskaug::ingest {
namespace {

using nlohmann::json;

std::string id_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) return std::to_string(v.get<double>());
  throw ParseError("id must be a string or number");
}

Mask decode_segmentation(const json& seg, int width, int height) {
  if (seg.is_array()) {
    std::vector<std::vector<double>> polys;
    for (const auto& p : seg) polys.push_back(p.get<std::vector<double>>());
    return rasterize_polygons(polys, width, height);
  }
  if (seg.is_object() && seg.contains("counts")) {
    const auto& size = seg.at("size");
    const int h = size.at(0).get<int>();
    const int w = size.at(1).get<int>();
    if (h != height || w != width) throw ParseError("RLE size does not match image size");
    const auto& counts = seg.at("counts");
    if (counts.is_string()) return decode_rle_counts(decode_rle_string(counts.get<std::string>()), w, h);
    return decode_rle_counts(counts.get<std::vector<std::uint32_t>>(), w, h);
  }
  throw ParseError("unsupported segmentation encoding");
}

}  // namespace

CocoParseResult parse_coco(std::string_view annotation_json, const std::filesystem::path& image_root,
                           const CocoOptions& options) {
  json doc;
  try {
    doc = json::parse(annotation_json);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed COCO JSON: ") + e.what(), e.byte);
  }
  for (const char* key : {"images", "annotations", "categories"}) {
    if (!doc.is_object() || !doc.contains(key) || !doc[key].is_array()) {
      throw ParseError(std::string("COCO file lacks a '") + key + "' array", 0);
    }
  }

  CocoParseResult result;
  std::map<std::string, std::string> categories;
  for (const auto& c : doc["categories"]) {
    try {
      categories[id_string(c.at("id"))] = c.at("name").get<std::string>();
    } catch (const std::exception& e) {
      result.errors.push_back({"bad category", c.dump(), e.what()});
    }
  }

  std::map<std::string, std::size_t> index;
  for (const auto& im : doc["images"]) {
    std::string id;
    try {
      id = id_string(im.at("id"));
      AnnotatedImage img;
      img.image_id = id;
      img.width = im.at("width").get<int>();
      img.height = im.at("height").get<int>();
      img.domain_tag = options.domain_tag;
      if (options.load_pixels) {
        img.pixels = io::read_rgb(image_root / im.at("file_name").get<std::string>());
      }
      index[id] = result.images.size();
      result.images.push_back(std::move(img));
    } catch (const std::exception& e) {
      result.errors.push_back({"image load", id, e.what()});
    }
  }

  for (const auto& ann : doc["annotations"]) {
    std::string ann_id;
    try {
      ann_id = id_string(ann.at("id"));
      const auto image_id = id_string(ann.at("image_id"));
      const auto it = index.find(image_id);
      if (it == index.end()) {
        result.errors.push_back({"unknown image", ann_id, "image_id " + image_id + " not listed"});
        continue;
      }
      const auto cat = categories.find(id_string(ann.at("category_id")));
      if (cat == categories.end()) {
        result.errors.push_back({"unknown category", ann_id, "category_id not listed"});
        continue;
      }
      if (ann.value("iscrowd", 0) != 0) {
        result.warnings.push_back("skipping crowd annotation " + ann_id);
        continue;
      }
      auto& img = result.images[it->second];
      ObjectInstance obj;
      obj.object_id = ann_id;
      obj.class_name = cat->second;
      obj.mask = decode_segmentation(ann.at("segmentation"), img.width, img.height);
      const auto bbox = tight_bbox(obj.mask);
      if (!bbox) {
        result.errors.push_back({"empty mask", ann_id, "segmentation rasterizes to no pixels"});
        continue;
      }
      obj.bbox = *bbox;
      img.objects.push_back(std::move(obj));
    } catch (const std::exception& e) {
      result.errors.push_back({"bad annotation", ann_id, e.what()});
    }
  }
  return result;
}

}  // namespace taskaug::ingest
