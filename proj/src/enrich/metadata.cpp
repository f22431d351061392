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

#include "taskaug/enrich/metadata.hpp"

#include <algorithm>

namespace taskaug::enrich {
namespace {

// True if some pixel of `b` lies within Chebyshev distance 1 of a pixel of `a`.
bool masks_touch(const ObjectInstance& a, const ObjectInstance& b) {
  const BBox region{std::max(a.bbox.x_min - 1, b.bbox.x_min), std::max(a.bbox.y_min - 1, b.bbox.y_min),
                    std::min(a.bbox.x_max + 1, b.bbox.x_max), std::min(a.bbox.y_max + 1, b.bbox.y_max)};
  if (region.empty()) return false;
  const int w = a.mask.width, h = a.mask.height;
  for (int y = region.y_min; y < region.y_max; ++y) {
    for (int x = region.x_min; x < region.x_max; ++x) {
      if (!b.mask.at(x, y)) continue;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if (nx >= 0 && ny >= 0 && nx < w && ny < h && a.mask.at(nx, ny)) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

std::vector<MetadataRecord> compute_geometry_metadata(const AnnotatedImage& image) {
  std::vector<MetadataRecord> records;
  records.reserve(image.objects.size());
  const double pixels = static_cast<double>(image.width) * image.height;
  for (const auto& obj : image.objects) {
    MetadataRecord r;
    r.image_id = image.image_id;
    r.object_id = obj.object_id;
    r.class_name = obj.class_name;
    r.bbox = obj.bbox;
    r.segmentation_area = obj.mask.count();
    r.relative_size = static_cast<double>(r.segmentation_area) / pixels;
    for (const char* a : {"class_name", "bbox_x_min", "bbox_y_min", "bbox_x_max", "bbox_y_max",
                          "relative_size", "segmentation_area", "bbox_touches_bbox",
                          "segmask_touches_segmask", "segmask_touches_segmask_with"}) {
      r.tag(a);
    }
    records.push_back(std::move(r));
  }
  const auto n = image.objects.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& a = image.objects[i];
      const auto& b = image.objects[j];
      if (!a.bbox.dilated(1).intersects(b.bbox)) continue;
      records[i].bbox_touches_bbox = records[j].bbox_touches_bbox = true;
      if (masks_touch(a, b)) {
        records[i].segmask_touches_segmask = records[j].segmask_touches_segmask = true;
        records[i].segmask_touches_segmask_with.push_back(b.object_id);
        records[j].segmask_touches_segmask_with.push_back(a.object_id);
      }
    }
  }
  for (auto& r : records) std::ranges::sort(r.segmask_touches_segmask_with);
  return records;
}

ImageMetadata compute_photometry_metadata(const AnnotatedImage& image,
                                          std::vector<MetadataRecord>& records) {
  ImageMetadata meta{image.image_id, 0.0};
  double total = 0.0;
  for (int y = 0; y < image.pixels.height; ++y) {
    for (int x = 0; x < image.pixels.width; ++x) total += luminance(image.pixels.at(x, y));
  }
  const auto n = static_cast<double>(image.pixels.width) * image.pixels.height;
  meta.brightness = n > 0 ? total / n : 0.0;

  for (std::size_t i = 0; i < image.objects.size() && i < records.size(); ++i) {
    const auto& obj = image.objects[i];
    double sum = 0.0, lmin = 1.0, lmax = 0.0;
    std::int64_t count = 0;
    for (int y = obj.bbox.y_min; y < obj.bbox.y_max; ++y) {
      for (int x = obj.bbox.x_min; x < obj.bbox.x_max; ++x) {
        if (!obj.mask.at(x, y)) continue;
        const double l = luminance(image.pixels.at(x, y));
        sum += l;
        lmin = std::min(lmin, l);
        lmax = std::max(lmax, l);
        ++count;
      }
    }
    auto& r = records[i];
    r.brightness_score = count ? sum / count : 0.0;
    r.michelson_contrast_score = (count && lmax + lmin > 0.0) ? (lmax - lmin) / (lmax + lmin) : 0.0;
    r.tag("brightness_score");
    r.tag("michelson_contrast_score");
  }
  return meta;
}

double nearest_rank_percentile(const std::vector<double>& sorted, int pct) {
  const std::size_t n = sorted.size();
  std::size_t rank = (static_cast<std::size_t>(pct) * n + 99) / 100;  // ceil(pct * n / 100)
  if (rank == 0) rank = 1;
  return sorted[rank - 1];
}

void compute_depth_metadata(const AnnotatedImage& image, const ingest::DepthMap& depth,
                            std::vector<MetadataRecord>& records) {
  std::vector<double> values;
  for (std::size_t i = 0; i < image.objects.size() && i < records.size(); ++i) {
    const auto& obj = image.objects[i];
    values.clear();
    double sum = 0.0;
    for (int y = obj.bbox.y_min; y < obj.bbox.y_max; ++y) {
      for (int x = obj.bbox.x_min; x < obj.bbox.x_max; ++x) {
        if (!obj.mask.at(x, y)) continue;
        values.push_back(depth.at(x, y));
        sum += values.back();
      }
    }
    if (values.empty()) continue;
    std::ranges::sort(values);
    auto& r = records[i];
    r.average_depth = sum / static_cast<double>(values.size());
    r.top_95_depth = nearest_rank_percentile(values, 95);
    r.bottom_5_depth = nearest_rank_percentile(values, 5);
    r.tag("average_depth");
    r.tag("top_95_depth");
    r.tag("bottom_5_depth");
  }
}

void apply_human_consensus(const std::map<std::string, Consensus>& consensus,
                           std::vector<MetadataRecord>& records) {
  for (auto& r : records) {
    const std::string prefix = r.image_id + "/" + r.object_id + "/";
    if (auto it = consensus.find(prefix + "occluded"); it != consensus.end()) {
      r.occluded = parse_tristate(it->second.answer).value_or(TriState::unresolved);
      r.tag("occluded");
    }
    if (auto it = consensus.find(prefix + "truncated"); it != consensus.end()) {
      r.truncated = parse_tristate(it->second.answer).value_or(TriState::unresolved);
      r.tag("truncated");
    }
    if (auto it = consensus.find(prefix + "direction"); it != consensus.end()) {
      r.direction = parse_direction(it->second.answer).value_or(Direction::unresolved);
      r.tag("direction");
    }
  }
}

EnrichedImage enrich_image(const AnnotatedImage& image, const ingest::DepthMap* depth,
                           const std::map<std::string, Consensus>& consensus) {
  EnrichedImage out;
  out.records = compute_geometry_metadata(image);
  out.image = compute_photometry_metadata(image, out.records);
  if (depth) {
    compute_depth_metadata(image, *depth, out.records);
  } else {
    out.errors.push_back("no depth map for image " + image.image_id);
  }
  apply_human_consensus(consensus, out.records);
  return out;
}

}  // namespace taskaug::enrich
