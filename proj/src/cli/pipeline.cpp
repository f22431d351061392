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

#include "taskaug/cli/pipeline.hpp"

#include "taskaug/common/error.hpp"
#include "taskaug/common/util.hpp"
#include "taskaug/enrich/metadata.hpp"
#include "taskaug/ingest/annotation_job.hpp"
#include "taskaug/ingest/depth.hpp"

namespace taskaug::cli {

LoadedDataset load_dataset(const DatasetConfig& config, bool load_pixels) {
  LoadedDataset d;
  d.name = config.name;
  d.coco = ingest::parse_coco(read_file(config.coco), config.image_root, {config.name, load_pixels});
  return d;
}

std::map<std::string, ingest::DepthMap> load_depth(const DatasetConfig& config,
                                                   const std::vector<AnnotatedImage>& images) {
  if (config.depth_dir.empty()) return {};
  ingest::ImageDims dims;
  for (const auto& img : images) dims[img.image_id] = {img.width, img.height};
  return ingest::load_depth_maps(config.depth_dir, config.depth_manifest, dims);
}

MetadataConsensus load_metadata_consensus(const DatasetConfig& config, int threshold) {
  MetadataConsensus out;
  if (config.metadata_ratings.empty()) return out;
  auto imported = ingest::import_human_annotations(read_file(config.metadata_ratings));
  out.errors = std::move(imported.errors);
  out.consensus = enrich::merge_all(imported.ratings, threshold);
  return out;
}

EnrichedDataset enrich_dataset(const DatasetConfig& config, int consensus_threshold) {
  EnrichedDataset out;
  auto loaded = load_dataset(config);
  for (const auto& e : loaded.coco.errors) out.errors.push_back(e.kind + " " + e.item + ": " + e.message);
  auto depth = load_depth(config, loaded.coco.images);
  auto ratings = load_metadata_consensus(config, consensus_threshold);
  for (const auto& e : ratings.errors) out.errors.push_back("ratings " + e.kind + " " + e.item + ": " + e.message);

  auto& in = out.input;
  in.name = config.name;
  in.images = std::move(loaded.coco.images);
  for (const auto& img : in.images) {
    const auto it = depth.find(img.image_id);
    auto enriched = enrich::enrich_image(img, it == depth.end() ? nullptr : &it->second, ratings.consensus);
    // Datasets without depth maps simply skip depth attributes.
    if (!config.depth_dir.empty())
      for (auto& e : enriched.errors) out.errors.push_back(e);
    in.metadata[img.image_id] = std::move(enriched.records);
  }
  in.depth = std::move(depth);
  return out;
}

}  // namespace taskaug::cli
