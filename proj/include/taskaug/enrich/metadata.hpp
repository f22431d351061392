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

#include <map>
#include <string>
#include <vector>

#include "taskaug/core/types.hpp"
#include "taskaug/enrich/consensus.hpp"
#include "taskaug/ingest/depth.hpp"

namespace taskaug::enrich {

// Size, area, bbox and touching relations per object. Two boxes touch when one
// box grown by a pixel overlaps the other; two masks touch when some pixel of
// one is 8-adjacent to (or coincides with) a pixel of the other.
std::vector<MetadataRecord> compute_geometry_metadata(const AnnotatedImage& image);

// Fills brightness_score and michelson_contrast_score (Rec.601 luma in [0,1]
// over mask pixels) and returns whole-image brightness.
ImageMetadata compute_photometry_metadata(const AnnotatedImage& image,
                                          std::vector<MetadataRecord>& records);

// Mean and nearest-rank 95th/5th percentiles of relative depth over each mask.
void compute_depth_metadata(const AnnotatedImage& image, const ingest::DepthMap& depth,
                            std::vector<MetadataRecord>& records);

// Nearest-rank percentile (pct in (0, 100]) of an ascending-sorted sample.
double nearest_rank_percentile(const std::vector<double>& sorted, int pct);

// Copies resolved human consensus (keyed "image/object/attribute") onto records.
void apply_human_consensus(const std::map<std::string, Consensus>& consensus,
                           std::vector<MetadataRecord>& records);

struct EnrichedImage {
  std::vector<MetadataRecord> records;
  ImageMetadata image;
  std::vector<std::string> errors;
};

// Runs every enrichment step; a missing depth map is reported in `errors` and
// leaves depth attributes absent.
EnrichedImage enrich_image(const AnnotatedImage& image, const ingest::DepthMap* depth,
                           const std::map<std::string, Consensus>& consensus);

}  // namespace taskaug::enrich
