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

#include "taskaug/cli/config.hpp"
#include "taskaug/enrich/consensus.hpp"
#include "taskaug/ingest/coco.hpp"
#include "taskaug/taskgen/bundle.hpp"

namespace taskaug::cli {

struct LoadedDataset {
  std::string name;
  ingest::CocoParseResult coco;
};

// Parses the COCO file and loads pixels (unless `load_pixels` is false).
LoadedDataset load_dataset(const DatasetConfig& config, bool load_pixels = true);

std::map<std::string, ingest::DepthMap> load_depth(const DatasetConfig& config,
                                                   const std::vector<AnnotatedImage>& images);

// Object-level consensus from the dataset's metadata ratings (empty when none configured).
struct MetadataConsensus {
  std::map<std::string, enrich::Consensus> consensus;
  std::vector<ingest::ItemError> errors;
};
MetadataConsensus load_metadata_consensus(const DatasetConfig& config, int threshold);

struct EnrichedDataset {
  taskgen::DatasetInput input;
  std::vector<std::string> errors;
};

// Loads images, depth and ratings and enriches every image.
EnrichedDataset enrich_dataset(const DatasetConfig& config, int consensus_threshold);

}  // namespace taskaug::cli
