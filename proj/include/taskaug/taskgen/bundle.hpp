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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "taskaug/core/types.hpp"
#include "taskaug/ingest/depth.hpp"
#include "taskaug/taskgen/config.hpp"
#include "taskaug/taskgen/generators.hpp"
#include "taskaug/taskgen/templates.hpp"

namespace taskaug::taskgen {

// One domain's images with their enrichment.
struct DatasetInput {
  std::string name;
  std::vector<AnnotatedImage> images;
  std::map<std::string, std::vector<MetadataRecord>> metadata;  // image_id -> records
  std::map<std::string, ingest::DepthMap> depth;                // image_id -> map
};

struct TaskBundle {
  std::vector<TaskInstance> tasks;
  std::vector<AssetSpec> assets;  // unique, sorted by asset_id
  nlohmann::ordered_json manifest;
  std::vector<std::string> warnings;
};

// Generates, balances and caps tasks. Deterministic in (datasets, config.seed)
// and independent of config.workers.
TaskBundle build_bundle(const std::vector<DatasetInput>& datasets, const GenerationConfig& config,
                        const TemplateSet& templates = default_templates());

// Writes tasks.jsonl, assets.jsonl, manifest.json and assets/<asset_id>.png.
void write_bundle(const TaskBundle& bundle, const std::vector<DatasetInput>& datasets,
                  const std::filesystem::path& dir, unsigned workers);

struct LoadedBundle {
  std::filesystem::path dir;
  std::vector<TaskInstance> tasks;
  std::vector<AssetSpec> assets;
  nlohmann::ordered_json manifest;

  std::filesystem::path asset_path(const std::string& asset_id) const;
};

LoadedBundle read_bundle(const std::filesystem::path& dir);

std::string dataset_digest(const std::vector<DatasetInput>& datasets);

nlohmann::ordered_json to_json(const TaskInstance& t);
TaskInstance task_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const GenerationConfig& c);

}  // namespace taskaug::taskgen
