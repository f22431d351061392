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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "taskaug/eval/endpoint.hpp"
#include "taskaug/metrics/score.hpp"
#include "taskaug/taskgen/config.hpp"
#include "taskaug/taskgen/templates.hpp"

namespace taskaug::cli {

// Paths are resolved against the config file's directory.
struct DatasetConfig {
  std::string name;
  std::filesystem::path coco;
  std::filesystem::path image_root;
  std::filesystem::path depth_dir;       // optional
  std::filesystem::path depth_manifest;  // optional
  std::filesystem::path metadata_ratings;  // optional, object-level human ratings CSV
};

struct AppConfig {
  std::filesystem::path base_dir;
  std::filesystem::path out_dir = "out";
  std::vector<DatasetConfig> datasets;
  taskgen::GenerationConfig generation;
  taskgen::TemplateSet templates = taskgen::default_templates();
  std::vector<eval::ModelEndpoint> endpoints;

  int metadata_consensus_threshold = 4;
  std::filesystem::path human_ratings;  // optional, task-level ratings CSV
  int human_consensus_threshold = 4;
  int human_max_raters = 6;

  metrics::ScoringMode scoring_mode = metrics::ScoringMode::count_as_incorrect;
  metrics::ThresholdGrid grid;

  // Stable description for manifests (no secrets, no worker counts).
  nlohmann::ordered_json describe() const;
};

// Throws ParseError on TOML syntax errors (offset = line) and
// InvalidArgument on unknown keys or invalid values.
AppConfig parse_config(std::string_view toml_text, const std::filesystem::path& base_dir);
AppConfig load_config(const std::filesystem::path& path);

}  // namespace taskaug::cli
