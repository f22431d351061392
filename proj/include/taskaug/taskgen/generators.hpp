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

#include <string>
#include <string_view>
#include <vector>

#include "taskaug/core/types.hpp"
#include "taskaug/imageops/asset.hpp"
#include "taskaug/ingest/depth.hpp"
#include "taskaug/taskgen/config.hpp"
#include "taskaug/taskgen/templates.hpp"

namespace taskaug::taskgen {

struct AssetSpec {
  std::string asset_id;
  std::string parent_image_id;
  imageops::TransformChain chain;
};

// A generated task that the bundle may or may not keep. Binary task types
// offer a "yes" and a "no" candidate when the image allows both, so the
// bundle can balance key prevalence.
struct Candidate {
  TaskInstance task;
  std::vector<AssetSpec> assets;
};

struct ImageContext {
  const AnnotatedImage& image;
  const std::vector<MetadataRecord>& metadata;
  const ingest::DepthMap* depth;
  const std::vector<std::string>& class_vocabulary;  // every class in the image's dataset
  const GenerationConfig& config;
  const TemplateSet& templates;
};

// Images ordered by (distinct classes desc, objects desc, image_id asc); the
// first `budget` are kept. Throws InvalidArgument if budget < 1.
std::vector<const AnnotatedImage*> select_images(const std::vector<AnnotatedImage>& dataset, int budget);

std::vector<Candidate> generate_presence_counting(const ImageContext& ctx);    // T1.1-T1.3
std::vector<Candidate> generate_quality_tasks(const ImageContext& ctx);       // T2.1-T2.6
std::vector<Candidate> generate_spatial_tasks(const ImageContext& ctx);       // T3.1-T3.5
std::vector<Candidate> generate_contact_orientation(const ImageContext& ctx); // T4.1-T4.2
std::vector<Candidate> generate_photometric_tasks(const ImageContext& ctx);   // T5.1-T5.4
std::vector<Candidate> generate_depth_tasks(const ImageContext& ctx);         // T6.1-T6.2
std::vector<Candidate> generate_jigsaw_rotation(const ImageContext& ctx);     // T7.1, T7.2, T8.1

// Every generator, in task-type order.
std::vector<Candidate> generate_all(const ImageContext& ctx);

// Replaces characters outside [A-Za-z0-9._-] so ids can name files.
std::string sanitize_id(std::string_view id);
std::string original_asset_id(std::string_view image_id);
// "a".."d" for option index 0..3.
std::string option_letter(std::size_t index);

// Quiz options for the occlusion (T2.1) and facing (T4.2) questions, in fixed order.
const std::vector<std::string>& occlusion_options();
const std::vector<std::string>& facing_options();

}  // namespace taskaug::taskgen
