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

#include "taskaug/core/raster.hpp"
#include "taskaug/core/types.hpp"

namespace taskaug::synth {

// Ground truth the renderer knows about each object.
struct ObjectTruth {
  std::string image_id;
  std::string object_id;
  double depth = 0.0;  // relative depth of the whole object, larger = closer
  TriState occluded = TriState::no;
  TriState truncated = TriState::no;
  Direction direction = Direction::toward_camera;
  int hue_bin = 0;
};

struct Fixture {
  std::vector<AnnotatedImage> images;
  std::map<std::string, Gray16Image> depth;  // image_id -> 16-bit depth
  std::vector<ObjectTruth> truth;
  // Simulated rater sequences for occluded/truncated/direction; a few items
  // are deliberately split so they stay unresolved.
  std::vector<HumanRating> ratings;
  std::vector<std::string> classes;
};

struct FixtureOptions {
  int scenes = 24;
  int width = 192;
  int height = 144;
  std::uint64_t seed = 1;
  std::string domain = "synthetic";
  std::string id_prefix = "syn";  // image ids are <prefix>000, <prefix>001, ...
};

inline const std::vector<std::string>& synth_classes() {
  static const std::vector<std::string> c{"box", "disc", "tri", "bar", "ring", "kite"};
  return c;
}

// Programmatic scenes: a tinted gradient background, textured flat-hue
// shapes drawn far to near, and an analytic depth field.
Fixture make_fixture(const FixtureOptions& options);

// Writes images/, annotations.json (COCO, RLE masks), depth/ with
// manifest.tsv, and ratings.csv under `dir`.
void write_fixture(const Fixture& fixture, const std::filesystem::path& dir);

}  // namespace taskaug::synth
