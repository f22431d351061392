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
#include <string>
#include <variant>
#include <vector>

#include "taskaug/core/types.hpp"
#include "taskaug/imageops/ops.hpp"

namespace taskaug::imageops {

struct Corrupt {
  CorruptionKind kind;
  double magnitude;
  std::uint64_t seed = 0;
};
// Corruption confined to an object's mask in the parent image.
struct CorruptRegion {
  std::string object_id;
  CorruptionKind kind;
  double magnitude;
  std::uint64_t seed = 0;
};
struct DrawMarkers {
  std::vector<Marking> markings;
};
struct Crop {
  BBox rect;
};
struct FillRect {
  BBox rect;
  Rgb color;
};
// Replaces the current raster with a solid colour swatch.
struct SolidColor {
  int width;
  int height;
  Rgb color;
};

using Transform = std::variant<Corrupt, CorruptRegion, DrawMarkers, Crop, FillRect, SolidColor>;
using TransformChain = std::vector<Transform>;

struct RenderedAsset {
  std::string asset_id;
  std::string parent_image_id;
  TransformChain transform_chain;
  RgbImage pixels;
};

// Applies `chain` to the parent's pixels. Region and marker steps resolve
// object ids against the parent, so they must precede geometry changes.
RgbImage replay(const AnnotatedImage& parent, const TransformChain& chain);

RenderedAsset render_asset(const AnnotatedImage& parent, std::string asset_id, TransformChain chain);

}  // namespace taskaug::imageops
