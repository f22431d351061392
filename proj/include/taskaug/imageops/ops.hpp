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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "taskaug/core/types.hpp"

namespace taskaug::imageops {

enum class CorruptionKind { blur, noise, color_shift, brightness_shift, rotation };
std::string_view to_string(CorruptionKind k);
std::optional<CorruptionKind> parse_corruption_kind(std::string_view s);

// Magnitude grids. Zero (no-op) magnitudes are rejected by validate().
struct CorruptionGrid {
  std::vector<double> blur_sigmas{2, 4, 8};
  std::vector<double> noise_stds{15, 30, 60};
  std::vector<double> hue_shifts{60, 120, 180};
  std::vector<double> brightness_factors{0.5, 0.75, 1.25, 1.5};

  // Throws InvalidArgument on an empty grid or a no-op magnitude.
  void validate() const;
};

// Separable Gaussian, kernel radius ceil(3 sigma), edge pixels replicated.
RgbImage gaussian_blur(const RgbImage& src, double sigma);
// Additive per-channel Gaussian noise (std in 0..255 units), clipped.
RgbImage add_gaussian_noise(const RgbImage& src, double stddev, std::uint64_t seed);
// Rotates hue by `degrees` in HSV space.
RgbImage hue_rotate(const RgbImage& src, double degrees);
// Multiplies every channel (and so luminance) by `factor`, clipped.
RgbImage scale_brightness(const RgbImage& src, double factor);
// Clockwise rotation by 90, 180 or 270 degrees; throws InvalidArgument otherwise.
RgbImage rotate(const RgbImage& src, int degrees);

// Dispatches on kind. Throws InvalidArgument for non-positive magnitudes and
// rotations other than 90/180/270.
RgbImage apply_corruption(const RgbImage& src, CorruptionKind kind, double magnitude,
                          std::uint64_t seed);
// As apply_corruption but only pixels inside `region` change. Rotation is not
// a region corruption.
RgbImage apply_corruption_in_region(const RgbImage& src, const Mask& region, CorruptionKind kind,
                                    double magnitude, std::uint64_t seed);

RgbImage crop(const RgbImage& src, const BBox& rect);
void fill_rect(RgbImage& img, const BBox& rect, Rgb color);
void paste(RgbImage& dst, const RgbImage& tile, int x, int y);

// Disc radius for point markers.
double point_marker_radius(int width, int height);

// Draws 3-pixel box bands (inside the object bbox) and filled point discs with
// a 1-pixel white outline. Throws InvalidArgument for unknown objects,
// out-of-bounds points, or one object requested in both colors.
RgbImage draw_markers(const AnnotatedImage& image, const RgbImage& base,
                      const std::vector<Marking>& markings);

enum class DistractorPolicy { disjoint_random };

struct TileExtraction {
  BBox tile_rect;
  std::array<BBox, 3> distractor_rects;
  RgbImage cutout;
  RgbImage correct_tile;
  std::array<RgbImage, 3> distractors;
};

// Side length of the square jigsaw tile: 20% of the shorter side, even.
int default_tile_size(int width, int height);

// Finds three tile-sized rects with zero overlap with `tile_rect` and each
// other. Seeded random placement with a raster-scan fallback; nullopt when
// no such placement exists.
std::optional<std::array<BBox, 3>> place_distractors(int width, int height, const BBox& tile_rect,
                                                     std::uint64_t seed);

// Cutout (tile area filled mid-gray), the original tile and three disjoint
// distractors. nullopt signals the image is too small for the policy.
std::optional<TileExtraction> extract_tile(const RgbImage& image, const BBox& tile_rect,
                                           DistractorPolicy policy, std::uint64_t seed);

}  // namespace taskaug::imageops
