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
#include <optional>

#include "taskaug/core/raster.hpp"

namespace taskaug::imageops {

// Variance of the 4-neighbour Laplacian of luma (0..255 scale) over interior
// pixels; restricted to set pixels of `region` when given.
double laplacian_variance(const RgbImage& img, const Mask* region = nullptr);

double mean_luminance(const RgbImage& img);

// Mean luma over the (2*half+1)^2 window centred on (x, y), clipped to the image.
double local_mean_luminance(const RgbImage& img, int x, int y, int half = 4);

inline constexpr int kHueBins = 8;

// 45-degree hue bin (bin 0 centred on red) or nullopt for pixels too dark or
// unsaturated to carry a hue.
std::optional<int> hue_bin(Rgb c);

// Fully saturated colour at the centre of a hue bin.
Rgb hue_bin_color(int bin);

// Histogram of hue bins over the masked pixels; also returns the masked pixel count.
std::array<std::int64_t, kHueBins> hue_histogram(const RgbImage& img, const Mask& mask,
                                                 std::int64_t& total);

}  // namespace taskaug::imageops
