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
#include <optional>
#include <vector>

namespace taskaug {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kRed{255, 0, 0};
inline constexpr Rgb kGreen{0, 255, 0};
inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kMidGray{128, 128, 128};

// 8-bit RGB raster, row-major, interleaved.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  RgbImage() = default;
  RgbImage(int w, int h, Rgb fill = {})
      : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3) {
    for (std::size_t i = 0; i < data.size(); i += 3) {
      data[i] = fill.r;
      data[i + 1] = fill.g;
      data[i + 2] = fill.b;
    }
  }

  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
  std::size_t offset(int x, int y) const { return (static_cast<std::size_t>(y) * width + x) * 3; }
  Rgb at(int x, int y) const {
    const auto o = offset(x, y);
    return {data[o], data[o + 1], data[o + 2]};
  }
  void set(int x, int y, Rgb c) {
    const auto o = offset(x, y);
    data[o] = c.r;
    data[o + 1] = c.g;
    data[o + 2] = c.b;
  }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

// Binary raster aligned to a parent image.
struct Mask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  Mask() = default;
  Mask(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
  bool at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool v = true) { bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
  std::int64_t count() const {
    std::int64_t n = 0;
    for (auto b : bits) n += b != 0;
    return n;
  }

  friend bool operator==(const Mask&, const Mask&) = default;
};

// 16-bit single channel raster (depth maps).
struct Gray16Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> data;

  Gray16Image() = default;
  Gray16Image(int w, int h, std::uint16_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  std::uint16_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  void set(int x, int y, std::uint16_t v) { data[static_cast<std::size_t>(y) * width + x] = v; }

  friend bool operator==(const Gray16Image&, const Gray16Image&) = default;
};

// Half-open pixel box: covers x in [x_min, x_max), y in [y_min, y_max).
struct BBox {
  int x_min = 0, y_min = 0, x_max = 0, y_max = 0;

  int width() const { return x_max - x_min; }
  int height() const { return y_max - y_min; }
  std::int64_t area() const { return static_cast<std::int64_t>(width()) * height(); }
  bool empty() const { return x_max <= x_min || y_max <= y_min; }
  double center_x() const { return (x_min + x_max) / 2.0; }
  double center_y() const { return (y_min + y_max) / 2.0; }
  bool contains(int x, int y) const { return x >= x_min && x < x_max && y >= y_min && y < y_max; }
  bool intersects(const BBox& o) const {
    return x_min < o.x_max && o.x_min < x_max && y_min < o.y_max && o.y_min < y_max;
  }
  BBox dilated(int r) const { return {x_min - r, y_min - r, x_max + r, y_max + r}; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

// Tight bounding box of the set pixels; nullopt for an empty mask.
std::optional<BBox> tight_bbox(const Mask& mask);

// Rec.601 luma of an 8-bit pixel, scaled to [0, 1].
inline double luminance(Rgb c) { return (0.299 * c.r + 0.587 * c.g + 0.114 * c.b) / 255.0; }

}  // namespace taskaug
