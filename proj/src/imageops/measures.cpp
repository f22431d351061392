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

#include "taskaug/imageops/measures.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace taskaug::imageops {

double laplacian_variance(const RgbImage& img, const Mask* region) {
  const int w = img.width, h = img.height;
  std::vector<double> luma(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) luma[static_cast<std::size_t>(y) * w + x] = 255.0 * luminance(img.at(x, y));
  auto L = [&](int x, int y) { return luma[static_cast<std::size_t>(y) * w + x]; };
  double sum = 0, sq = 0;
  std::int64_t n = 0;
  for (int y = 1; y + 1 < h; ++y) {
    for (int x = 1; x + 1 < w; ++x) {
      if (region && !region->at(x, y)) continue;
      const double lap = L(x - 1, y) + L(x + 1, y) + L(x, y - 1) + L(x, y + 1) - 4 * L(x, y);
      sum += lap;
      sq += lap * lap;
      ++n;
    }
  }
  if (n == 0) return 0.0;
  const double mean = sum / n;
  return std::max(0.0, sq / n - mean * mean);
}

double mean_luminance(const RgbImage& img) {
  double s = 0;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) s += luminance(img.at(x, y));
  const double n = static_cast<double>(img.width) * img.height;
  return n > 0 ? s / n : 0.0;
}

double local_mean_luminance(const RgbImage& img, int cx, int cy, int half) {
  double s = 0;
  int n = 0;
  for (int y = std::max(0, cy - half); y <= std::min(img.height - 1, cy + half); ++y) {
    for (int x = std::max(0, cx - half); x <= std::min(img.width - 1, cx + half); ++x) {
      s += luminance(img.at(x, y));
      ++n;
    }
  }
  return n ? s / n : 0.0;
}

std::optional<int> hue_bin(Rgb c) {
  const int mx = std::max({c.r, c.g, c.b}), mn = std::min({c.r, c.g, c.b});
  if (mx < 51) return std::nullopt;                  // value < 0.2
  if (mx - mn < 0.25 * mx) return std::nullopt;     // saturation < 0.25
  const double r = c.r, g = c.g, b = c.b, d = mx - mn;
  double hue;
  if (mx == c.r) {
    hue = 60.0 * std::fmod((g - b) / d + 6.0, 6.0);
  } else if (mx == c.g) {
    hue = 60.0 * ((b - r) / d + 2.0);
  } else {
    hue = 60.0 * ((r - g) / d + 4.0);
  }
  return static_cast<int>(std::fmod(hue + 22.5, 360.0) / 45.0) % kHueBins;
}

Rgb hue_bin_color(int bin) {
  const double hue = bin * 45.0;
  const double hp = hue / 60.0;
  const double x = 1 - std::fabs(std::fmod(hp, 2.0) - 1);
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp)) {
    case 0: r = 1; g = x; break;
    case 1: r = x; g = 1; break;
    case 2: g = 1; b = x; break;
    case 3: g = x; b = 1; break;
    case 4: r = x; b = 1; break;
    default: r = 1; b = x; break;
  }
  auto q = [](double v) { return static_cast<std::uint8_t>(std::lround(v * 255)); };
  return {q(r), q(g), q(b)};
}

std::array<std::int64_t, kHueBins> hue_histogram(const RgbImage& img, const Mask& mask,
                                                 std::int64_t& total) {
  std::array<std::int64_t, kHueBins> hist{};
  total = 0;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (!mask.at(x, y)) continue;
      ++total;
      if (auto b = hue_bin(img.at(x, y))) ++hist[*b];
    }
  }
  return hist;
}

}  // namespace taskaug::imageops
