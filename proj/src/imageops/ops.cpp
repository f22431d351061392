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

#include "taskaug/imageops/ops.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "taskaug/common/error.hpp"
#include "taskaug/common/rng.hpp"

namespace taskaug::imageops {
namespace {

std::uint8_t clamp_round(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

void rgb_to_hsv(Rgb c, double& h, double& s, double& v) {
  const double r = c.r / 255.0, g = c.g / 255.0, b = c.b / 255.0;
  const double mx = std::max({r, g, b}), mn = std::min({r, g, b});
  const double d = mx - mn;
  v = mx;
  s = mx > 0 ? d / mx : 0;
  if (d == 0) {
    h = 0;
  } else if (mx == r) {
    h = 60.0 * std::fmod((g - b) / d + 6.0, 6.0);
  } else if (mx == g) {
    h = 60.0 * ((b - r) / d + 2.0);
  } else {
    h = 60.0 * ((r - g) / d + 4.0);
  }
}

Rgb hsv_to_rgb(double h, double s, double v) {
  h = std::fmod(std::fmod(h, 360.0) + 360.0, 360.0);
  const double c = v * s;
  const double hp = h / 60.0;
  const double x = c * (1 - std::fabs(std::fmod(hp, 2.0) - 1));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = v - c;
  return {clamp_round((r + m) * 255), clamp_round((g + m) * 255), clamp_round((b + m) * 255)};
}

}  // namespace

std::string_view to_string(CorruptionKind k) {
  switch (k) {
    case CorruptionKind::blur: return "blur";
    case CorruptionKind::noise: return "noise";
    case CorruptionKind::color_shift: return "color_shift";
    case CorruptionKind::brightness_shift: return "brightness_shift";
    case CorruptionKind::rotation: return "rotation";
  }
  return "?";
}

std::optional<CorruptionKind> parse_corruption_kind(std::string_view s) {
  for (auto k : {CorruptionKind::blur, CorruptionKind::noise, CorruptionKind::color_shift,
                 CorruptionKind::brightness_shift, CorruptionKind::rotation}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

void CorruptionGrid::validate() const {
  auto check = [](const std::vector<double>& g, const char* name, auto is_noop) {
    if (g.empty()) throw InvalidArgument(std::string(name) + " grid is empty");
    for (double m : g) {
      if (!(m > 0) || is_noop(m)) throw InvalidArgument(std::string(name) + " grid contains a no-op magnitude");
    }
  };
  check(blur_sigmas, "blur", [](double) { return false; });
  check(noise_stds, "noise", [](double) { return false; });
  check(hue_shifts, "color_shift", [](double m) { return std::fmod(m, 360.0) == 0.0; });
  check(brightness_factors, "brightness_shift", [](double m) { return m == 1.0; });
}

RgbImage gaussian_blur(const RgbImage& src, double sigma) {
  if (!(sigma > 0)) throw InvalidArgument("blur sigma must be positive");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0;
  for (int i = -radius; i <= radius; ++i) {
    kernel[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += kernel[i + radius];
  }
  for (auto& k : kernel) k /= sum;

  const int w = src.width, h = src.height;
  std::vector<double> tmp(static_cast<std::size_t>(w) * h * 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc[3] = {0, 0, 0};
      for (int k = -radius; k <= radius; ++k) {
        const int sx = std::clamp(x + k, 0, w - 1);
        const auto o = src.offset(sx, y);
        for (int c = 0; c < 3; ++c) acc[c] += kernel[k + radius] * src.data[o + c];
      }
      const auto o = src.offset(x, y);
      for (int c = 0; c < 3; ++c) tmp[o + c] = acc[c];
    }
  }
  RgbImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc[3] = {0, 0, 0};
      for (int k = -radius; k <= radius; ++k) {
        const int sy = std::clamp(y + k, 0, h - 1);
        const auto o = src.offset(x, sy);
        for (int c = 0; c < 3; ++c) acc[c] += kernel[k + radius] * tmp[o + c];
      }
      const auto o = out.offset(x, y);
      for (int c = 0; c < 3; ++c) out.data[o + c] = clamp_round(acc[c]);
    }
  }
  return out;
}

RgbImage add_gaussian_noise(const RgbImage& src, double stddev, std::uint64_t seed) {
  if (!(stddev > 0)) throw InvalidArgument("noise stddev must be positive");
  Rng rng(seed);
  RgbImage out = src;
  for (auto& v : out.data) v = clamp_round(v + stddev * rng.normal());
  return out;
}

RgbImage hue_rotate(const RgbImage& src, double degrees) {
  RgbImage out = src;
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      double h, s, v;
      rgb_to_hsv(src.at(x, y), h, s, v);
      if (s == 0) continue;
      out.set(x, y, hsv_to_rgb(h + degrees, s, v));
    }
  }
  return out;
}

RgbImage scale_brightness(const RgbImage& src, double factor) {
  if (!(factor > 0)) throw InvalidArgument("brightness factor must be positive");
  RgbImage out = src;
  for (auto& v : out.data) v = clamp_round(v * factor);
  return out;
}

RgbImage rotate(const RgbImage& src, int degrees) {
  const int w = src.width, h = src.height;
  switch (degrees) {
    case 180: {
      RgbImage out(w, h);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out.set(w - 1 - x, h - 1 - y, src.at(x, y));
      return out;
    }
    case 90: {
      RgbImage out(h, w);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out.set(h - 1 - y, x, src.at(x, y));
      return out;
    }
    case 270: {
      RgbImage out(h, w);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out.set(y, w - 1 - x, src.at(x, y));
      return out;
    }
    default:
      throw InvalidArgument("rotation must be 90, 180 or 270 degrees, got " + std::to_string(degrees));
  }
}

RgbImage apply_corruption(const RgbImage& src, CorruptionKind kind, double magnitude,
                          std::uint64_t seed) {
  switch (kind) {
    case CorruptionKind::blur: return gaussian_blur(src, magnitude);
    case CorruptionKind::noise: return add_gaussian_noise(src, magnitude, seed);
    case CorruptionKind::color_shift:
      if (!(magnitude > 0)) throw InvalidArgument("hue shift must be positive");
      return hue_rotate(src, magnitude);
    case CorruptionKind::brightness_shift: return scale_brightness(src, magnitude);
    case CorruptionKind::rotation: {
      const int deg = static_cast<int>(magnitude);
      if (deg != magnitude) throw InvalidArgument("rotation must be a whole number of degrees");
      return rotate(src, deg);
    }
  }
  throw InvalidArgument("unknown corruption kind");
}

RgbImage apply_corruption_in_region(const RgbImage& src, const Mask& region, CorruptionKind kind,
                                    double magnitude, std::uint64_t seed) {
  if (kind == CorruptionKind::rotation) throw InvalidArgument("rotation cannot be applied to a region");
  if (region.width != src.width || region.height != src.height) {
    throw InvalidArgument("region mask does not match image dimensions");
  }
  const RgbImage full = apply_corruption(src, kind, magnitude, seed);
  RgbImage out = src;
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      if (region.at(x, y)) out.set(x, y, full.at(x, y));
    }
  }
  return out;
}

RgbImage crop(const RgbImage& src, const BBox& r) {
  if (r.empty() || r.x_min < 0 || r.y_min < 0 || r.x_max > src.width || r.y_max > src.height) {
    throw InvalidArgument("crop rect outside image");
  }
  RgbImage out(r.width(), r.height());
  for (int y = 0; y < r.height(); ++y) {
    std::copy_n(src.data.begin() + static_cast<std::ptrdiff_t>(src.offset(r.x_min, r.y_min + y)),
                r.width() * 3, out.data.begin() + static_cast<std::ptrdiff_t>(out.offset(0, y)));
  }
  return out;
}

void fill_rect(RgbImage& img, const BBox& r, Rgb color) {
  for (int y = std::max(0, r.y_min); y < std::min(img.height, r.y_max); ++y)
    for (int x = std::max(0, r.x_min); x < std::min(img.width, r.x_max); ++x) img.set(x, y, color);
}

void paste(RgbImage& dst, const RgbImage& tile, int x0, int y0) {
  for (int y = 0; y < tile.height; ++y)
    for (int x = 0; x < tile.width; ++x)
      if (dst.contains(x0 + x, y0 + y)) dst.set(x0 + x, y0 + y, tile.at(x, y));
}

double point_marker_radius(int width, int height) {
  return std::max(4.0, 0.006 * std::min(width, height));
}

RgbImage draw_markers(const AnnotatedImage& image, const RgbImage& base,
                      const std::vector<Marking>& markings) {
  std::map<std::string, MarkerColor> object_colors;
  for (const auto& m : markings) {
    if (m.style != MarkerStyle::box) continue;
    auto [it, inserted] = object_colors.emplace(m.object_id, m.color);
    if (!inserted && it->second != m.color) {
      throw InvalidArgument("object " + m.object_id + " marked in both red and green");
    }
  }

  RgbImage out = base;
  const double radius = point_marker_radius(base.width, base.height);
  for (const auto& m : markings) {
    const Rgb color = m.color == MarkerColor::red ? kRed : kGreen;
    if (m.style == MarkerStyle::box) {
      const auto* obj = image.find_object(m.object_id);
      if (!obj) throw InvalidArgument("marked object " + m.object_id + " does not exist");
      const auto& b = obj->bbox;
      for (int y = b.y_min; y < b.y_max; ++y) {
        for (int x = b.x_min; x < b.x_max; ++x) {
          const int d = std::min({x - b.x_min, b.x_max - 1 - x, y - b.y_min, b.y_max - 1 - y});
          if (d < 3 && out.contains(x, y)) out.set(x, y, color);
        }
      }
    } else {
      if (!m.point || !base.contains(m.point->x, m.point->y)) {
        throw InvalidArgument("point marker outside image bounds");
      }
      const int reach = static_cast<int>(std::ceil(radius + 1));
      for (int dy = -reach; dy <= reach; ++dy) {
        for (int dx = -reach; dx <= reach; ++dx) {
          const int x = m.point->x + dx, y = m.point->y + dy;
          if (!out.contains(x, y)) continue;
          const double d = std::sqrt(static_cast<double>(dx * dx + dy * dy));
          if (d <= radius) {
            out.set(x, y, color);
          } else if (d <= radius + 1) {
            out.set(x, y, kWhite);
          }
        }
      }
    }
  }
  return out;
}

int default_tile_size(int width, int height) {
  const double s = 0.2 * std::min(width, height);
  return 2 * static_cast<int>(std::lround(s / 2.0));
}

std::optional<std::array<BBox, 3>> place_distractors(int width, int height, const BBox& tile_rect,
                                                     std::uint64_t seed) {
  const int tw = tile_rect.width(), th = tile_rect.height();
  if (tw <= 0 || th <= 0 || tw > width || th > height) return std::nullopt;
  std::vector<BBox> placed{tile_rect};
  auto fits = [&](const BBox& c) {
    return std::ranges::none_of(placed, [&](const BBox& p) { return p.intersects(c); });
  };

  Rng rng(seed);
  for (int attempt = 0; attempt < 2000 && placed.size() < 4; ++attempt) {
    const int x = static_cast<int>(rng.uniform_int(0, width - tw));
    const int y = static_cast<int>(rng.uniform_int(0, height - th));
    const BBox c{x, y, x + tw, y + th};
    if (fits(c)) placed.push_back(c);
  }
  // Raster-scan fallback, keeping whatever random placements already fit.
  for (int y = 0; y + th <= height && placed.size() < 4; ++y) {
    for (int x = 0; x + tw <= width && placed.size() < 4; ++x) {
      const BBox c{x, y, x + tw, y + th};
      if (fits(c)) placed.push_back(c);
    }
  }
  if (placed.size() < 4) return std::nullopt;
  return std::array<BBox, 3>{placed[1], placed[2], placed[3]};
}

std::optional<TileExtraction> extract_tile(const RgbImage& image, const BBox& tile_rect,
                                           DistractorPolicy /*policy*/, std::uint64_t seed) {
  if (tile_rect.x_min < 0 || tile_rect.y_min < 0 || tile_rect.x_max > image.width ||
      tile_rect.y_max > image.height || tile_rect.empty()) {
    throw InvalidArgument("tile rect outside image");
  }
  const auto rects = place_distractors(image.width, image.height, tile_rect, seed);
  if (!rects) return std::nullopt;
  TileExtraction out;
  out.tile_rect = tile_rect;
  out.distractor_rects = *rects;
  out.correct_tile = crop(image, tile_rect);
  for (std::size_t i = 0; i < 3; ++i) out.distractors[i] = crop(image, (*rects)[i]);
  out.cutout = image;
  fill_rect(out.cutout, tile_rect, kMidGray);
  return out;
}

}  // namespace taskaug::imageops
