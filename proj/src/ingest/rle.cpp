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

#include "taskaug/ingest/rle.hpp"

#include <algorithm>
#include <cmath>

#include "taskaug/common/error.hpp"

namespace taskaug::ingest {

Mask decode_rle_counts(const std::vector<std::uint32_t>& counts, int width, int height) {
  Mask mask(width, height);
  const std::uint64_t total = static_cast<std::uint64_t>(width) * height;
  std::uint64_t pos = 0;
  bool value = false;
  for (auto run : counts) {
    if (pos + run > total) throw ParseError("RLE runs exceed mask size");
    if (value) {
      for (std::uint64_t i = pos; i < pos + run; ++i) {
        const auto x = static_cast<int>(i / height);
        const auto y = static_cast<int>(i % height);
        mask.set(x, y);
      }
    }
    pos += run;
    value = !value;
  }
  if (pos != total) throw ParseError("RLE runs do not cover the mask");
  return mask;
}

std::vector<std::uint32_t> encode_rle_counts(const Mask& mask) {
  std::vector<std::uint32_t> counts;
  bool value = false;
  std::uint32_t run = 0;
  for (int x = 0; x < mask.width; ++x) {
    for (int y = 0; y < mask.height; ++y) {
      if (mask.at(x, y) != value) {
        counts.push_back(run);
        run = 0;
        value = !value;
      }
      ++run;
    }
  }
  counts.push_back(run);
  return counts;
}

std::vector<std::uint32_t> decode_rle_string(std::string_view s) {
  std::vector<std::int64_t> cnts;
  std::size_t p = 0;
  while (p < s.size()) {
    std::int64_t x = 0;
    int k = 0;
    bool more = true;
    while (more) {
      if (p >= s.size()) throw ParseError("truncated compressed RLE", p);
      const int c = static_cast<unsigned char>(s[p]) - 48;
      if (c < 0 || c > 63) throw ParseError("invalid compressed RLE character", p);
      if (k > 12) throw ParseError("compressed RLE value too long", p);
      x |= static_cast<std::int64_t>(c & 0x1f) << (5 * k);
      more = (c & 0x20) != 0;
      ++p;
      ++k;
      if (!more && (c & 0x10)) x |= -(static_cast<std::int64_t>(1) << (5 * k));
    }
    if (cnts.size() > 2) x += cnts[cnts.size() - 2];
    cnts.push_back(x);
  }
  std::vector<std::uint32_t> out;
  out.reserve(cnts.size());
  for (auto v : cnts) {
    if (v < 0 || v > UINT32_MAX) throw ParseError("compressed RLE run out of range");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

std::string encode_rle_string(const std::vector<std::uint32_t>& counts) {
  std::string s;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    std::int64_t x = counts[i];
    if (i > 2) x -= counts[i - 2];
    bool more = true;
    while (more) {
      int c = static_cast<int>(x & 0x1f);
      x >>= 5;
      more = (c & 0x10) ? x != -1 : x != 0;
      if (more) c |= 0x20;
      s.push_back(static_cast<char>(c + 48));
    }
  }
  return s;
}

Mask rasterize_polygons(const std::vector<std::vector<double>>& polygons, int width, int height) {
  Mask mask(width, height);
  std::vector<double> crossings;
  // Polygons of one annotation are unioned; each polygon is filled even-odd.
  for (const auto& poly : polygons) {
    const std::size_t n = poly.size() / 2;
    if (n < 3) continue;
    for (int y = 0; y < height; ++y) {
      const double cy = y + 0.5;
      crossings.clear();
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        const double x0 = poly[2 * i], y0 = poly[2 * i + 1];
        const double x1 = poly[2 * j], y1 = poly[2 * j + 1];
        // Half-open in y so shared vertices are counted once.
        if ((y0 <= cy && cy < y1) || (y1 <= cy && cy < y0)) {
          crossings.push_back(x0 + (cy - y0) * (x1 - x0) / (y1 - y0));
        }
      }
      std::ranges::sort(crossings);
      for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
        // Pixel centers x + 0.5 in [a, b).
        const int xa = std::max(0, static_cast<int>(std::ceil(crossings[k] - 0.5)));
        const int xb = std::min(width, static_cast<int>(std::ceil(crossings[k + 1] - 0.5)));
        for (int x = xa; x < xb; ++x) mask.set(x, y);
      }
    }
  }
  return mask;
}

}  // namespace taskaug::ingest
