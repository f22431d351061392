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

#include "taskaug/imageops/asset.hpp"

#include "taskaug/common/error.hpp"
#include "taskaug/imageops/asset_json.hpp"

namespace taskaug::imageops {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using nlohmann::ordered_json;

ordered_json rect_json(const BBox& b) { return ordered_json::array({b.x_min, b.y_min, b.x_max, b.y_max}); }
BBox rect_from(const ordered_json& j) {
  return {j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>(), j.at(3).get<int>()};
}
ordered_json color_json(Rgb c) { return ordered_json::array({c.r, c.g, c.b}); }
Rgb color_from(const ordered_json& j) {
  return {j.at(0).get<std::uint8_t>(), j.at(1).get<std::uint8_t>(), j.at(2).get<std::uint8_t>()};
}
CorruptionKind kind_from(const ordered_json& j) {
  auto k = parse_corruption_kind(j.get<std::string>());
  if (!k) throw ParseError("unknown corruption kind " + j.dump());
  return *k;
}

}  // namespace

RgbImage replay(const AnnotatedImage& parent, const TransformChain& chain) {
  RgbImage img = parent.pixels;
  for (const auto& t : chain) {
    img = std::visit(
        Overloaded{
            [&](const Corrupt& c) { return apply_corruption(img, c.kind, c.magnitude, c.seed); },
            [&](const CorruptRegion& c) {
              const auto* obj = parent.find_object(c.object_id);
              if (!obj) throw InvalidArgument("region object " + c.object_id + " not in parent");
              return apply_corruption_in_region(img, obj->mask, c.kind, c.magnitude, c.seed);
            },
            [&](const DrawMarkers& d) { return draw_markers(parent, img, d.markings); },
            [&](const Crop& c) { return crop(img, c.rect); },
            [&](const FillRect& f) {
              RgbImage out = img;
              fill_rect(out, f.rect, f.color);
              return out;
            },
            [&](const SolidColor& s) { return RgbImage(s.width, s.height, s.color); },
        },
        t);
  }
  return img;
}

RenderedAsset render_asset(const AnnotatedImage& parent, std::string asset_id, TransformChain chain) {
  RenderedAsset a;
  a.asset_id = std::move(asset_id);
  a.parent_image_id = parent.image_id;
  a.pixels = replay(parent, chain);
  a.transform_chain = std::move(chain);
  return a;
}

ordered_json to_json(const Marking& m) {
  ordered_json j;
  j["color"] = to_string(m.color);
  j["style"] = to_string(m.style);
  if (m.style == MarkerStyle::box) {
    j["object_id"] = m.object_id;
  } else if (m.point) {
    j["point"] = ordered_json::array({m.point->x, m.point->y});
  }
  return j;
}

Marking marking_from_json(const ordered_json& j) {
  Marking m;
  m.color = parse_marker_color(j.at("color").get<std::string>()).value();
  m.style = parse_marker_style(j.at("style").get<std::string>()).value();
  if (j.contains("object_id")) m.object_id = j["object_id"].get<std::string>();
  if (j.contains("point")) m.point = Point{j["point"].at(0).get<int>(), j["point"].at(1).get<int>()};
  return m;
}

ordered_json to_json(const Transform& t) {
  return std::visit(
      Overloaded{
          [](const Corrupt& c) {
            return ordered_json{{"op", "corrupt"}, {"kind", to_string(c.kind)},
                                {"magnitude", c.magnitude}, {"seed", c.seed}};
          },
          [](const CorruptRegion& c) {
            return ordered_json{{"op", "corrupt_region"}, {"object_id", c.object_id},
                                {"kind", to_string(c.kind)}, {"magnitude", c.magnitude},
                                {"seed", c.seed}};
          },
          [](const DrawMarkers& d) {
            ordered_json arr = ordered_json::array();
            for (const auto& m : d.markings) arr.push_back(to_json(m));
            return ordered_json{{"op", "markers"}, {"markings", std::move(arr)}};
          },
          [](const Crop& c) { return ordered_json{{"op", "crop"}, {"rect", rect_json(c.rect)}}; },
          [](const FillRect& f) {
            return ordered_json{{"op", "fill_rect"}, {"rect", rect_json(f.rect)}, {"color", color_json(f.color)}};
          },
          [](const SolidColor& s) {
            return ordered_json{{"op", "solid"}, {"width", s.width}, {"height", s.height},
                                {"color", color_json(s.color)}};
          },
      },
      t);
}

Transform transform_from_json(const ordered_json& j) {
  const auto op = j.at("op").get<std::string>();
  if (op == "corrupt") {
    return Corrupt{kind_from(j.at("kind")), j.at("magnitude").get<double>(), j.at("seed").get<std::uint64_t>()};
  }
  if (op == "corrupt_region") {
    return CorruptRegion{j.at("object_id").get<std::string>(), kind_from(j.at("kind")),
                         j.at("magnitude").get<double>(), j.at("seed").get<std::uint64_t>()};
  }
  if (op == "markers") {
    DrawMarkers d;
    for (const auto& m : j.at("markings")) d.markings.push_back(marking_from_json(m));
    return d;
  }
  if (op == "crop") return Crop{rect_from(j.at("rect"))};
  if (op == "fill_rect") return FillRect{rect_from(j.at("rect")), color_from(j.at("color"))};
  if (op == "solid") {
    return SolidColor{j.at("width").get<int>(), j.at("height").get<int>(), color_from(j.at("color"))};
  }
  throw ParseError("unknown transform op " + op);
}

ordered_json to_json(const TransformChain& chain) {
  ordered_json arr = ordered_json::array();
  for (const auto& t : chain) arr.push_back(to_json(t));
  return arr;
}

TransformChain chain_from_json(const ordered_json& j) {
  TransformChain chain;
  for (const auto& t : j) chain.push_back(transform_from_json(t));
  return chain;
}

}  // namespace taskaug::imageops
