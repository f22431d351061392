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

#include "taskaug/synth/scene.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "taskaug/common/rng.hpp"
#include "taskaug/common/util.hpp"
#include "taskaug/ingest/annotation_job.hpp"
#include "taskaug/ingest/rle.hpp"
#include "taskaug/io/image_io.hpp"

namespace taskaug::synth {
namespace {

struct Shape {
  std::string class_name;
  int x0, y0, w, h;
  int hue_bin;
  double value;
  double depth;
  Direction direction;
};

std::uint8_t clamp8(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

Rgb hsv(double hue_deg, double s, double v) {
  const double c = v * s;
  const double hp = std::fmod(hue_deg, 360.0) / 60.0;
  const double x = c * (1 - std::fabs(std::fmod(hp, 2.0) - 1));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp)) {
    case 0: r = c, g = x; break;
    case 1: r = x, g = c; break;
    case 2: g = c, b = x; break;
    case 3: g = x, b = c; break;
    case 4: r = x, b = c; break;
    default: r = c, b = x; break;
  }
  const double m = v - c;
  return {clamp8((r + m) * 255), clamp8((g + m) * 255), clamp8((b + m) * 255)};
}

// Shape membership in scene coordinates (may lie outside the image).
bool inside(const Shape& s, int x, int y) {
  const double u = (x + 0.5 - s.x0) / s.w, v = (y + 0.5 - s.y0) / s.h;  // [0,1) inside the box
  if (u < 0 || u >= 1 || v < 0 || v >= 1) return false;
  const double du = u - 0.5, dv = v - 0.5;
  if (s.class_name == "box" || s.class_name == "bar") return true;
  if (s.class_name == "disc") return du * du + dv * dv <= 0.25;
  if (s.class_name == "ring") {
    const double r2 = du * du + dv * dv;
    return r2 <= 0.25 && r2 >= 0.0225;
  }
  if (s.class_name == "tri") return std::fabs(du) <= 0.5 * v;
  return std::fabs(du) + std::fabs(dv) <= 0.5;  // kite
}

std::string pad3(int i) {
  std::string s = std::to_string(i);
  return std::string(3 - std::min<std::size_t>(3, s.size()), '0') + s;
}

void add_rating_sequence(Rng& rng, const ObjectTruth& truth, const std::string& attribute, const std::string& answer,
                         const std::vector<std::string>& alternatives, bool split, std::vector<HumanRating>& out,
                         int& rater_counter) {
  std::vector<std::string> seq;
  std::vector<std::string> others;
  for (const auto& a : alternatives)
    if (a != answer) others.push_back(a);
  if (split) {
    const auto& other = others[rng.uniform_index(others.size())];
    seq = {answer, other, answer, other, answer, other};
  } else {
    const int dissent = static_cast<int>(rng.uniform_index(3));
    std::vector<std::string> head(3, answer);
    for (int i = 0; i < dissent; ++i) head.push_back(others[rng.uniform_index(others.size())]);
    rng.shuffle(head);
    seq = head;
    seq.push_back(answer);  // the fourth agreeing rater stops the sequence
    if (seq.size() < 6 && rng.coin()) seq.push_back(others[rng.uniform_index(others.size())]);
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    HumanRating r;
    r.image_id = truth.image_id;
    r.object_id = truth.object_id;
    r.attribute = attribute;
    r.rater_id = "r" + std::to_string(rater_counter++ % 17);
    r.answer = seq[i];
    r.rank_in_sequence = static_cast<int>(i) + 1;
    out.push_back(std::move(r));
  }
}

void make_scene(const FixtureOptions& opt, int index, Fixture& fx) {
  const int W = opt.width, H = opt.height;
  AnnotatedImage img;
  img.image_id = opt.id_prefix + pad3(index);
  img.width = W;
  img.height = H;
  img.domain_tag = opt.domain;
  Rng rng(derive_seed(opt.seed, img.image_id));

  std::vector<Shape> shapes;
  const int n = index % 8 == 7 ? 1 : 3 + static_cast<int>(rng.uniform_index(4));
  const auto& classes = synth_classes();
  for (int i = 0; i < n; ++i) {
    Shape s;
    s.class_name = classes[rng.uniform_index(classes.size())];
    s.w = static_cast<int>(rng.uniform_int(24, 60));
    s.h = static_cast<int>(rng.uniform_int(20, 50));
    if (s.class_name == "bar") s.h = std::max(8, s.w / 4);
    if (!shapes.empty() && rng.coin()) {
      // Abut the previous shape so some masks touch.
      const auto& p = shapes.back();
      s.x0 = p.x0 + p.w;
      s.y0 = p.y0 + static_cast<int>(rng.uniform_int(-4, 4));
    } else {
      s.x0 = static_cast<int>(rng.uniform_int(-s.w / 4, W - 3 * s.w / 4));
      s.y0 = static_cast<int>(rng.uniform_int(-s.h / 4, H - 3 * s.h / 4));
    }
    s.hue_bin = static_cast<int>(rng.uniform_index(8));
    s.value = 0.55 + 0.3 * rng.uniform01();
    s.depth = 0.3 + 0.65 * rng.uniform01();
    s.direction = static_cast<Direction>(rng.uniform_index(4));
    shapes.push_back(s);
  }
  std::ranges::stable_sort(shapes, {}, &Shape::depth);  // far first

  // Owner of each pixel after painting far to near; shapes left with too few
  // visible pixels are removed and the scene repainted.
  std::vector<int> owner;
  for (int pass = 0; pass < 2; ++pass) {
    owner.assign(static_cast<std::size_t>(W) * H, -1);
    for (int i = 0; i < static_cast<int>(shapes.size()); ++i)
      for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x)
          if (inside(shapes[i], x, y)) owner[static_cast<std::size_t>(y) * W + x] = i;
    std::vector<int> visible(shapes.size(), 0);
    for (int o : owner)
      if (o >= 0) ++visible[o];
    std::vector<Shape> kept;
    for (std::size_t i = 0; i < shapes.size(); ++i)
      if (visible[i] >= 40) kept.push_back(shapes[i]);
    if (kept.size() == shapes.size()) break;
    shapes = std::move(kept);
  }

  img.pixels = RgbImage(W, H);
  Gray16Image depth(W, H);
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      const int o = owner[static_cast<std::size_t>(y) * W + x];
      double d;
      Rgb c;
      if (o < 0) {
        c = hsv(200, 0.25, 0.30 + 0.55 * x / (W - 1.0));
        const int t = static_cast<int>(rng.uniform_int(-5, 5));
        c = {clamp8(c.r + t), clamp8(c.g + t), clamp8(c.b + t)};
        d = 0.05 + 0.2 * y / (H - 1.0);
      } else {
        const auto& s = shapes[o];
        c = hsv(45.0 * s.hue_bin, 0.85, s.value);
        const int t = ((x / 2 + y / 2) % 2) ? 14 : -14;
        c = {clamp8(c.r + t), clamp8(c.g + t), clamp8(c.b + t)};
        d = s.depth;
      }
      img.pixels.set(x, y, c);
      depth.data[static_cast<std::size_t>(y) * W + x] = static_cast<std::uint16_t>(std::lround(d * 65535));
    }
  }

  int rater_counter = 0;
  for (int i = 0; i < static_cast<int>(shapes.size()); ++i) {
    const auto& s = shapes[i];
    ObjectInstance obj;
    obj.object_id = img.image_id + "_" + std::to_string(i);
    obj.class_name = s.class_name;
    obj.mask = Mask(W, H);
    bool truncated = false, occluded = false;
    for (int y = s.y0 - 1; y <= s.y0 + s.h; ++y) {
      for (int x = s.x0 - 1; x <= s.x0 + s.w; ++x) {
        if (!inside(s, x, y)) continue;
        if (x < 0 || y < 0 || x >= W || y >= H) {
          truncated = true;
        } else if (owner[static_cast<std::size_t>(y) * W + x] == i) {
          obj.mask.set(x, y, true);
        } else {
          occluded = true;
        }
      }
    }
    obj.bbox = *tight_bbox(obj.mask);
    img.objects.push_back(std::move(obj));

    ObjectTruth t;
    t.image_id = img.image_id;
    t.object_id = img.objects.back().object_id;
    t.depth = s.depth;
    t.hue_bin = s.hue_bin;
    t.direction = s.direction;
    const bool split_occ = rng.uniform01() < 0.1, split_trunc = rng.uniform01() < 0.1,
               split_dir = rng.uniform01() < 0.1;
    t.occluded = split_occ ? TriState::unresolved : (occluded ? TriState::yes : TriState::no);
    t.truncated = split_trunc ? TriState::unresolved : (truncated ? TriState::yes : TriState::no);
    if (split_dir) t.direction = Direction::unresolved;
    add_rating_sequence(rng, t, "occluded", occluded ? "yes" : "no", {"yes", "no"}, split_occ, fx.ratings,
                        rater_counter);
    add_rating_sequence(rng, t, "truncated", truncated ? "yes" : "no", {"yes", "no"}, split_trunc, fx.ratings,
                        rater_counter);
    add_rating_sequence(rng, t, "direction", std::string(to_string(s.direction)),
                        {"toward_camera", "away", "left", "right"}, split_dir, fx.ratings, rater_counter);
    fx.truth.push_back(t);
  }
  fx.depth.emplace(img.image_id, std::move(depth));
  fx.images.push_back(std::move(img));
}

}  // namespace

Fixture make_fixture(const FixtureOptions& options) {
  Fixture fx;
  fx.classes = synth_classes();
  for (int i = 0; i < options.scenes; ++i) make_scene(options, i, fx);
  return fx;
}

void write_fixture(const Fixture& fixture, const std::filesystem::path& dir) {
  using nlohmann::ordered_json;
  std::filesystem::create_directories(dir / "images");
  std::filesystem::create_directories(dir / "depth");

  ordered_json coco;
  coco["images"] = ordered_json::array();
  coco["annotations"] = ordered_json::array();
  coco["categories"] = ordered_json::array();
  for (std::size_t c = 0; c < fixture.classes.size(); ++c) {
    coco["categories"].push_back({{"id", c + 1}, {"name", fixture.classes[c]}});
  }
  std::string manifest;
  for (const auto& img : fixture.images) {
    const std::string file = img.image_id + ".png";
    io::write_png(dir / "images" / file, img.pixels);
    coco["images"].push_back({{"id", img.image_id}, {"file_name", file}, {"width", img.width}, {"height", img.height}});
    for (const auto& o : img.objects) {
      const auto cat = std::ranges::find(fixture.classes, o.class_name) - fixture.classes.begin() + 1;
      ordered_json ann;
      ann["id"] = o.object_id;
      ann["image_id"] = img.image_id;
      ann["category_id"] = cat;
      ann["iscrowd"] = 0;
      ann["bbox"] = {o.bbox.x_min, o.bbox.y_min, o.bbox.width(), o.bbox.height()};
      ann["area"] = o.mask.count();
      ann["segmentation"] = {{"size", {img.height, img.width}},
                             {"counts", ingest::encode_rle_string(ingest::encode_rle_counts(o.mask))}};
      coco["annotations"].push_back(std::move(ann));
    }
    io::write_gray16_png(dir / "depth" / file, fixture.depth.at(img.image_id));
    manifest += img.image_id + "\t" + file + "\n";
  }
  write_file(dir / "annotations.json", coco.dump(1) + "\n");
  write_file(dir / "depth" / "manifest.tsv", manifest);
  write_file(dir / "ratings.csv", ingest::format_ratings_csv(fixture.ratings, "synth"));
}

}  // namespace taskaug::synth
