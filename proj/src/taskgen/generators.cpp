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

#include "taskaug/taskgen/generators.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "taskaug/common/error.hpp"
#include "taskaug/common/rng.hpp"
#include "taskaug/imageops/measures.hpp"

namespace taskaug::taskgen {
namespace {

using imageops::Corrupt;
using imageops::CorruptionKind;
using imageops::CorruptRegion;
using imageops::DrawMarkers;
using imageops::TransformChain;

std::uint64_t image_seed(const ImageContext& ctx) { return derive_seed(ctx.config.seed, ctx.image.image_id); }

std::string code_of(TaskType t) { return std::string(task_code(t)); }

// Seeded choice stream for one task type in one image.
Rng selection_rng(const ImageContext& ctx, TaskType t) {
  return Rng(derive_seed(image_seed(ctx), code_of(t) + "/select"));
}

Candidate make_candidate(const ImageContext& ctx, TaskType type, const std::string& variant) {
  Candidate c;
  auto& t = c.task;
  t.task_type = type;
  t.answer_type = answer_type_of(type);
  t.image_id = ctx.image.image_id;
  t.domain = ctx.image.domain_tag;
  t.task_id = ctx.image.image_id + ":" + code_of(type) + ":" + variant;
  t.generation_seed = derive_seed(image_seed(ctx), code_of(type) + "#" + variant);
  return c;
}

std::string add_asset(Candidate& c, const ImageContext& ctx, TransformChain chain) {
  std::string id = sanitize_id(c.task.task_id) + "_" + std::to_string(c.assets.size());
  c.assets.push_back({id, ctx.image.image_id, std::move(chain)});
  return id;
}

std::string add_original(Candidate& c, const ImageContext& ctx) {
  std::string id = original_asset_id(ctx.image.image_id);
  if (std::ranges::none_of(c.assets, [&](const AssetSpec& a) { return a.asset_id == id; })) {
    c.assets.push_back({id, ctx.image.image_id, {}});
  }
  return id;
}

void set_prompt(Candidate& c, const ImageContext& ctx, const std::map<std::string, std::string>& values) {
  c.task.prompt_text = fill_template(ctx.templates.at(c.task.task_type).question, values);
}

// Orders the correct option among the distractors and returns its letter.
std::string place_options(Rng& rng, const std::string& correct, const std::vector<std::string>& others,
                          std::vector<std::string>& options) {
  std::vector<std::pair<std::string, bool>> slots{{correct, true}};
  for (const auto& o : others) slots.push_back({o, false});
  rng.shuffle(slots);
  options.clear();
  std::string key;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    options.push_back(slots[i].first);
    if (slots[i].second) key = option_letter(i);
  }
  return key;
}

const MetadataRecord* meta_for(const ImageContext& ctx, const std::string& object_id) {
  for (const auto& m : ctx.metadata) {
    if (m.object_id == object_id) return &m;
  }
  return nullptr;
}

std::vector<std::size_t> permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  rng.shuffle(p);
  return p;
}

int cap(const ImageContext& ctx) { return std::max(1, ctx.config.max_tasks_per_type_per_image); }

Marking box(const std::string& object_id, MarkerColor color) {
  return Marking{color, MarkerStyle::box, object_id, std::nullopt};
}

Marking dot(Point p, MarkerColor color) { return Marking{color, MarkerStyle::point, "", p}; }

MarkerColor other(MarkerColor c) { return c == MarkerColor::red ? MarkerColor::green : MarkerColor::red; }

// Marks `correct` and `wrong` with a random colour each; returns the colour of `correct`.
MarkerColor mark_pair(Candidate& c, const ImageContext& ctx, Rng& rng, const std::string& correct,
                      const std::string& wrong) {
  const MarkerColor cc = rng.coin() ? MarkerColor::red : MarkerColor::green;
  c.task.markings = {box(correct, cc), box(wrong, other(cc))};
  // Stable subject order: red first.
  c.task.subject_object_ids = cc == MarkerColor::red ? std::vector{correct, wrong} : std::vector{wrong, correct};
  c.task.image_refs = {add_asset(c, ctx, {DrawMarkers{c.task.markings}})};
  return cc;
}

void mark_single(Candidate& c, const ImageContext& ctx, const std::string& object_id,
                 MarkerColor color = MarkerColor::red) {
  c.task.markings = {box(object_id, color)};
  c.task.subject_object_ids = {object_id};
  c.task.image_refs = {add_asset(c, ctx, {DrawMarkers{c.task.markings}})};
}

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

double diagonal(const AnnotatedImage& img) { return std::hypot(img.width, img.height); }

// Picks up to `k` grid values in seeded order.
std::vector<double> sample_grid(Rng& rng, std::vector<double> grid, std::size_t k) {
  rng.shuffle(grid);
  if (grid.size() > k) grid.resize(k);
  return grid;
}

// ---------------------------------------------------------------------------

void presence_counting(const ImageContext& ctx, std::vector<Candidate>& out) {
  const auto& img = ctx.image;
  std::set<std::string> present_set;
  for (const auto& o : img.objects) present_set.insert(o.class_name);
  const std::vector<std::string> present(present_set.begin(), present_set.end());
  if (present.empty()) return;

  {  // T1.1
    Rng rng = selection_rng(ctx, TaskType::T1_1);
    auto yes_order = permutation(rng, present.size());
    for (int k = 0; k < cap(ctx) && k < static_cast<int>(yes_order.size()); ++k) {
      const auto& cls = present[yes_order[k]];
      auto c = make_candidate(ctx, TaskType::T1_1, "yes" + std::to_string(k));
      c.task.image_refs = {add_original(c, ctx)};
      c.task.answer_key = "yes";
      c.task.provenance = {"class_name"};
      set_prompt(c, ctx, {{"class", cls}});
      out.push_back(std::move(c));
    }
    std::vector<std::string> absent;
    for (const auto& cls : ctx.class_vocabulary) {
      if (!present_set.contains(cls)) absent.push_back(cls);
    }
    std::ranges::sort(absent);
    absent.erase(std::unique(absent.begin(), absent.end()), absent.end());
    auto no_order = permutation(rng, absent.size());
    for (int k = 0; k < cap(ctx) && k < static_cast<int>(no_order.size()); ++k) {
      auto c = make_candidate(ctx, TaskType::T1_1, "no" + std::to_string(k));
      c.task.image_refs = {add_original(c, ctx)};
      c.task.answer_key = "no";
      c.task.provenance = {"class_name"};
      set_prompt(c, ctx, {{"class", absent[no_order[k]]}});
      out.push_back(std::move(c));
    }
  }

  {  // T1.2
    Rng rng = selection_rng(ctx, TaskType::T1_2);
    auto order = permutation(rng, present.size());
    for (int k = 0; k < cap(ctx) && k < static_cast<int>(order.size()); ++k) {
      const auto& cls = present[order[k]];
      const auto n = std::ranges::count_if(img.objects, [&](const ObjectInstance& o) { return o.class_name == cls; });
      auto c = make_candidate(ctx, TaskType::T1_2, std::to_string(k));
      c.task.image_refs = {add_original(c, ctx)};
      c.task.answer_key = std::to_string(n);
      c.task.provenance = {"class_name"};
      set_prompt(c, ctx, {{"class", cls}});
      out.push_back(std::move(c));
    }
  }

  {  // T1.3
    Rng rng = selection_rng(ctx, TaskType::T1_3);
    auto order = permutation(rng, img.objects.size());
    const std::string key = img.objects.size() >= 2 ? "yes" : "no";
    for (int k = 0; k < cap(ctx) && k < static_cast<int>(order.size()); ++k) {
      auto c = make_candidate(ctx, TaskType::T1_3, key + std::to_string(k));
      mark_single(c, ctx, img.objects[order[k]].object_id);
      c.task.answer_key = key;
      c.task.provenance = {"class_name"};
      set_prompt(c, ctx, {{"marker", "red"}});
      out.push_back(std::move(c));
    }
  }
}

// ---------------------------------------------------------------------------

// Region corruption quiz: one of four marked variants has the object corrupted.
void region_corruption(const ImageContext& ctx, TaskType type, CorruptionKind kind,
                       const std::vector<double>& grid, std::vector<Candidate>& out) {
  const auto& img = ctx.image;
  Rng rng = selection_rng(ctx, type);
  int made = 0;
  for (auto i : permutation(rng, img.objects.size())) {
    if (made >= cap(ctx)) break;
    const auto& obj = img.objects[i];
    if (obj.mask.count() < 64) continue;
    auto c = make_candidate(ctx, type, std::to_string(made));
    Rng crng(c.task.generation_seed);
    const double magnitude = grid[crng.uniform_index(grid.size())];
    const auto marking = box(obj.object_id, MarkerColor::red);
    const TransformChain clean_chain{DrawMarkers{{marking}}};
    const TransformChain bad_chain{CorruptRegion{obj.object_id, kind, magnitude, crng.next_u64()},
                                   DrawMarkers{{marking}}};
    const double lv_clean = imageops::laplacian_variance(imageops::replay(img, clean_chain), &obj.mask);
    const double lv_bad = imageops::laplacian_variance(imageops::replay(img, bad_chain), &obj.mask);
    const bool detectable = kind == CorruptionKind::blur ? lv_bad < 0.5 * lv_clean
                                                         : lv_bad > 1.5 * lv_clean + 1.0;
    if (!detectable) continue;
    const auto clean_id = add_asset(c, ctx, clean_chain);
    const auto bad_id = add_asset(c, ctx, bad_chain);
    c.task.answer_key = place_options(crng, bad_id, {clean_id, clean_id, clean_id}, c.task.options);
    c.task.image_refs = c.task.options;
    c.task.markings = {marking};
    c.task.subject_object_ids = {obj.object_id};
    c.task.provenance = {"construction", std::string(imageops::to_string(kind))};
    set_prompt(c, ctx, {{"marker", "red"}});
    out.push_back(std::move(c));
    ++made;
  }
}

// Whole-image corruption quiz: the original among three corrupted variants.
void image_corruption(const ImageContext& ctx, TaskType type, CorruptionKind kind,
                      const std::vector<double>& grid, std::vector<Candidate>& out) {
  const auto& img = ctx.image;
  for (int k = 0; k < cap(ctx); ++k) {
    auto c = make_candidate(ctx, type, std::to_string(k));
    Rng crng(c.task.generation_seed);
    auto mags = sample_grid(crng, grid, 3);
    if (mags.size() < 3) return;
    std::ranges::sort(mags);
    const double lv_orig = imageops::laplacian_variance(img.pixels);
    std::vector<std::string> variants;
    bool ok = true;
    for (double m : mags) {
      const TransformChain chain{Corrupt{kind, m, crng.next_u64()}};
      const double lv = imageops::laplacian_variance(imageops::replay(img, chain));
      if (kind == CorruptionKind::blur ? !(lv < lv_orig) : !(lv > lv_orig)) ok = false;
      variants.push_back(add_asset(c, ctx, chain));
    }
    if (!ok) return;
    const auto orig = add_original(c, ctx);
    c.task.answer_key = place_options(crng, orig, variants, c.task.options);
    c.task.image_refs = c.task.options;
    c.task.provenance = {"construction", std::string(imageops::to_string(kind))};
    set_prompt(c, ctx, {});
    out.push_back(std::move(c));
  }
}

void quality(const ImageContext& ctx, std::vector<Candidate>& out) {
  const auto& img = ctx.image;

  // T2.1: occlusion quiz with fixed option order.
  {
    Rng rng = selection_rng(ctx, TaskType::T2_1);
    int made = 0;
    for (auto i : permutation(rng, img.objects.size())) {
      if (made >= cap(ctx)) break;
      const auto* m = meta_for(ctx, img.objects[i].object_id);
      if (!m || !m->occluded || *m->occluded == TriState::unresolved) continue;
      auto c = make_candidate(ctx, TaskType::T2_1, std::to_string(made));
      mark_single(c, ctx, m->object_id);
      c.task.options = occlusion_options();
      c.task.answer_key = *m->occluded == TriState::no ? "a" : "b";
      c.task.provenance = {"occluded"};
      set_prompt(c, ctx, {{"marker", "red"}});
      out.push_back(std::move(c));
      ++made;
    }
  }

  // T2.2: truncation, yes and no candidates.
  {
    Rng rng = selection_rng(ctx, TaskType::T2_2);
    int yes = 0, no = 0;
    for (auto i : permutation(rng, img.objects.size())) {
      const auto* m = meta_for(ctx, img.objects[i].object_id);
      if (!m || !m->truncated || *m->truncated == TriState::unresolved) continue;
      const bool is_yes = *m->truncated == TriState::yes;
      int& made = is_yes ? yes : no;
      if (made >= cap(ctx)) continue;
      auto c = make_candidate(ctx, TaskType::T2_2, (is_yes ? "yes" : "no") + std::to_string(made));
      mark_single(c, ctx, m->object_id);
      c.task.answer_key = is_yes ? "yes" : "no";
      c.task.provenance = {"truncated"};
      set_prompt(c, ctx, {{"marker", "red"}});
      out.push_back(std::move(c));
      ++made;
    }
  }

  region_corruption(ctx, TaskType::T2_3, CorruptionKind::blur, ctx.config.grid.blur_sigmas, out);
  region_corruption(ctx, TaskType::T2_4, CorruptionKind::noise, ctx.config.grid.noise_stds, out);
  image_corruption(ctx, TaskType::T2_5, CorruptionKind::blur, ctx.config.grid.blur_sigmas, out);
  image_corruption(ctx, TaskType::T2_6, CorruptionKind::noise, ctx.config.grid.noise_stds, out);
}

// ---------------------------------------------------------------------------

struct PairRule {
  TaskType type;
  // Returns the index (0 or 1) of the correct object, or -1 when the pair is ineligible.
  std::function<int(const MetadataRecord&, const MetadataRecord&)> decide;
  std::vector<std::string> provenance;
};

void pair_task(const ImageContext& ctx, const PairRule& rule, std::vector<Candidate>& out) {
  const auto& img = ctx.image;
  std::vector<std::pair<std::size_t, std::size_t>> eligible;
  std::vector<int> winners;
  for (std::size_t i = 0; i < img.objects.size(); ++i) {
    for (std::size_t j = i + 1; j < img.objects.size(); ++j) {
      const auto* a = meta_for(ctx, img.objects[i].object_id);
      const auto* b = meta_for(ctx, img.objects[j].object_id);
      if (!a || !b) continue;
      const int w = rule.decide(*a, *b);
      if (w < 0) continue;
      eligible.emplace_back(i, j);
      winners.push_back(w);
    }
  }
  Rng rng = selection_rng(ctx, rule.type);
  auto order = permutation(rng, eligible.size());
  for (int k = 0; k < cap(ctx) && k < static_cast<int>(order.size()); ++k) {
    const auto [i, j] = eligible[order[k]];
    const auto& correct = img.objects[winners[order[k]] == 0 ? i : j].object_id;
    const auto& wrong = img.objects[winners[order[k]] == 0 ? j : i].object_id;
    auto c = make_candidate(ctx, rule.type, std::to_string(k));
    Rng crng(c.task.generation_seed);
    c.task.answer_key = std::string(to_string(mark_pair(c, ctx, crng, correct, wrong)));
    c.task.provenance = rule.provenance;
    set_prompt(c, ctx, {});
    out.push_back(std::move(c));
  }
}

// T3.4/T3.5: is another object's centre beyond the marked one by the margin?
void beyond_task(const ImageContext& ctx, TaskType type, std::vector<Candidate>& out) {
  const auto& img = ctx.image;
  const bool horizontal = type == TaskType::T3_4;
  const double margin = ctx.config.min_position_margin * (horizontal ? img.width : img.height);
  // Position along the queried direction: larger means "further" (left or lower).
  auto pos = [&](const MetadataRecord& m) { return horizontal ? -m.bbox.center_x() : m.bbox.center_y(); };

  Rng rng = selection_rng(ctx, type);
  int yes = 0, no = 0;
  for (auto i : permutation(rng, img.objects.size())) {
    const auto* m = meta_for(ctx, img.objects[i].object_id);
    if (!m) continue;
    bool any_beyond = false, any_partial = false;
    for (const auto& o : img.objects) {
      if (o.object_id == m->object_id) continue;
      const auto* om = meta_for(ctx, o.object_id);
      if (!om) continue;
      const double d = pos(*om) - pos(*m);
      if (d >= margin) {
        any_beyond = true;
      } else if (d > 0) {
        any_partial = true;
      }
    }
    if (!any_beyond && any_partial) continue;  // key not derivable with margin
    int& made = any_beyond ? yes : no;
    if (made >= cap(ctx)) continue;
    auto c = make_candidate(ctx, type, (any_beyond ? "yes" : "no") + std::to_string(made));
    mark_single(c, ctx, m->object_id);
    c.task.answer_key = any_beyond ? "yes" : "no";
    c.task.provenance = horizontal ? std::vector<std::string>{"bbox_x_min", "bbox_x_max"}
                                   : std::vector<std::string>{"bbox_y_min", "bbox_y_max"};
    set_prompt(c, ctx, {{"marker", "red"}});
    out.push_back(std::move(c));
    ++made;
  }
}

void spatial(const ImageContext& ctx, std::vector<Candidate>& out) {
  const auto& cfg = ctx.config;
  const double w = ctx.image.width, h = ctx.image.height;
  pair_task(ctx,
            {TaskType::T3_1,
             [&](const MetadataRecord& a, const MetadataRecord& b) {
               const double lo = static_cast<double>(std::min(a.segmentation_area, b.segmentation_area));
               const double hi = static_cast<double>(std::max(a.segmentation_area, b.segmentation_area));
               if (lo <= 0 || hi / lo < cfg.min_size_ratio) return -1;
               return a.segmentation_area > b.segmentation_area ? 0 : 1;
             },
             {"segmentation_area"}},
            out);
  pair_task(ctx,
            {TaskType::T3_2,
             [&](const MetadataRecord& a, const MetadataRecord& b) {
               const double d = a.bbox.center_x() - b.bbox.center_x();
               if (std::fabs(d) < cfg.min_position_margin * w) return -1;
               return d < 0 ? 0 : 1;
             },
             {"bbox_x_min", "bbox_x_max"}},
            out);
  pair_task(ctx,
            {TaskType::T3_3,
             [&](const MetadataRecord& a, const MetadataRecord& b) {
               const double d = a.bbox.center_y() - b.bbox.center_y();
               if (std::fabs(d) < cfg.min_position_margin * h) return -1;
               return d > 0 ? 0 : 1;
             },
             {"bbox_y_min", "bbox_y_max"}},
            out);
  beyond_task(ctx, TaskType::T3_4, out);
  beyond_task(ctx, TaskType::T3_5, out);
}

// ---------------------------------------------------------------------------

void contact_orientation(const ImageContext& ctx, std::vector<Candidate>& out) {
  const auto& img = ctx.image;

  {  // T4.1
    std::vector<std::pair<std::size_t, std::size_t>> touching, apart;
    for (std::size_t i = 0; i < img.objects.size(); ++i) {
      for (std::size_t j = i + 1; j < img.objects.size(); ++j) {
        const auto* a = meta_for(ctx, img.objects[i].object_id);
        const auto* b = meta_for(ctx, img.objects[j].object_id);
        if (!a || !b) continue;
        if (std::ranges::find(a->segmask_touches_segmask_with, b->object_id) !=
            a->segmask_touches_segmask_with.end()) {
          touching.emplace_back(i, j);
        } else if (!a->bbox.dilated(1).intersects(b->bbox)) {
          // Negatives keep a visible gap between the boxes.
          apart.emplace_back(i, j);
        }
      }
    }
    Rng rng = selection_rng(ctx, TaskType::T4_1);
    for (const auto& [pairs, key] : {std::pair{&touching, "yes"}, std::pair{&apart, "no"}}) {
      auto order = permutation(rng, pairs->size());
      for (int k = 0; k < cap(ctx) && k < static_cast<int>(order.size()); ++k) {
        const auto [i, j] = (*pairs)[order[k]];
        auto c = make_candidate(ctx, TaskType::T4_1, key + std::to_string(k));
        Rng crng(c.task.generation_seed);
        mark_pair(c, ctx, crng, img.objects[i].object_id, img.objects[j].object_id);
        c.task.answer_key = key;
        c.task.provenance = {"segmask_touches_segmask_with"};
        set_prompt(c, ctx, {});
        out.push_back(std::move(c));
      }
    }
  }

  {  // T4.2
    Rng rng = selection_rng(ctx, TaskType::T4_2);
    int made = 0;
    for (auto i : permutation(rng, img.objects.size())) {
      if (made >= cap(ctx)) break;
      const auto* m = meta_for(ctx, img.objects[i].object_id);
      if (!m || !m->direction || *m->direction == Direction::unresolved) continue;
      auto c = make_candidate(ctx, TaskType::T4_2, std::to_string(made));
      mark_single(c, ctx, m->object_id);
      c.task.options = facing_options();
      c.task.answer_key = option_letter(static_cast<std::size_t>(*m->direction));
      c.task.provenance = {"direction"};
      set_prompt(c, ctx, {{"marker", "red"}});
      out.push_back(std::move(c));
      ++made;
    }
  }
}

// ---------------------------------------------------------------------------

int hue_distance(int a, int b) {
  const int d = std::abs(a - b) % imageops::kHueBins;
  return std::min(d, imageops::kHueBins - d);
}

// Candidate point positions keep the marker disc inside the image.
bool sample_point_pair(const ImageContext& ctx, Rng& rng, const std::function<bool(Point, Point)>& ok,
                       Point& p, Point& q) {
  const auto& img = ctx.image;
  const int pad = static_cast<int>(std::ceil(imageops::point_marker_radius(img.width, img.height))) + 2;
  if (img.width <= 2 * pad || img.height <= 2 * pad) return false;
  const double min_dist = ctx.config.min_point_distance * diagonal(img);
  for (int attempt = 0; attempt < 500; ++attempt) {
    p = {static_cast<int>(rng.uniform_int(pad, img.width - 1 - pad)),
         static_cast<int>(rng.uniform_int(pad, img.height - 1 - pad))};
    q = {static_cast<int>(rng.uniform_int(pad, img.width - 1 - pad)),
         static_cast<int>(rng.uniform_int(pad, img.height - 1 - pad))};
    if (dist(p, q) >= min_dist && ok(p, q)) return true;
  }
  return false;
}

// Point pair question; `first_wins` is the point satisfying the predicate
// ("brighter", "closer"). Emits a yes candidate (red on the winner) and a no
// candidate (red on the other point).
void point_pair_task(const ImageContext& ctx, TaskType type, Point winner, Point loser,
                     std::vector<std::string> provenance, std::vector<Candidate>& out) {
  for (const char* key : {"yes", "no"}) {
    auto c = make_candidate(ctx, type, std::string(key) + "0");
    const bool yes = std::string_view(key) == "yes";
    const Point red = yes ? winner : loser;
    const Point green = yes ? loser : winner;
    c.task.markings = {dot(red, MarkerColor::red), dot(green, MarkerColor::green)};
    c.task.image_refs = {add_asset(c, ctx, {DrawMarkers{c.task.markings}})};
    c.task.answer_key = key;
    c.task.provenance = provenance;
    set_prompt(c, ctx, {});
    out.push_back(std::move(c));
  }
}

void photometric(const ImageContext& ctx, std::vector<Candidate>& out) {
  const auto& img = ctx.image;
  const auto& cfg = ctx.config;

  {  // T5.1
    Rng rng = selection_rng(ctx, TaskType::T5_1);
    int made = 0;
    for (auto i : permutation(rng, img.objects.size())) {
      if (made >= cap(ctx)) break;
      const auto& obj = img.objects[i];
      std::int64_t total = 0;
      const auto hist = imageops::hue_histogram(img.pixels, obj.mask, total);
      const auto top = std::ranges::max_element(hist);
      if (total == 0 || static_cast<double>(*top) < cfg.dominant_hue_share * total) continue;
      const int bin = static_cast<int>(top - hist.begin());
      auto c = make_candidate(ctx, TaskType::T5_1, std::to_string(made));
      Rng crng(c.task.generation_seed);
      std::vector<int> far;
      for (int b = 0; b < imageops::kHueBins; ++b) {
        if (hue_distance(b, bin) >= 2) far.push_back(b);
      }
      crng.shuffle(far);
      far.resize(3);
      const int size = cfg.color_tile_size;
      auto tile = [&](int b) {
        return add_asset(c, ctx, {imageops::SolidColor{size, size, imageops::hue_bin_color(b)}});
      };
      const auto correct = tile(bin);
      std::vector<std::string> others;
      for (int b : far) others.push_back(tile(b));
      // Mark with whichever colour is further in hue from the object.
      const MarkerColor mc = hue_distance(bin, 3) > hue_distance(bin, 0) ? MarkerColor::green : MarkerColor::red;
      mark_single(c, ctx, obj.object_id, mc);
      const auto marked = c.task.image_refs.front();
      c.task.answer_key = place_options(crng, correct, others, c.task.options);
      c.task.image_refs = {marked};
      for (const auto& o : c.task.options) c.task.image_refs.push_back(o);
      c.task.provenance = {"hue_histogram"};
      set_prompt(c, ctx, {{"marker", std::string(to_string(mc))}});
      out.push_back(std::move(c));
      ++made;
    }
  }

  {  // T5.2
    auto c = make_candidate(ctx, TaskType::T5_2, "0");
    Rng crng(c.task.generation_seed);
    const auto& factors = cfg.grid.brightness_factors;
    // Try 3-subsets of the grid in seeded order.
    std::vector<std::vector<double>> subsets;
    for (std::size_t a = 0; a < factors.size(); ++a)
      for (std::size_t b = a + 1; b < factors.size(); ++b)
        for (std::size_t d = b + 1; d < factors.size(); ++d) subsets.push_back({factors[a], factors[b], factors[d]});
    crng.shuffle(subsets);
    for (const auto& subset : subsets) {
      std::vector<std::pair<double, TransformChain>> variants{{imageops::mean_luminance(img.pixels), {}}};
      for (double f : subset) {
        TransformChain chain{Corrupt{CorruptionKind::brightness_shift, f, 0}};
        variants.emplace_back(imageops::mean_luminance(imageops::replay(img, chain)), chain);
      }
      bool ok = true;
      for (std::size_t a = 0; a < variants.size(); ++a)
        for (std::size_t b = a + 1; b < variants.size(); ++b)
          if (std::fabs(variants[a].first - variants[b].first) < cfg.min_brightness_margin) ok = false;
      if (!ok) continue;
      std::ranges::sort(variants, std::greater<>{}, [](const auto& v) { return v.first; });
      std::vector<std::string> ids;
      for (const auto& v : variants) ids.push_back(v.second.empty() ? add_original(c, ctx) : add_asset(c, ctx, v.second));
      const auto second = ids[1];
      ids.erase(ids.begin() + 1);
      c.task.answer_key = place_options(crng, second, ids, c.task.options);
      c.task.image_refs = c.task.options;
      c.task.provenance = {"mean_luminance"};
      set_prompt(c, ctx, {});
      out.push_back(std::move(c));
      break;
    }
  }

  {  // T5.3
    auto c = make_candidate(ctx, TaskType::T5_3, "0");
    Rng crng(c.task.generation_seed);
    auto shifts = sample_grid(crng, cfg.grid.hue_shifts, 3);
    bool ok = shifts.size() == 3;
    std::ranges::sort(shifts);
    std::vector<std::string> variants;
    for (double s : shifts) {
      TransformChain chain{Corrupt{CorruptionKind::color_shift, s, 0}};
      const auto shifted = imageops::replay(img, chain);
      double diff = 0;
      for (std::size_t k = 0; k < shifted.data.size(); ++k) diff += std::abs(shifted.data[k] - img.pixels.data[k]);
      if (diff / static_cast<double>(shifted.data.size()) < 8.0) ok = false;
      variants.push_back(add_asset(c, ctx, chain));
    }
    if (ok) {
      const auto orig = add_original(c, ctx);
      c.task.answer_key = place_options(crng, orig, variants, c.task.options);
      c.task.image_refs = c.task.options;
      c.task.provenance = {"construction", "color_shift"};
      set_prompt(c, ctx, {});
      out.push_back(std::move(c));
    }
  }

  {  // T5.4
    Rng rng = selection_rng(ctx, TaskType::T5_4);
    Point p, q;
    auto lum = [&](Point a) { return imageops::local_mean_luminance(img.pixels, a.x, a.y, 4); };
    if (sample_point_pair(ctx, rng, [&](Point a, Point b) {
          return std::fabs(lum(a) - lum(b)) >= cfg.min_brightness_margin;
        }, p, q)) {
      if (lum(q) > lum(p)) std::swap(p, q);
      point_pair_task(ctx, TaskType::T5_4, p, q, {"local_luminance"}, out);
    }
  }
}

// ---------------------------------------------------------------------------

void depth_tasks(const ImageContext& ctx, std::vector<Candidate>& out) {
  if (!ctx.depth) return;
  const auto& cfg = ctx.config;
  pair_task(ctx,
            {TaskType::T6_1,
             [&](const MetadataRecord& a, const MetadataRecord& b) {
               if (!a.average_depth || !b.average_depth) return -1;
               const double d = *a.average_depth - *b.average_depth;
               if (std::fabs(d) < cfg.min_depth_margin) return -1;
               return d > 0 ? 0 : 1;
             },
             {"average_depth"}},
            out);

  Rng rng = selection_rng(ctx, TaskType::T6_2);
  Point p, q;
  const auto& depth = *ctx.depth;
  if (sample_point_pair(ctx, rng, [&](Point a, Point b) {
        return std::fabs(depth.at(a.x, a.y) - depth.at(b.x, b.y)) >= cfg.min_depth_margin;
      }, p, q)) {
    if (depth.at(q.x, q.y) > depth.at(p.x, p.y)) std::swap(p, q);
    point_pair_task(ctx, TaskType::T6_2, p, q, {"depth_map"}, out);
  }
}

// ---------------------------------------------------------------------------

bool uniform(const RgbImage& img) {
  for (std::size_t k = 3; k < img.data.size(); k += 3) {
    if (img.data[k] != img.data[0] || img.data[k + 1] != img.data[1] || img.data[k + 2] != img.data[2]) return false;
  }
  return true;
}

bool equal_under_rotation(const RgbImage& a, const RgbImage& b) {
  if (a == b) return true;
  if (a.width != a.height) return a == imageops::rotate(b, 180);
  for (int deg : {90, 180, 270}) {
    if (a == imageops::rotate(b, deg)) return true;
  }
  return false;
}

void jigsaw_rotation(const ImageContext& ctx, std::vector<Candidate>& out) {
  const auto& img = ctx.image;
  const int s = imageops::default_tile_size(img.width, img.height);

  if (s >= ctx.config.min_tile_size) {
    for (TaskType type : {TaskType::T7_1, TaskType::T7_2}) {
      const bool rotated = type == TaskType::T7_1;
      auto c = make_candidate(ctx, type, "0");
      Rng crng(c.task.generation_seed);
      for (int attempt = 0; attempt < 10; ++attempt) {
        const int x = static_cast<int>(crng.uniform_int(0, img.width - s));
        const int y = static_cast<int>(crng.uniform_int(0, img.height - s));
        const BBox rect{x, y, x + s, y + s};
        const auto ex = imageops::extract_tile(img.pixels, rect, imageops::DistractorPolicy::disjoint_random,
                                               crng.next_u64());
        if (!ex) break;  // infeasible for this tile size anywhere
        if (uniform(ex->correct_tile)) continue;
        const bool clash = std::ranges::any_of(ex->distractors, [&](const RgbImage& d) {
          return rotated ? equal_under_rotation(ex->correct_tile, d) : ex->correct_tile == d;
        });
        if (clash) continue;

        auto tile_chain = [&](const BBox& r) {
          TransformChain chain{imageops::Crop{r}};
          if (rotated) {
            const int deg = 90 * static_cast<int>(crng.uniform_int(1, 3));
            chain.push_back(Corrupt{CorruptionKind::rotation, static_cast<double>(deg), 0});
          }
          return chain;
        };
        const auto cutout = add_asset(c, ctx, {imageops::FillRect{rect, kMidGray}});
        const auto correct = add_asset(c, ctx, tile_chain(rect));
        std::vector<std::string> others;
        for (const auto& r : ex->distractor_rects) others.push_back(add_asset(c, ctx, tile_chain(r)));
        c.task.answer_key = place_options(crng, correct, others, c.task.options);
        c.task.image_refs = {cutout};
        for (const auto& o : c.task.options) c.task.image_refs.push_back(o);
        c.task.provenance = {"construction"};
        set_prompt(c, ctx, {});
        out.push_back(std::move(c));
        break;
      }
    }
  }

  {  // T8.1
    auto c = make_candidate(ctx, TaskType::T8_1, "0");
    Rng crng(c.task.generation_seed);
    std::vector<std::string> variants;
    bool distinct = true;
    for (int deg : {90, 180, 270}) {
      const TransformChain chain{Corrupt{CorruptionKind::rotation, static_cast<double>(deg), 0}};
      if (imageops::replay(img, chain) == img.pixels) distinct = false;
      variants.push_back(add_asset(c, ctx, chain));
    }
    if (distinct) {
      const auto orig = add_original(c, ctx);
      c.task.answer_key = place_options(crng, orig, variants, c.task.options);
      c.task.image_refs = c.task.options;
      c.task.provenance = {"construction", "rotation"};
      set_prompt(c, ctx, {});
      out.push_back(std::move(c));
    }
  }
}

}  // namespace

std::string sanitize_id(std::string_view id) {
  std::string out(id);
  for (auto& ch : out) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                    ch == '.' || ch == '_' || ch == '-';
    if (!ok) ch = '_';
  }
  return out;
}

std::string original_asset_id(std::string_view image_id) { return sanitize_id(image_id) + "__orig"; }

std::string option_letter(std::size_t index) { return std::string(1, static_cast<char>('a' + index)); }

const std::vector<std::string>& occlusion_options() {
  static const std::vector<std::string> o{"fully visible", "partially occluded", "fully occluded", "cannot tell"};
  return o;
}

const std::vector<std::string>& facing_options() {
  static const std::vector<std::string> o{"facing toward the camera", "facing away from the camera",
                                          "facing left", "facing right"};
  return o;
}

std::vector<const AnnotatedImage*> select_images(const std::vector<AnnotatedImage>& dataset, int budget) {
  if (budget < 1) throw InvalidArgument("image budget must be >= 1");
  struct Key {
    std::size_t classes, objects;
    const AnnotatedImage* img;
  };
  std::vector<Key> keys;
  for (const auto& img : dataset) {
    std::set<std::string_view> classes;
    for (const auto& o : img.objects) classes.insert(o.class_name);
    keys.push_back({classes.size(), img.objects.size(), &img});
  }
  std::ranges::sort(keys, [](const Key& a, const Key& b) {
    if (a.classes != b.classes) return a.classes > b.classes;
    if (a.objects != b.objects) return a.objects > b.objects;
    return a.img->image_id < b.img->image_id;
  });
  std::vector<const AnnotatedImage*> out;
  for (std::size_t i = 0; i < keys.size() && i < static_cast<std::size_t>(budget); ++i) out.push_back(keys[i].img);
  return out;
}

std::vector<Candidate> generate_presence_counting(const ImageContext& ctx) {
  std::vector<Candidate> out;
  presence_counting(ctx, out);
  return out;
}

std::vector<Candidate> generate_quality_tasks(const ImageContext& ctx) {
  std::vector<Candidate> out;
  quality(ctx, out);
  return out;
}

std::vector<Candidate> generate_spatial_tasks(const ImageContext& ctx) {
  std::vector<Candidate> out;
  spatial(ctx, out);
  return out;
}

std::vector<Candidate> generate_contact_orientation(const ImageContext& ctx) {
  std::vector<Candidate> out;
  contact_orientation(ctx, out);
  return out;
}

std::vector<Candidate> generate_photometric_tasks(const ImageContext& ctx) {
  std::vector<Candidate> out;
  photometric(ctx, out);
  return out;
}

std::vector<Candidate> generate_depth_tasks(const ImageContext& ctx) {
  std::vector<Candidate> out;
  depth_tasks(ctx, out);
  return out;
}

std::vector<Candidate> generate_jigsaw_rotation(const ImageContext& ctx) {
  std::vector<Candidate> out;
  jigsaw_rotation(ctx, out);
  return out;
}

std::vector<Candidate> generate_all(const ImageContext& ctx) {
  std::vector<Candidate> out;
  presence_counting(ctx, out);
  quality(ctx, out);
  spatial(ctx, out);
  contact_orientation(ctx, out);
  photometric(ctx, out);
  depth_tasks(ctx, out);
  jigsaw_rotation(ctx, out);
  return out;
}

}  // namespace taskaug::taskgen
