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

#include "support.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <optional>
#include <regex>

#include "taskaug/common/rng.hpp"
#include "taskaug/common/util.hpp"
#include "taskaug/enrich/consensus.hpp"
#include "taskaug/enrich/metadata.hpp"
#include "taskaug/io/image_io.hpp"

namespace taskaug::testing {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string& label) {
  static std::atomic<int> counter{0};
  Rng rng(static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count()));
  path_ = fs::temp_directory_path() /
          ("taskaug_" + label + "_" + std::to_string(counter++) + "_" + std::to_string(rng.next_u64() % 1000000));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::map<std::string, std::string> hash_tree(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out[std::filesystem::relative(e.path(), dir).string()] = sha256_hex(read_file(e.path()));
  return out;
}

taskgen::DatasetInput fixture_dataset(const synth::Fixture& fx, const std::string& name, int consensus_threshold) {
  taskgen::DatasetInput in;
  in.name = name;
  in.images = fx.images;
  const auto consensus = enrich::merge_all(fx.ratings, consensus_threshold);
  for (const auto& img : fx.images) {
    ingest::DepthMap d;
    d.image_id = img.image_id;
    d.raster = fx.depth.at(img.image_id);
    in.depth.emplace(img.image_id, std::move(d));
    in.metadata[img.image_id] = enrich::enrich_image(img, &in.depth.at(img.image_id), consensus).records;
  }
  return in;
}

// ---------------------------------------------------------------------------
// Image measures

double oracle_luma(Rgb c) { return 0.299 * c.r + 0.587 * c.g + 0.114 * c.b; }

namespace {

bool in_region(const Mask* region, int x, int y) { return !region || region->at(x, y); }

template <class F>
double variance_over(const RgbImage& img, const Mask* region, F value) {
  double sum = 0, sum2 = 0;
  std::int64_t n = 0;
  for (int y = 1; y + 1 < img.height; ++y) {
    for (int x = 1; x + 1 < img.width; ++x) {
      if (!in_region(region, x, y)) continue;
      const double v = value(x, y);
      sum += v;
      sum2 += v * v;
      ++n;
    }
  }
  if (n == 0) return 0;
  const double mean = sum / n;
  return sum2 / n - mean * mean;
}

}  // namespace

double oracle_laplacian_variance(const RgbImage& img, const Mask* region) {
  auto l = [&](int x, int y) { return oracle_luma(img.at(x, y)); };
  return variance_over(img, region, [&](int x, int y) {
    return l(x - 1, y) + l(x + 1, y) + l(x, y - 1) + l(x, y + 1) - 4 * l(x, y);
  });
}

double oracle_mean_abs_neighbour_delta(const RgbImage& img, const Mask* region) {
  double sum = 0;
  std::int64_t n = 0;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (!in_region(region, x, y)) continue;
      for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}}) {
        if (x + dx >= img.width || y + dy >= img.height || !in_region(region, x + dx, y + dy)) continue;
        const auto a = img.at(x, y), b = img.at(x + dx, y + dy);
        sum += std::abs(a.r - b.r) + std::abs(a.g - b.g) + std::abs(a.b - b.b);
        n += 3;
      }
    }
  }
  return n ? sum / n : 0;
}

// ---------------------------------------------------------------------------
// Answer-key oracle

namespace {

struct Box {
  int x0 = 1 << 30, y0 = 1 << 30, x1 = -1, y1 = -1;  // inclusive pixel bounds
  double cx() const { return (x0 + x1 + 1) / 2.0; }
  double cy() const { return (y0 + y1 + 1) / 2.0; }
};

Box raw_box(const Mask& m) {
  Box b;
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x)
      if (m.at(x, y)) {
        b.x0 = std::min(b.x0, x);
        b.y0 = std::min(b.y0, y);
        b.x1 = std::max(b.x1, x);
        b.y1 = std::max(b.y1, y);
      }
  return b;
}

bool masks_touch(const Mask& a, const Mask& b) {
  for (int y = 0; y < a.height; ++y)
    for (int x = 0; x < a.width; ++x) {
      if (!a.at(x, y)) continue;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int u = x + dx, v = y + dy;
          if (u >= 0 && v >= 0 && u < b.width && v < b.height && b.at(u, v)) return true;
        }
    }
  return false;
}

double window_luma(const RgbImage& img, int cx, int cy) {
  double s = 0;
  int n = 0;
  for (int y = cy - 4; y <= cy + 4; ++y)
    for (int x = cx - 4; x <= cx + 4; ++x)
      if (x >= 0 && y >= 0 && x < img.width && y < img.height) {
        s += oracle_luma(img.at(x, y)) / 255.0;
        ++n;
      }
  return s / n;
}

double mean_luma(const RgbImage& img) {
  double s = 0;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) s += oracle_luma(img.at(x, y));
  return s / (static_cast<double>(img.width) * img.height * 255.0);
}

// Clockwise quarter turns.
RgbImage turn(const RgbImage& src, int quarters) {
  RgbImage cur = src;
  for (int q = 0; q < quarters; ++q) {
    RgbImage next(cur.height, cur.width);
    for (int y = 0; y < cur.height; ++y)
      for (int x = 0; x < cur.width; ++x) next.set(cur.height - 1 - y, x, cur.at(x, y));
    cur = std::move(next);
  }
  return cur;
}

int hue_bin_of(Rgb c) {
  const double r = c.r / 255.0, g = c.g / 255.0, b = c.b / 255.0;
  const double mx = std::max({r, g, b}), mn = std::min({r, g, b});
  if (mx - mn < 1e-9) return -1;
  double h;
  if (mx == r) h = 60 * std::fmod((g - b) / (mx - mn) + 6, 6.0);
  else if (mx == g) h = 60 * ((b - r) / (mx - mn) + 2);
  else h = 60 * ((r - g) / (mx - mn) + 4);
  return static_cast<int>(std::lround(h / 45.0)) % 8;
}

std::string letter(std::size_t i) { return std::string(1, static_cast<char>('a' + i)); }

struct Context {
  const synth::Fixture& fx;
  const taskgen::LoadedBundle& bundle;
  const taskgen::GenerationConfig& cfg;
  std::map<std::string, const AnnotatedImage*> images;
  std::map<std::string, const synth::ObjectTruth*> truth;
  std::map<std::string, RgbImage> asset_cache;

  const RgbImage& asset(const std::string& id) {
    auto it = asset_cache.find(id);
    if (it == asset_cache.end()) it = asset_cache.emplace(id, io::read_rgb(bundle.asset_path(id))).first;
    return it->second;
  }
  const ObjectInstance& object(const AnnotatedImage& img, const std::string& id) {
    for (const auto& o : img.objects)
      if (o.object_id == id) return o;
    throw std::runtime_error("unknown object " + id);
  }
};

// Index of the single option whose pixels satisfy `pred`, or nullopt.
template <class Pred>
std::optional<std::size_t> unique_option(Context& c, const TaskInstance& t, Pred pred) {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < t.options.size(); ++i) {
    if (pred(c.asset(t.options[i]))) {
      if (found) return std::nullopt;
      found = i;
    }
  }
  return found;
}

std::string colour_of(const TaskInstance& t, const std::string& object_id) {
  for (const auto& m : t.markings)
    if (m.object_id == object_id) return std::string(to_string(m.color));
  return "?";
}

std::string marked_object(const TaskInstance& t) {
  for (const auto& m : t.markings)
    if (m.style == MarkerStyle::box && m.color == MarkerColor::red) return m.object_id;
  return t.markings.empty() ? "" : t.markings.front().object_id;
}

std::optional<Point> point_of(const TaskInstance& t, MarkerColor c) {
  for (const auto& m : t.markings)
    if (m.style == MarkerStyle::point && m.color == c) return m.point;
  return std::nullopt;
}

std::string class_from_prompt(const std::string& prompt, TaskType type) {
  static const std::regex presence(R"(Is there an? (.+) in the image\?)");
  static const std::regex count(R"(class '(.+)')");
  std::smatch m;
  if (std::regex_search(prompt, m, type == TaskType::T1_1 ? presence : count)) return m[1];
  return "";
}

// Returns the expected key, or an empty string when the oracle cannot decide
// (reported as a failure by the caller).
std::string expected_key(Context& c, const TaskInstance& t, std::string& note) {
  const auto& img = *c.images.at(t.image_id);
  switch (t.task_type) {
    case TaskType::T1_1: {
      const auto cls = class_from_prompt(t.prompt_text, t.task_type);
      const bool present = std::ranges::any_of(img.objects, [&](const auto& o) { return o.class_name == cls; });
      return present ? "yes" : "no";
    }
    case TaskType::T1_2: {
      const auto cls = class_from_prompt(t.prompt_text, t.task_type);
      return std::to_string(std::ranges::count_if(img.objects, [&](const auto& o) { return o.class_name == cls; }));
    }
    case TaskType::T1_3: return img.objects.size() >= 2 ? "yes" : "no";
    case TaskType::T2_1: {
      const auto* tr = c.truth.at(marked_object(t));
      if (tr->occluded == TriState::unresolved) return "";
      return tr->occluded == TriState::yes ? "b" : "a";
    }
    case TaskType::T2_2: {
      const auto* tr = c.truth.at(marked_object(t));
      if (tr->truncated == TriState::unresolved) return "";
      return tr->truncated == TriState::yes ? "yes" : "no";
    }
    case TaskType::T2_3:
    case TaskType::T2_4: {
      const auto& mask = c.object(img, marked_object(t)).mask;
      const bool blur = t.task_type == TaskType::T2_3;
      std::vector<double> score;
      for (const auto& o : t.options) {
        score.push_back(blur ? -oracle_laplacian_variance(c.asset(o), &mask)
                             : oracle_mean_abs_neighbour_delta(c.asset(o), &mask));
      }
      const auto best = std::ranges::max_element(score) - score.begin();
      for (std::size_t i = 0; i < score.size(); ++i)
        if (static_cast<long>(i) != best && !(score[i] < score[best])) return "";
      return letter(best);
    }
    case TaskType::T2_5:
    case TaskType::T2_6:
    case TaskType::T5_3:
    case TaskType::T8_1: {
      const auto i = unique_option(c, t, [&](const RgbImage& a) { return a == img.pixels; });
      return i ? letter(*i) : "";
    }
    case TaskType::T3_1: {
      const auto& a = c.object(img, t.subject_object_ids.at(0));
      const auto& b = c.object(img, t.subject_object_ids.at(1));
      const auto na = a.mask.count(), nb = b.mask.count();
      if (std::max(na, nb) < c.cfg.min_size_ratio * std::min(na, nb)) note = "area ratio below margin";
      return colour_of(t, na > nb ? a.object_id : b.object_id);
    }
    case TaskType::T3_2:
    case TaskType::T3_3: {
      const auto& a = c.object(img, t.subject_object_ids.at(0));
      const auto& b = c.object(img, t.subject_object_ids.at(1));
      const auto ba = raw_box(a.mask), bb = raw_box(b.mask);
      if (t.task_type == TaskType::T3_2) {
        if (std::fabs(ba.cx() - bb.cx()) < c.cfg.min_position_margin * img.width) note = "x gap below margin";
        return colour_of(t, ba.cx() < bb.cx() ? a.object_id : b.object_id);
      }
      if (std::fabs(ba.cy() - bb.cy()) < c.cfg.min_position_margin * img.height) note = "y gap below margin";
      return colour_of(t, ba.cy() > bb.cy() ? a.object_id : b.object_id);
    }
    case TaskType::T3_4:
    case TaskType::T3_5: {
      const bool left = t.task_type == TaskType::T3_4;
      const auto& m = c.object(img, marked_object(t));
      const auto bm = raw_box(m.mask);
      const double margin = c.cfg.min_position_margin * (left ? img.width : img.height);
      bool beyond = false, partial = false;
      for (const auto& o : img.objects) {
        if (o.object_id == m.object_id) continue;
        const auto bo = raw_box(o.mask);
        const double d = left ? bm.cx() - bo.cx() : bo.cy() - bm.cy();
        if (d >= margin) beyond = true;
        else if (d > 0) partial = true;
      }
      if (!beyond && partial) return "";
      return beyond ? "yes" : "no";
    }
    case TaskType::T4_1: {
      const auto& a = c.object(img, t.subject_object_ids.at(0));
      const auto& b = c.object(img, t.subject_object_ids.at(1));
      return masks_touch(a.mask, b.mask) ? "yes" : "no";
    }
    case TaskType::T4_2: {
      const auto* tr = c.truth.at(marked_object(t));
      if (tr->direction == Direction::unresolved) return "";
      return letter(static_cast<std::size_t>(tr->direction));
    }
    case TaskType::T5_1: {
      const int bin = c.truth.at(t.subject_object_ids.at(0))->hue_bin;
      const auto i = unique_option(c, t, [&](const RgbImage& a) { return hue_bin_of(a.at(0, 0)) == bin; });
      return i ? letter(*i) : "";
    }
    case TaskType::T5_2: {
      std::vector<std::pair<double, std::size_t>> lum;
      for (std::size_t i = 0; i < t.options.size(); ++i) lum.emplace_back(mean_luma(c.asset(t.options[i])), i);
      std::ranges::sort(lum, std::greater<>{});
      for (std::size_t i = 1; i < lum.size(); ++i)
        if (lum[i - 1].first - lum[i].first < c.cfg.min_brightness_margin) note = "brightness gap below margin";
      return letter(lum[1].second);
    }
    case TaskType::T5_4: {
      const auto red = point_of(t, MarkerColor::red), green = point_of(t, MarkerColor::green);
      if (!red || !green) return "";
      const double a = window_luma(img.pixels, red->x, red->y), b = window_luma(img.pixels, green->x, green->y);
      if (std::fabs(a - b) < c.cfg.min_brightness_margin) note = "point luma gap below margin";
      return a > b ? "yes" : "no";
    }
    case TaskType::T6_1: {
      const auto* a = c.truth.at(t.subject_object_ids.at(0));
      const auto* b = c.truth.at(t.subject_object_ids.at(1));
      if (std::fabs(a->depth - b->depth) < c.cfg.min_depth_margin - 1e-4) note = "depth gap below margin";
      return colour_of(t, a->depth > b->depth ? a->object_id : b->object_id);
    }
    case TaskType::T6_2: {
      const auto red = point_of(t, MarkerColor::red), green = point_of(t, MarkerColor::green);
      if (!red || !green) return "";
      const auto& d = c.fx.depth.at(img.image_id);
      const double a = d.at(red->x, red->y) / 65535.0, b = d.at(green->x, green->y) / 65535.0;
      if (std::fabs(a - b) < c.cfg.min_depth_margin) note = "point depth gap below margin";
      return a > b ? "yes" : "no";
    }
    case TaskType::T7_1:
    case TaskType::T7_2: {
      const auto& cut = c.asset(t.image_refs.at(0));
      Box hole;
      for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
          if (cut.at(x, y) != img.pixels.at(x, y)) {
            hole.x0 = std::min(hole.x0, x);
            hole.y0 = std::min(hole.y0, y);
            hole.x1 = std::max(hole.x1, x);
            hole.y1 = std::max(hole.y1, y);
          }
      if (hole.x1 < 0) return "";
      RgbImage piece(hole.x1 - hole.x0 + 1, hole.y1 - hole.y0 + 1);
      for (int y = 0; y < piece.height; ++y)
        for (int x = 0; x < piece.width; ++x) piece.set(x, y, img.pixels.at(hole.x0 + x, hole.y0 + y));
      const bool rotated = t.task_type == TaskType::T7_1;
      const auto i = unique_option(c, t, [&](const RgbImage& a) {
        if (!rotated) return a == piece;
        for (int q = 1; q < 4; ++q)
          if (turn(a, q) == piece) return true;
        return false;
      });
      return i ? letter(*i) : "";
    }
  }
  return "";
}

}  // namespace

std::vector<std::string> check_answer_keys(const synth::Fixture& fx, const taskgen::LoadedBundle& bundle,
                                           const taskgen::GenerationConfig& config,
                                           std::map<std::string, int>& checked) {
  Context c{fx, bundle, config, {}, {}, {}};
  for (const auto& img : fx.images) c.images[img.image_id] = &img;
  for (const auto& tr : fx.truth) c.truth[tr.object_id] = &tr;
  std::vector<std::string> failures;
  for (const auto& t : bundle.tasks) {
    std::string note;
    std::string want;
    try {
      want = expected_key(c, t, note);
    } catch (const std::exception& e) {
      note = e.what();
    }
    ++checked[std::string(task_code(t.task_type))];
    if (want.empty() || want != t.answer_key || !note.empty()) {
      failures.push_back(t.task_id + ": key '" + t.answer_key + "', oracle '" + want + "'" +
                         (note.empty() ? "" : " (" + note + ")"));
    }
  }
  return failures;
}

// ---------------------------------------------------------------------------
// Metric oracle

RawScores random_raw_scores(std::uint64_t seed, int max_images, int max_questions, int max_models) {
  Rng rng(seed);
  RawScores s;
  const int models = static_cast<int>(rng.uniform_int(1, max_models));
  const int images = static_cast<int>(rng.uniform_int(1, max_images));
  for (int m = 0; m < models; ++m) s.models.push_back("m" + std::to_string(m));
  std::vector<int> questions;
  for (int i = 0; i < images; ++i) {
    s.images.push_back("img" + std::to_string(i));
    questions.push_back(static_cast<int>(rng.uniform_int(1, max_questions)));
  }
  for (int m = 0; m < models; ++m) {
    const double skill = rng.uniform01();
    const double missing = rng.coin() ? 0.0 : 0.1 * rng.uniform01();
    std::vector<std::vector<int>> per_image;
    for (int i = 0; i < images; ++i) {
      std::vector<int> q;
      for (int k = 0; k < questions[i]; ++k) q.push_back(rng.uniform01() < missing ? -1 : (rng.uniform01() < skill ? 1 : 0));
      per_image.push_back(std::move(q));
    }
    s.correct.push_back(std::move(per_image));
  }
  return s;
}

void to_tasks_and_records(const RawScores& s, std::vector<TaskInstance>& tasks, std::vector<EvalRecord>& records) {
  tasks.clear();
  records.clear();
  for (std::size_t i = 0; i < s.images.size(); ++i) {
    for (std::size_t k = 0; k < s.correct[0][i].size(); ++k) {
      TaskInstance t;
      t.task_id = s.images[i] + ":q" + std::to_string(k);
      t.image_id = s.images[i];
      t.domain = "d";
      t.answer_key = "yes";
      tasks.push_back(t);
      for (std::size_t m = 0; m < s.models.size(); ++m) {
        EvalRecord r;
        r.task_id = t.task_id;
        r.model_id = s.models[m];
        const int v = s.correct[m][i][k];
        if (v < 0) {
          r.status = EvalStatus::transport_error;
        } else {
          r.status = EvalStatus::answered;
          r.parsed_answer = v ? "yes" : "no";
          r.raw_response = *r.parsed_answer;
        }
        records.push_back(std::move(r));
      }
    }
  }
}

double oracle_accuracy_percent(const RawScores& s, std::size_t model, double t) {
  // Exact rational comparison: correct / n >= t with t on a 1/100 grid.
  const long t100 = std::lround(t * 100);
  int passing = 0;
  for (const auto& q : s.correct[model]) {
    long correct = 0;
    for (int v : q) correct += v == 1;
    if (100 * correct >= t100 * static_cast<long>(q.size())) ++passing;
  }
  return 100.0 * passing / static_cast<double>(s.correct[model].size());
}

double oracle_auc(const RawScores& s, std::size_t model, const std::vector<double>& grid) {
  double sum = 0;
  for (double t : grid) sum += oracle_accuracy_percent(s, model, t) / 100.0;
  return sum / static_cast<double>(grid.size());
}

}  // namespace taskaug::testing
