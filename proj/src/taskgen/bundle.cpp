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

#include "taskaug/taskgen/bundle.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "taskaug/common/error.hpp"
#include "taskaug/common/rng.hpp"
#include "taskaug/common/util.hpp"
#include "taskaug/enrich/metadata_io.hpp"
#include "taskaug/imageops/asset_json.hpp"
#include "taskaug/io/image_io.hpp"

namespace taskaug::taskgen {
namespace {

using nlohmann::ordered_json;

std::string bytes_digest(const void* data, std::size_t n) {
  return sha256_hex(std::string_view(static_cast<const char*>(data), n));
}

std::vector<std::string> class_vocabulary(const DatasetInput& d) {
  std::set<std::string> s;
  for (const auto& img : d.images)
    for (const auto& o : img.objects) s.insert(o.class_name);
  return {s.begin(), s.end()};
}

struct Selected {
  const DatasetInput* dataset;
  const AnnotatedImage* image;
  const std::vector<std::string>* vocabulary;
};

// Greedy per-image choice: take the polarity the ledger is short of.
struct BalanceLedger {
  std::map<TaskType, std::pair<int, int>> counts;  // yes, no
  Rng tie_break;

  explicit BalanceLedger(std::uint64_t seed) : tie_break(derive_seed(seed, "balance")) {}

  bool want_yes(TaskType t) {
    const auto [yes, no] = counts[t];
    if (yes != no) return yes < no;
    return tie_break.coin();
  }
  void record(TaskType t, bool yes) { (yes ? counts[t].first : counts[t].second)++; }
};

void choose_for_image(std::vector<Candidate>& candidates, const GenerationConfig& config, BalanceLedger& ledger,
                      std::vector<Candidate>& out) {
  const int cap = std::max(1, config.max_tasks_per_type_per_image);
  std::map<TaskType, std::vector<Candidate*>> by_type;
  for (auto& c : candidates) by_type[c.task.task_type].push_back(&c);
  for (auto& [type, list] : by_type) {
    if (answer_type_of(type) != AnswerType::binary) {
      for (int k = 0; k < cap && k < static_cast<int>(list.size()); ++k) out.push_back(std::move(*list[k]));
      continue;
    }
    std::vector<Candidate*> yes, no;
    for (auto* c : list) (c->task.answer_key == "yes" ? yes : no).push_back(c);
    std::size_t yi = 0, ni = 0;
    for (int k = 0; k < cap; ++k) {
      const bool have_yes = yi < yes.size(), have_no = ni < no.size();
      if (!have_yes && !have_no) break;
      const bool pick_yes = have_yes && have_no ? ledger.want_yes(type) : have_yes;
      Candidate* c = pick_yes ? yes[yi++] : no[ni++];
      ledger.record(type, pick_yes);
      out.push_back(std::move(*c));
    }
  }
}

// Drops the latest tasks of the over-represented key until the yes rate is
// within tolerance. Types with only one key present are left alone.
void trim_to_tolerance(std::vector<Candidate>& chosen, double tolerance, std::vector<std::string>& warnings) {
  std::map<TaskType, std::pair<int, int>> counts;
  for (const auto& c : chosen) {
    if (c.task.answer_type != AnswerType::binary) continue;
    (c.task.answer_key == "yes" ? counts[c.task.task_type].first : counts[c.task.task_type].second)++;
  }
  std::map<std::pair<TaskType, bool>, int> drop;
  for (const auto& [type, yn] : counts) {
    const auto [yes, no] = yn;
    const int minority = std::min(yes, no), majority = std::max(yes, no);
    if (minority == 0) {
      warnings.push_back(std::string(task_code(type)) + ": only '" + (yes ? "yes" : "no") +
                         "' keys available; balance not attainable");
      continue;
    }
    if (tolerance >= 0.5) continue;
    const int max_major = static_cast<int>(std::floor(minority * (0.5 + tolerance) / (0.5 - tolerance) + 1e-9));
    if (majority > max_major) drop[{type, yes > no}] = majority - max_major;
  }
  if (drop.empty()) return;
  std::vector<bool> keep(chosen.size(), true);
  for (std::size_t i = chosen.size(); i-- > 0;) {
    const auto& t = chosen[i].task;
    if (t.answer_type != AnswerType::binary) continue;
    auto it = drop.find({t.task_type, t.answer_key == "yes"});
    if (it == drop.end() || it->second == 0) continue;
    keep[i] = false;
    --it->second;
  }
  std::vector<Candidate> kept;
  for (std::size_t i = 0; i < chosen.size(); ++i)
    if (keep[i]) kept.push_back(std::move(chosen[i]));
  chosen = std::move(kept);
}

std::map<std::string, const AnnotatedImage*> image_index(const std::vector<DatasetInput>& datasets) {
  std::map<std::string, const AnnotatedImage*> index;
  for (const auto& d : datasets) {
    for (const auto& img : d.images) {
      if (!index.emplace(img.image_id, &img).second) {
        throw InvalidArgument("image id " + img.image_id + " appears in more than one dataset");
      }
    }
  }
  return index;
}

std::string jsonl(const std::vector<ordered_json>& rows) {
  std::string out;
  for (const auto& r : rows) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

}  // namespace

ordered_json to_json(const TaskInstance& t) {
  ordered_json j;
  j["task_id"] = t.task_id;
  j["task_type"] = task_code(t.task_type);
  j["answer_type"] = to_string(t.answer_type);
  j["image_id"] = t.image_id;
  j["domain"] = t.domain;
  j["image_refs"] = t.image_refs;
  j["prompt_text"] = t.prompt_text;
  j["options"] = t.options;
  j["answer_key"] = t.answer_key;
  j["subject_object_ids"] = t.subject_object_ids;
  j["markings"] = ordered_json::array();
  for (const auto& m : t.markings) j["markings"].push_back(imageops::to_json(m));
  j["generation_seed"] = t.generation_seed;
  j["provenance"] = t.provenance;
  return j;
}

TaskInstance task_from_json(const ordered_json& j) {
  TaskInstance t;
  try {
    t.task_id = j.at("task_id").get<std::string>();
    const auto type = parse_task_type(j.at("task_type").get<std::string>());
    if (!type) throw ParseError("unknown task type " + j.at("task_type").dump());
    t.task_type = *type;
    const auto answer = parse_answer_type(j.at("answer_type").get<std::string>());
    if (!answer) throw ParseError("unknown answer type " + j.at("answer_type").dump());
    t.answer_type = *answer;
    t.image_id = j.at("image_id").get<std::string>();
    t.domain = j.value("domain", "");
    t.image_refs = j.at("image_refs").get<std::vector<std::string>>();
    t.prompt_text = j.at("prompt_text").get<std::string>();
    t.options = j.value("options", std::vector<std::string>{});
    t.answer_key = j.at("answer_key").get<std::string>();
    t.subject_object_ids = j.value("subject_object_ids", std::vector<std::string>{});
    if (j.contains("markings"))
      for (const auto& m : j.at("markings")) t.markings.push_back(imageops::marking_from_json(m));
    t.generation_seed = j.value("generation_seed", std::uint64_t{0});
    t.provenance = j.value("provenance", std::vector<std::string>{});
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("bad task record: ") + e.what());
  }
  return t;
}

ordered_json to_json(const GenerationConfig& c) {
  ordered_json j;
  j["seed"] = c.seed;
  j["min_size_ratio"] = c.min_size_ratio;
  j["min_depth_margin"] = c.min_depth_margin;
  j["min_brightness_margin"] = c.min_brightness_margin;
  j["min_position_margin"] = c.min_position_margin;
  j["min_point_distance"] = c.min_point_distance;
  j["max_tasks_per_type_per_image"] = c.max_tasks_per_type_per_image;
  j["binary_balance_tolerance"] = c.binary_balance_tolerance;
  j["budget"] = c.budget;
  j["min_tile_size"] = c.min_tile_size;
  j["dominant_hue_share"] = c.dominant_hue_share;
  j["color_tile_size"] = c.color_tile_size;
  j["corruption"] = {{"blur_sigmas", c.grid.blur_sigmas},
                     {"noise_stds", c.grid.noise_stds},
                     {"hue_shifts", c.grid.hue_shifts},
                     {"brightness_factors", c.grid.brightness_factors}};
  return j;
}

std::string dataset_digest(const std::vector<DatasetInput>& datasets) {
  std::ostringstream s;
  for (const auto& d : datasets) {
    s << "dataset " << d.name << '\n';
    std::vector<const AnnotatedImage*> images;
    for (const auto& img : d.images) images.push_back(&img);
    std::ranges::sort(images, {}, &AnnotatedImage::image_id);
    for (const auto* img : images) {
      s << "image " << img->image_id << ' ' << img->width << ' ' << img->height << ' '
        << bytes_digest(img->pixels.data.data(), img->pixels.data.size()) << '\n';
      for (const auto& o : img->objects) {
        s << "object " << o.object_id << ' ' << o.class_name << ' '
          << bytes_digest(o.mask.bits.data(), o.mask.bits.size()) << '\n';
      }
      if (auto it = d.metadata.find(img->image_id); it != d.metadata.end()) {
        s << "metadata " << sha256_hex(enrich::to_jsonl(it->second)) << '\n';
      }
      if (auto it = d.depth.find(img->image_id); it != d.depth.end()) {
        const auto& r = it->second.raster;
        s << "depth " << bytes_digest(r.data.data(), r.data.size() * sizeof(std::uint16_t)) << '\n';
      }
    }
  }
  return sha256_hex(s.str());
}

TaskBundle build_bundle(const std::vector<DatasetInput>& datasets, const GenerationConfig& config,
                        const TemplateSet& templates) {
  config.validate();
  image_index(datasets);  // rejects duplicate ids

  std::vector<std::vector<std::string>> vocabularies;
  vocabularies.reserve(datasets.size());
  for (const auto& d : datasets) vocabularies.push_back(class_vocabulary(d));

  std::vector<Selected> selected;
  for (std::size_t di = 0; di < datasets.size(); ++di) {
    const auto& d = datasets[di];
    if (d.images.empty()) continue;
    const int budget = config.budget > 0 ? config.budget : static_cast<int>(d.images.size());
    for (const auto* img : select_images(d.images, budget)) selected.push_back({&d, img, &vocabularies[di]});
  }

  static const std::vector<MetadataRecord> kNoMetadata;
  std::vector<std::vector<Candidate>> per_image(selected.size());
  parallel_for(selected.size(), config.workers, [&](std::size_t i) {
    const auto& sel = selected[i];
    const auto meta_it = sel.dataset->metadata.find(sel.image->image_id);
    const auto depth_it = sel.dataset->depth.find(sel.image->image_id);
    const ImageContext ctx{*sel.image,
                           meta_it == sel.dataset->metadata.end() ? kNoMetadata : meta_it->second,
                           depth_it == sel.dataset->depth.end() ? nullptr : &depth_it->second,
                           *sel.vocabulary,
                           config,
                           templates};
    per_image[i] = generate_all(ctx);
  });

  TaskBundle bundle;
  BalanceLedger ledger(config.seed);
  std::vector<Candidate> chosen;
  for (auto& candidates : per_image) choose_for_image(candidates, config, ledger, chosen);
  trim_to_tolerance(chosen, config.binary_balance_tolerance, bundle.warnings);

  std::map<std::string, AssetSpec> assets;
  std::map<std::string, int> per_type;
  for (auto& c : chosen) {
    for (auto& a : c.assets) assets.emplace(a.asset_id, std::move(a));
    per_type[std::string(task_code(c.task.task_type))]++;
    bundle.tasks.push_back(std::move(c.task));
  }
  for (auto& [id, spec] : assets) bundle.assets.push_back(std::move(spec));
  if (bundle.tasks.empty()) bundle.warnings.push_back("no tasks generated; bundle is empty");

  auto& m = bundle.manifest;
  m["format"] = "taskaug-bundle/1";
  m["seed"] = config.seed;
  m["dataset_sha256"] = dataset_digest(datasets);
  m["template_version"] = templates.version;
  m["config"] = to_json(config);
  m["images"] = selected.size();
  m["task_count"] = bundle.tasks.size();
  m["asset_count"] = bundle.assets.size();
  m["tasks_per_type"] = per_type;
  return bundle;
}

void write_bundle(const TaskBundle& bundle, const std::vector<DatasetInput>& datasets,
                  const std::filesystem::path& dir, unsigned workers) {
  const auto index = image_index(datasets);
  std::filesystem::create_directories(dir / "assets");
  parallel_for(bundle.assets.size(), workers, [&](std::size_t i) {
    const auto& spec = bundle.assets[i];
    const auto it = index.find(spec.parent_image_id);
    if (it == index.end()) throw InvalidArgument("asset " + spec.asset_id + " has unknown parent " + spec.parent_image_id);
    write_file(dir / "assets" / (spec.asset_id + ".png"), io::encode_png(imageops::replay(*it->second, spec.chain)));
  });

  std::vector<ordered_json> task_rows, asset_rows;
  for (const auto& t : bundle.tasks) task_rows.push_back(to_json(t));
  for (const auto& a : bundle.assets) {
    ordered_json j;
    j["asset_id"] = a.asset_id;
    j["parent_image_id"] = a.parent_image_id;
    j["transform_chain"] = imageops::to_json(a.chain);
    asset_rows.push_back(std::move(j));
  }
  write_file(dir / "tasks.jsonl", jsonl(task_rows));
  write_file(dir / "assets.jsonl", jsonl(asset_rows));
  write_file(dir / "manifest.json", bundle.manifest.dump(2) + "\n");
}

std::filesystem::path LoadedBundle::asset_path(const std::string& asset_id) const {
  return dir / "assets" / (asset_id + ".png");
}

LoadedBundle read_bundle(const std::filesystem::path& dir) {
  LoadedBundle b;
  b.dir = dir;
  auto each_line = [&](const std::string& name, auto&& fn) {
    const auto text = read_file(dir / name);
    std::size_t start = 0, line_no = 0;
    while (start < text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string::npos) end = text.size();
      ++line_no;
      const std::string_view line(text.data() + start, end - start);
      if (!line.empty()) {
        ordered_json j;
        try {
          j = ordered_json::parse(line);
        } catch (const ordered_json::parse_error& e) {
          throw ParseError(name + " line " + std::to_string(line_no) + ": " + e.what(), start + e.byte);
        }
        fn(j);
      }
      start = end + 1;
    }
  };
  each_line("tasks.jsonl", [&](const ordered_json& j) { b.tasks.push_back(task_from_json(j)); });
  each_line("assets.jsonl", [&](const ordered_json& j) {
    b.assets.push_back({j.at("asset_id").get<std::string>(), j.at("parent_image_id").get<std::string>(),
                        imageops::chain_from_json(j.at("transform_chain"))});
  });
  try {
    b.manifest = ordered_json::parse(read_file(dir / "manifest.json"));
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(std::string("manifest.json: ") + e.what(), e.byte);
  }
  return b;
}

}  // namespace taskaug::taskgen
