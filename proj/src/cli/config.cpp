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

#include "taskaug/cli/config.hpp"

#include <set>

#include <toml.hpp>

#include "taskaug/common/error.hpp"
#include "taskaug/common/util.hpp"
#include "taskaug/taskgen/bundle.hpp"

namespace taskaug::cli {
namespace {

void check_keys(const toml::table& t, std::string_view where, std::initializer_list<std::string_view> allowed) {
  for (const auto& [k, v] : t) {
    if (std::ranges::find(allowed, k.str()) == allowed.end()) {
      throw InvalidArgument("unknown key '" + std::string(k.str()) + "' in " + std::string(where));
    }
  }
}

template <class T>
void read(const toml::table& t, std::string_view key, T& out, std::string_view where) {
  const auto* node = t.get(key);
  if (!node) return;
  if constexpr (std::is_same_v<T, std::string>) {
    if (auto v = node->value<std::string>()) {
      out = *v;
      return;
    }
  } else if constexpr (std::is_same_v<T, bool>) {
    if (auto v = node->value<bool>()) {
      out = *v;
      return;
    }
  } else if constexpr (std::is_integral_v<T>) {
    if (auto v = node->value<std::int64_t>()) {
      if (*v < 0 && std::is_unsigned_v<T>) throw InvalidArgument(std::string(where) + "." + std::string(key) + " must be >= 0");
      out = static_cast<T>(*v);
      return;
    }
  } else if constexpr (std::is_floating_point_v<T>) {
    if (auto v = node->value<double>()) {
      out = *v;
      return;
    }
  }
  throw InvalidArgument(std::string(where) + "." + std::string(key) + " has the wrong type");
}

void read_path(const toml::table& t, std::string_view key, std::filesystem::path& out, const std::filesystem::path& base,
               std::string_view where) {
  std::string s;
  read(t, key, s, where);
  if (!s.empty()) out = std::filesystem::path(s).is_absolute() ? std::filesystem::path(s) : base / s;
}

std::vector<double> read_doubles(const toml::table& t, std::string_view key, std::vector<double> fallback,
                                 std::string_view where) {
  const auto* node = t.get(key);
  if (!node) return fallback;
  const auto* arr = node->as_array();
  if (!arr) throw InvalidArgument(std::string(where) + "." + std::string(key) + " must be an array");
  std::vector<double> out;
  for (const auto& v : *arr) {
    auto d = v.value<double>();
    if (!d) throw InvalidArgument(std::string(where) + "." + std::string(key) + " must hold numbers");
    out.push_back(*d);
  }
  return out;
}

std::vector<std::string> read_strings(const toml::table& t, std::string_view key, std::vector<std::string> fallback,
                                      std::string_view where) {
  const auto* node = t.get(key);
  if (!node) return fallback;
  const auto* arr = node->as_array();
  if (!arr) throw InvalidArgument(std::string(where) + "." + std::string(key) + " must be an array");
  std::vector<std::string> out;
  for (const auto& v : *arr) {
    auto s = v.value<std::string>();
    if (!s) throw InvalidArgument(std::string(where) + "." + std::string(key) + " must hold strings");
    out.push_back(*s);
  }
  return out;
}

const toml::table* table_at(const toml::table& root, std::string_view key) {
  const auto* node = root.get(key);
  if (!node) return nullptr;
  const auto* t = node->as_table();
  if (!t) throw InvalidArgument("[" + std::string(key) + "] must be a table");
  return t;
}

template <class Fn>
void each_table(const toml::table& root, std::string_view key, Fn&& fn) {
  const auto* node = root.get(key);
  if (!node) return;
  const auto* arr = node->as_array();
  if (!arr) throw InvalidArgument("[[" + std::string(key) + "]] must be an array of tables");
  for (const auto& item : *arr) {
    const auto* t = item.as_table();
    if (!t) throw InvalidArgument("[[" + std::string(key) + "]] entries must be tables");
    fn(*t);
  }
}

}  // namespace

AppConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    throw ParseError("config: " + std::string(e.description()) + " at line " +
                         std::to_string(e.source().begin.line),
                     e.source().begin.line);
  }
  check_keys(root, "config", {"seed", "out_dir", "datasets", "generation", "corruption", "templates", "endpoints",
                              "enrichment", "evaluation", "metrics"});

  AppConfig c;
  c.base_dir = base_dir;
  auto& g = c.generation;
  read(root, "seed", g.seed, "config");
  std::string out_dir;
  read(root, "out_dir", out_dir, "config");
  if (!out_dir.empty()) c.out_dir = std::filesystem::path(out_dir).is_absolute() ? std::filesystem::path(out_dir) : base_dir / out_dir;
  else c.out_dir = base_dir / "out";

  std::set<std::string> names;
  each_table(root, "datasets", [&](const toml::table& t) {
    check_keys(t, "[[datasets]]", {"name", "coco", "image_root", "depth_dir", "depth_manifest", "metadata_ratings"});
    DatasetConfig d;
    read(t, "name", d.name, "datasets");
    if (d.name.empty()) throw InvalidArgument("[[datasets]] entry needs a name");
    if (!names.insert(d.name).second) throw InvalidArgument("duplicate dataset name " + d.name);
    read_path(t, "coco", d.coco, base_dir, "datasets");
    read_path(t, "image_root", d.image_root, base_dir, "datasets");
    read_path(t, "depth_dir", d.depth_dir, base_dir, "datasets");
    read_path(t, "depth_manifest", d.depth_manifest, base_dir, "datasets");
    read_path(t, "metadata_ratings", d.metadata_ratings, base_dir, "datasets");
    if (d.coco.empty()) throw InvalidArgument("dataset " + d.name + " needs a coco file");
    if (d.image_root.empty()) d.image_root = d.coco.parent_path();
    if (!d.depth_dir.empty() && d.depth_manifest.empty()) d.depth_manifest = d.depth_dir / "manifest.tsv";
    c.datasets.push_back(std::move(d));
  });

  if (const auto* t = table_at(root, "generation")) {
    check_keys(*t, "[generation]",
               {"min_size_ratio", "min_depth_margin", "min_brightness_margin", "min_position_margin",
                "min_point_distance", "max_tasks_per_type_per_image", "binary_balance_tolerance", "budget", "workers",
                "min_tile_size", "dominant_hue_share", "color_tile_size"});
    read(*t, "min_size_ratio", g.min_size_ratio, "generation");
    read(*t, "min_depth_margin", g.min_depth_margin, "generation");
    read(*t, "min_brightness_margin", g.min_brightness_margin, "generation");
    read(*t, "min_position_margin", g.min_position_margin, "generation");
    read(*t, "min_point_distance", g.min_point_distance, "generation");
    read(*t, "max_tasks_per_type_per_image", g.max_tasks_per_type_per_image, "generation");
    read(*t, "binary_balance_tolerance", g.binary_balance_tolerance, "generation");
    read(*t, "budget", g.budget, "generation");
    read(*t, "workers", g.workers, "generation");
    read(*t, "min_tile_size", g.min_tile_size, "generation");
    read(*t, "dominant_hue_share", g.dominant_hue_share, "generation");
    read(*t, "color_tile_size", g.color_tile_size, "generation");
  }
  if (const auto* t = table_at(root, "corruption")) {
    check_keys(*t, "[corruption]", {"blur_sigmas", "noise_stds", "hue_shifts", "brightness_factors"});
    g.grid.blur_sigmas = read_doubles(*t, "blur_sigmas", g.grid.blur_sigmas, "corruption");
    g.grid.noise_stds = read_doubles(*t, "noise_stds", g.grid.noise_stds, "corruption");
    g.grid.hue_shifts = read_doubles(*t, "hue_shifts", g.grid.hue_shifts, "corruption");
    g.grid.brightness_factors = read_doubles(*t, "brightness_factors", g.grid.brightness_factors, "corruption");
  }
  if (const auto* t = table_at(root, "templates")) {
    // [templates] version = "..." plus optional ["T1.1"] tables with question/instruction overrides.
    for (const auto& [k, v] : *t) {
      const std::string key(k.str());
      if (key == "version") {
        read(*t, "version", c.templates.version, "templates");
        continue;
      }
      const auto type = parse_task_type(key);
      const auto* sub = v.as_table();
      if (!type || !sub) throw InvalidArgument("unknown template entry '" + key + "'");
      check_keys(*sub, "[templates." + key + "]", {"question", "instruction"});
      auto& tmpl = c.templates.templates[*type];
      read(*sub, "question", tmpl.question, "templates");
      read(*sub, "instruction", tmpl.instruction, "templates");
    }
  }

  std::set<std::string> ids;
  each_table(root, "endpoints", [&](const toml::table& t) {
    check_keys(t, "[[endpoints]]",
               {"model_id", "transport", "base_url", "api_model", "auth_env", "timeout_s", "max_retries",
                "rate_limit_rpm", "max_concurrency", "backoff_base_ms", "access", "refusal_markers"});
    eval::ModelEndpoint e;
    read(t, "model_id", e.model_id, "endpoints");
    std::string transport = std::string(to_string(e.transport));
    read(t, "transport", transport, "endpoints");
    const auto tr = eval::parse_transport(transport);
    if (!tr) throw InvalidArgument("unknown transport '" + transport + "'");
    e.transport = *tr;
    read(t, "base_url", e.base_url, "endpoints");
    read(t, "api_model", e.api_model, "endpoints");
    read(t, "auth_env", e.auth_env, "endpoints");
    read(t, "timeout_s", e.timeout_s, "endpoints");
    read(t, "max_retries", e.max_retries, "endpoints");
    read(t, "rate_limit_rpm", e.rate_limit_rpm, "endpoints");
    read(t, "max_concurrency", e.max_concurrency, "endpoints");
    read(t, "backoff_base_ms", e.backoff_base_ms, "endpoints");
    read(t, "access", e.access, "endpoints");
    e.refusal_markers = read_strings(t, "refusal_markers", e.refusal_markers, "endpoints");
    e.validate();
    if (!ids.insert(e.model_id).second) throw InvalidArgument("duplicate endpoint " + e.model_id);
    if (e.model_id == "humans") throw InvalidArgument("model id 'humans' is reserved");
    c.endpoints.push_back(std::move(e));
  });

  if (const auto* t = table_at(root, "enrichment")) {
    check_keys(*t, "[enrichment]", {"consensus_threshold"});
    read(*t, "consensus_threshold", c.metadata_consensus_threshold, "enrichment");
  }
  if (const auto* t = table_at(root, "evaluation")) {
    check_keys(*t, "[evaluation]", {"human_ratings", "consensus_threshold", "max_raters"});
    read_path(*t, "human_ratings", c.human_ratings, base_dir, "evaluation");
    read(*t, "consensus_threshold", c.human_consensus_threshold, "evaluation");
    read(*t, "max_raters", c.human_max_raters, "evaluation");
  }
  if (const auto* t = table_at(root, "metrics")) {
    check_keys(*t, "[metrics]", {"scoring_mode", "thresholds"});
    std::string mode(to_string(c.scoring_mode));
    read(*t, "scoring_mode", mode, "metrics");
    const auto m = metrics::parse_scoring_mode(mode);
    if (!m) throw InvalidArgument("unknown scoring_mode '" + mode + "'");
    c.scoring_mode = *m;
    c.grid.values = read_doubles(*t, "thresholds", c.grid.values, "metrics");
  }

  g.validate();
  c.grid.validate();
  if (c.metadata_consensus_threshold < 1) throw InvalidArgument("enrichment.consensus_threshold must be >= 1");
  if (c.human_consensus_threshold < 1 || c.human_consensus_threshold > c.human_max_raters) {
    throw InvalidArgument("evaluation needs 1 <= consensus_threshold <= max_raters");
  }
  return c;
}

AppConfig load_config(const std::filesystem::path& path) {
  const auto abs = std::filesystem::absolute(path);
  return parse_config(read_file(abs), abs.parent_path());
}

nlohmann::ordered_json AppConfig::describe() const {
  nlohmann::ordered_json j;
  j["datasets"] = nlohmann::ordered_json::array();
  for (const auto& d : datasets) {
    j["datasets"].push_back({{"name", d.name},
                             {"coco", d.coco.string()},
                             {"image_root", d.image_root.string()},
                             {"depth_dir", d.depth_dir.string()},
                             {"depth_manifest", d.depth_manifest.string()},
                             {"metadata_ratings", d.metadata_ratings.string()}});
  }
  j["generation"] = taskgen::to_json(generation);
  j["template_version"] = templates.version;
  j["endpoints"] = nlohmann::ordered_json::array();
  for (const auto& e : endpoints) j["endpoints"].push_back(e.describe());
  j["enrichment"] = {{"consensus_threshold", metadata_consensus_threshold}};
  j["evaluation"] = {{"human_ratings", human_ratings.string()},
                     {"consensus_threshold", human_consensus_threshold},
                     {"max_raters", human_max_raters}};
  j["metrics"] = {{"scoring_mode", metrics::to_string(scoring_mode)}, {"thresholds", grid.values}};
  return j;
}

}  // namespace taskaug::cli
