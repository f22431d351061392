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

#include "taskaug/cli/cli.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <optional>

#include "taskaug/cli/config.hpp"
#include "taskaug/cli/pipeline.hpp"
#include "taskaug/common/error.hpp"
#include "taskaug/common/util.hpp"
#include "taskaug/common/version.hpp"
#include "taskaug/core/validate.hpp"
#include "taskaug/enrich/metadata_io.hpp"
#include "taskaug/eval/journal.hpp"
#include "taskaug/eval/runner.hpp"
#include "taskaug/ingest/annotation_job.hpp"
#include "taskaug/metrics/report.hpp"

namespace taskaug::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Usage problems detected after parsing (missing config, bad values).
struct UsageError : Error {
  using Error::Error;
};

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string log_level = "info";
};

AppConfig load(const Globals& g) {
  if (g.config_path.empty()) throw UsageError("--config is required for this command");
  AppConfig c;
  try {
    c = load_config(g.config_path);
  } catch (const IoError& e) {
    throw UsageError(e.what());
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (g.seed) c.generation.seed = *g.seed;
  if (!g.out_dir.empty()) c.out_dir = g.out_dir;
  return c;
}

fs::path out_dir(const Globals& g, const std::optional<AppConfig>& c) {
  if (!g.out_dir.empty()) return g.out_dir;
  if (c) return c->out_dir;
  return "out";
}

void write_manifest(const fs::path& out, const std::string& command, const AppConfig* config, ordered_json extra = {}) {
  ordered_json m;
  m["command"] = command;
  m["code_version"] = kVersion;
  if (config) {
    const auto described = config->describe();
    m["config_sha256"] = sha256_hex(described.dump());
    m["seed"] = config->generation.seed;
    m["template_version"] = config->templates.version;
  }
  if (!extra.is_null()) m["details"] = std::move(extra);
  write_file(out / "manifests" / (command + ".json"), m.dump(2) + "\n");
}

int cmd_validate(const Globals& g) {
  const auto config = load(g);
  const auto out = out_dir(g, config);
  ordered_json report;
  report["datasets"] = ordered_json::array();
  bool clean = true;
  for (const auto& dc : config.datasets) {
    auto d = load_dataset(dc);
    const auto v = validate_dataset(d.coco.images);
    ordered_json dj;
    dj["name"] = dc.name;
    dj["images"] = d.coco.images.size();
    std::size_t objects = 0;
    for (const auto& img : d.coco.images) objects += img.objects.size();
    dj["objects"] = objects;
    dj["item_errors"] = ordered_json::array();
    for (const auto& e : d.coco.errors)
      dj["item_errors"].push_back({{"kind", e.kind}, {"item", e.item}, {"message", e.message}});
    dj["violations"] = ordered_json::array();
    for (const auto& x : v.violations) {
      dj["violations"].push_back(
          {{"image_id", x.image_id}, {"object_id", x.object_id}, {"kind", x.kind}, {"detail", x.detail}});
    }
    try {
      load_depth(dc, d.coco.images);
    } catch (const Error& e) {
      dj["violations"].push_back({{"image_id", ""}, {"object_id", ""}, {"kind", "depth"}, {"detail", e.what()}});
    }
    dj["warnings"] = d.coco.warnings;
    clean = clean && dj["item_errors"].empty() && dj["violations"].empty();
    spdlog::info("{}: {} images, {} objects, {} item errors, {} violations", dc.name, d.coco.images.size(), objects,
                 dj["item_errors"].size(), dj["violations"].size());
    report["datasets"].push_back(std::move(dj));
  }
  write_file(out / "validation.json", report.dump(2) + "\n");
  write_manifest(out, "validate", &config);
  return clean ? kExitOk : kExitFailure;
}

int cmd_enrich(const Globals& g) {
  const auto config = load(g);
  const auto out = out_dir(g, config);
  ordered_json errors = ordered_json::object();
  for (const auto& dc : config.datasets) {
    auto e = enrich_dataset(dc, config.metadata_consensus_threshold);
    std::vector<MetadataRecord> all;
    for (const auto& img : e.input.images) {
      const auto& recs = e.input.metadata.at(img.image_id);
      all.insert(all.end(), recs.begin(), recs.end());
    }
    write_file(out / "metadata" / (dc.name + ".jsonl"), enrich::to_jsonl(all));
    for (const auto& msg : e.errors) spdlog::warn("{}: {}", dc.name, msg);
    errors[dc.name] = e.errors;
    spdlog::info("{}: {} object records", dc.name, all.size());
  }
  write_manifest(out, "enrich", &config, {{"errors", errors}});
  return kExitOk;
}

std::vector<taskgen::DatasetInput> prepared_datasets(const AppConfig& config, const fs::path& out) {
  std::vector<taskgen::DatasetInput> inputs;
  for (const auto& dc : config.datasets) {
    auto e = enrich_dataset(dc, config.metadata_consensus_threshold);
    for (const auto& msg : e.errors) spdlog::warn("{}: {}", dc.name, msg);
    // Prefer metadata written by `enrich` so edits there carry through.
    const auto meta_path = out / "metadata" / (dc.name + ".jsonl");
    if (fs::exists(meta_path)) {
      std::map<std::string, std::vector<MetadataRecord>> by_image;
      for (auto& r : enrich::from_jsonl(read_file(meta_path))) by_image[r.image_id].push_back(std::move(r));
      for (auto& [image_id, recs] : e.input.metadata) {
        if (auto it = by_image.find(image_id); it != by_image.end()) recs = std::move(it->second);
      }
      spdlog::debug("{}: metadata from {}", dc.name, meta_path.string());
    }
    inputs.push_back(std::move(e.input));
  }
  return inputs;
}

int cmd_generate(const Globals& g, std::optional<unsigned> workers) {
  auto config = load(g);
  if (workers) config.generation.workers = *workers;
  const auto out = out_dir(g, config);
  if (config.datasets.empty()) throw UsageError("config lists no datasets");
  const auto inputs = prepared_datasets(config, out);
  const auto bundle = taskgen::build_bundle(inputs, config.generation, config.templates);
  for (const auto& w : bundle.warnings) spdlog::warn("{}", w);
  const auto dir = out / "bundle";
  if (fs::exists(dir / "assets")) fs::remove_all(dir / "assets");
  taskgen::write_bundle(bundle, inputs, dir, config.generation.workers);
  spdlog::info("bundle: {} tasks, {} assets -> {}", bundle.tasks.size(), bundle.assets.size(), dir.string());
  write_manifest(out, "generate", &config, {{"tasks", bundle.tasks.size()}, {"assets", bundle.assets.size()}});
  return kExitOk;
}

int cmd_evaluate(const Globals& g, const std::string& bundle_dir, const std::string& human_ratings,
                 std::size_t max_records) {
  const auto config = load(g);
  const auto out = out_dir(g, config);
  const auto bundle = taskgen::read_bundle(bundle_dir.empty() ? out / "bundle" : fs::path(bundle_dir));
  const fs::path ratings = human_ratings.empty() ? config.human_ratings : fs::path(human_ratings);
  if (config.endpoints.empty() && ratings.empty()) {
    spdlog::error("nothing to evaluate: no endpoints and no human ratings configured");
    return kExitFailure;
  }
  ordered_json details;
  if (!config.endpoints.empty()) {
    eval::RunOptions opts;
    opts.journal = out / "eval" / "records.jsonl";
    opts.manifest = out / "eval" / "run_manifest.json";
    opts.max_new_records = max_records;
    const auto summary = eval::run_benchmark(bundle, config.endpoints, config.templates, opts);
    spdlog::info("sent {} requests, {} already journaled", summary.sent, summary.skipped);
    details["sent"] = summary.sent;
    details["skipped"] = summary.skipped;
    details["status_counts"] = summary.status_counts;
  }
  if (!ratings.empty()) {
    const auto imported = ingest::import_human_annotations(read_file(ratings));
    for (const auto& e : imported.errors) spdlog::warn("human ratings {} {}: {}", e.kind, e.item, e.message);
    const auto humans = eval::ingest_human_answers(bundle.tasks, imported.ratings, config.human_consensus_threshold,
                                                   config.human_max_raters);
    for (const auto& w : humans.warnings) spdlog::warn("{}", w);
    if (!humans.missing_tasks.empty()) spdlog::warn("{} tasks have no human ratings", humans.missing_tasks.size());
    eval::write_records(out / "eval" / "humans.jsonl", humans.records);
    write_file(out / "eval" / "rater_answers.json", ordered_json(humans.rater_answers).dump(1) + "\n");
    details["human_records"] = humans.records.size();
    details["human_missing_tasks"] = humans.missing_tasks;
  }
  write_manifest(out, "evaluate", &config, details);
  return kExitOk;
}

// Shared by score and report.
std::optional<metrics::MetricReport> compute(const AppConfig& config, const fs::path& out, const std::string& bundle_dir) {
  const auto bundle = taskgen::read_bundle(bundle_dir.empty() ? out / "bundle" : fs::path(bundle_dir));
  std::vector<EvalRecord> records;
  for (const char* name : {"records.jsonl", "humans.jsonl"}) {
    const auto p = out / "eval" / name;
    if (fs::exists(p)) {
      auto r = eval::read_records(p);
      records.insert(records.end(), r.begin(), r.end());
    }
  }
  if (records.empty()) {
    spdlog::error("no eval records under {}; run `evaluate` first", (out / "eval").string());
    return std::nullopt;
  }
  metrics::MetricInputs in;
  in.mode = config.scoring_mode;
  in.grid = config.grid;
  for (const auto& e : config.endpoints) in.access[e.model_id] = e.access;
  if (const auto p = out / "eval" / "rater_answers.json"; fs::exists(p)) {
    in.rater_answers = ordered_json::parse(read_file(p)).get<std::map<std::string, std::vector<std::string>>>();
  }
  const auto matrix = metrics::build_score_matrix(bundle.tasks, records);
  auto report = metrics::compute_report(matrix, in);
  for (const auto& w : report.warnings) spdlog::warn("{}", w);
  return report;
}

int cmd_score(const Globals& g, const std::string& bundle_dir) {
  const auto config = load(g);
  const auto out = out_dir(g, config);
  const auto report = compute(config, out, bundle_dir);
  if (!report) return kExitFailure;
  metrics::write_score_tables(*report, out / "scores");
  write_manifest(out, "score", &config);
  return kExitOk;
}

int cmd_report(const Globals& g, const std::string& bundle_dir) {
  const auto config = load(g);
  const auto out = out_dir(g, config);
  const auto report = compute(config, out, bundle_dir);
  if (!report) return kExitFailure;
  metrics::write_score_tables(*report, out / "report");
  metrics::write_report(*report, out / "report");
  write_manifest(out, "report", &config);
  return kExitOk;
}

int cmd_jobs_export(const Globals& g, const std::vector<std::string>& attrs, const std::string& job_id, int max_raters,
                    int threshold) {
  const auto config = load(g);
  const auto out = out_dir(g, config);
  std::vector<ingest::HumanAttribute> attributes;
  for (const auto& a : attrs) {
    const auto parsed = ingest::parse_human_attribute(a);
    if (!parsed) throw UsageError("unknown attribute '" + a + "'");
    attributes.push_back(*parsed);
  }
  for (const auto& dc : config.datasets) {
    const auto d = load_dataset(dc, false);
    const auto job = ingest::export_annotation_job(d.coco.images, attributes, job_id, max_raters, threshold);
    const auto path = out / "jobs" / (dc.name + "_" + job_id + ".csv");
    write_file(path, job.csv);
    spdlog::info("{}: {} items -> {}", dc.name, job.job.items.size(), path.string());
  }
  write_manifest(out, "jobs_export", &config);
  return kExitOk;
}

int cmd_jobs_import(const Globals& g, const std::string& ratings_path, const std::string& job_id) {
  std::optional<AppConfig> config;
  if (!g.config_path.empty()) config = load(g);
  const auto out = out_dir(g, config);
  const auto imported = ingest::import_human_annotations(read_file(ratings_path));
  ordered_json report;
  report["ratings"] = imported.ratings.size();
  report["errors"] = ordered_json::array();
  for (const auto& e : imported.errors) {
    report["errors"].push_back({{"kind", e.kind}, {"item", e.item}, {"message", e.message}});
    spdlog::warn("{} {}: {}", e.kind, e.item, e.message);
  }
  write_file(out / "jobs" / (job_id + "_ratings.csv"), ingest::format_ratings_csv(imported.ratings, job_id));
  write_file(out / "jobs" / (job_id + "_import.json"), report.dump(2) + "\n");
  write_manifest(out, "jobs_import", config ? &*config : nullptr);
  return imported.errors.empty() ? kExitOk : kExitFailure;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Task augmentation benchmark toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Globals g;
  std::uint64_t seed = 0;
  app.add_option("--config", g.config_path, "TOML configuration file");
  auto* seed_opt = app.add_option("--seed", seed, "Override the generation seed");
  app.add_option("--out-dir", g.out_dir, "Output directory (overrides the config)");
  app.add_option("--log-level", g.log_level, "trace|debug|info|warn|error|off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  auto* validate = app.add_subcommand("validate", "Check dataset invariants");
  auto* enrich_cmd = app.add_subcommand("enrich", "Compute object metadata");
  auto* jobs = app.add_subcommand("jobs", "Human annotation jobs");
  jobs->require_subcommand(1);
  auto* jobs_export = jobs->add_subcommand("export", "Write an annotation job CSV per dataset");
  std::vector<std::string> attrs{"occluded", "truncated", "direction"};
  std::string job_id = "job";
  int max_raters = 5, threshold = 4;
  jobs_export->add_option("--attributes", attrs, "Attributes to annotate")->delimiter(',');
  jobs_export->add_option("--job-id", job_id, "Job identifier");
  jobs_export->add_option("--max-raters", max_raters, "Raters per item");
  jobs_export->add_option("--threshold", threshold, "Agreeing raters that stop an item");
  auto* jobs_import = jobs->add_subcommand("import", "Validate a ratings CSV");
  std::string ratings_path;
  jobs_import->add_option("--ratings", ratings_path, "Ratings CSV")->required();
  jobs_import->add_option("--job-id", job_id, "Job identifier");

  auto* generate = app.add_subcommand("generate", "Build a task bundle");
  std::optional<unsigned> workers;
  generate->add_option("--workers", workers, "Worker threads");
  auto* evaluate = app.add_subcommand("evaluate", "Run a bundle against endpoints");
  std::string bundle_dir, human_ratings;
  std::size_t max_records = 0;
  evaluate->add_option("--bundle", bundle_dir, "Bundle directory (default <out-dir>/bundle)");
  evaluate->add_option("--human-ratings", human_ratings, "Task-level human ratings CSV");
  evaluate->add_option("--max-records", max_records, "Stop after this many new records");
  auto* score = app.add_subcommand("score", "Compute metric tables");
  score->add_option("--bundle", bundle_dir, "Bundle directory (default <out-dir>/bundle)");
  auto* report = app.add_subcommand("report", "Write consolidated report and plot data");
  report->add_option("--bundle", bundle_dir, "Bundle directory (default <out-dir>/bundle)");
  for (auto* sub : {validate, enrich_cmd, jobs, generate, evaluate, score, report}) sub->fallthrough();
  jobs_export->fallthrough();
  jobs_import->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (*seed_opt) g.seed = seed;
  spdlog::set_level(spdlog::level::from_str(g.log_level));

  try {
    if (*validate) return cmd_validate(g);
    if (*enrich_cmd) return cmd_enrich(g);
    if (*jobs_export) return cmd_jobs_export(g, attrs, job_id, max_raters, threshold);
    if (*jobs_import) return cmd_jobs_import(g, ratings_path, job_id);
    if (*generate) return cmd_generate(g, workers);
    if (*evaluate) return cmd_evaluate(g, bundle_dir, human_ratings, max_records);
    if (*score) return cmd_score(g, bundle_dir);
    if (*report) return cmd_report(g, bundle_dir);
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}

int cli_main(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"taskaug"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace taskaug::cli
