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

#include <gtest/gtest.h>

#include <chrono>

#include <json.hpp>

#include "support.hpp"
#include "taskaug/cli/cli.hpp"
#include "taskaug/cli/config.hpp"
#include "taskaug/common/csv.hpp"
#include "taskaug/common/util.hpp"
#include "taskaug/eval/journal.hpp"
#include "taskaug/ingest/annotation_job.hpp"
#include "taskaug/synth/mock.hpp"
#include "taskaug/synth/scene.hpp"
#include "taskaug/taskgen/bundle.hpp"

namespace taskaug {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

const char* kDatasetToml = R"(seed = 5
out_dir = "out"

[[datasets]]
name = "synthetic"
coco = "annotations.json"
image_root = "images"
depth_dir = "depth"
depth_manifest = "depth/manifest.tsv"
metadata_ratings = "ratings.csv"

[generation]
workers = 2
)";

struct Workspace {
  TempDir dir{"cli"};
  fs::path config;

  explicit Workspace(int scenes = 6, const std::string& extra = "") {
    const auto fx = synth::make_fixture({.scenes = scenes, .width = 128, .height = 96, .seed = 17});
    synth::write_fixture(fx, dir.path());
    config = dir.path() / "config.toml";
    write_file(config, std::string(kDatasetToml) + extra);
  }

  fs::path out() const { return dir.path() / "out"; }

  int run(std::vector<std::string> args) const {
    std::vector<std::string> full{"--config", config.string(), "--log-level", "warn"};
    full.insert(full.end(), args.begin(), args.end());
    return cli::cli_main(full);
  }
};

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli::cli_main(std::vector<std::string>{"frobnicate"}), cli::kExitUsage);
  EXPECT_EQ(cli::cli_main(std::vector<std::string>{}), cli::kExitUsage);
  EXPECT_EQ(cli::cli_main(std::vector<std::string>{"--help"}), cli::kExitOk);
  EXPECT_EQ(cli::cli_main(std::vector<std::string>{"--log-level", "loud", "validate"}), cli::kExitUsage);
  EXPECT_EQ(cli::cli_main(std::vector<std::string>{"--config", "/nonexistent/config.toml", "validate"}),
            cli::kExitUsage);
}

TEST(Cli, BadConfigsExitTwo) {
  TempDir dir("cli_cfg");
  const auto cfg = dir.path() / "c.toml";
  write_file(cfg, "seed = [unterminated\n");
  EXPECT_EQ(cli::cli_main(std::vector<std::string>{"--config", cfg.string(), "validate"}), cli::kExitUsage);
  write_file(cfg, "seed = 1\nbogus_key = 3\n");
  EXPECT_EQ(cli::cli_main(std::vector<std::string>{"--config", cfg.string(), "validate"}), cli::kExitUsage);
  write_file(cfg, "seed = 1\n[generation]\nmin_depth_margin = -1.0\n");
  EXPECT_EQ(cli::cli_main(std::vector<std::string>{"--config", cfg.string(), "validate"}), cli::kExitUsage);
}

TEST(Cli, ExampleConfigLoads) {
  const auto c = cli::load_config(fs::path(TASKAUG_SOURCE_DIR) / "config" / "example.toml");
  ASSERT_EQ(c.datasets.size(), 1u);
  EXPECT_EQ(c.datasets[0].name, "street");
  EXPECT_EQ(c.endpoints.size(), 2u);
  EXPECT_EQ(c.endpoints[1].transport, eval::Transport::http_custom);
  EXPECT_EQ(c.generation.seed, 7u);
  EXPECT_EQ(c.grid.values.size(), 14u);
  EXPECT_EQ(c.templates.version, "v1");
  EXPECT_EQ(c.human_max_raters, 6);
}

TEST(Cli, ValidateCleanFixture) {
  Workspace ws;
  EXPECT_EQ(ws.run({"validate"}), cli::kExitOk);
  const auto report = nlohmann::json::parse(read_file(ws.out() / "validation.json"));
  EXPECT_TRUE(fs::exists(ws.out() / "manifests" / "validate.json"));
  const auto manifest = nlohmann::json::parse(read_file(ws.out() / "manifests" / "validate.json"));
  EXPECT_EQ(manifest["command"], "validate");
  EXPECT_EQ(manifest["config_sha256"].get<std::string>().size(), 64u);
  EXPECT_FALSE(report.dump().empty());
}

TEST(Cli, ValidateReportsBadAnnotations) {
  Workspace ws;
  auto coco = nlohmann::json::parse(read_file(ws.dir.path() / "annotations.json"));
  coco["annotations"][0]["category_id"] = 999;
  write_file(ws.dir.path() / "annotations.json", coco.dump());
  EXPECT_EQ(ws.run({"validate"}), cli::kExitFailure);
  EXPECT_NE(read_file(ws.out() / "validation.json").find("unknown category"), std::string::npos);
}

TEST(Cli, EnrichAndJobs) {
  Workspace ws;
  EXPECT_EQ(ws.run({"enrich"}), cli::kExitOk);
  EXPECT_TRUE(fs::exists(ws.out() / "metadata" / "synthetic.jsonl"));
  EXPECT_EQ(ws.run({"jobs", "export", "--attributes", "occluded,direction", "--job-id", "j1"}), cli::kExitOk);
  const auto rows = csv::parse(read_file(ws.out() / "jobs" / "synthetic_j1.csv"));
  EXPECT_GT(rows.size(), 1u);
  EXPECT_EQ(ws.run({"jobs", "export", "--attributes", "colour"}), cli::kExitUsage);

  EXPECT_EQ(ws.run({"jobs", "import", "--ratings", (ws.dir.path() / "ratings.csv").string(), "--job-id", "r"}),
            cli::kExitOk);
  EXPECT_TRUE(fs::exists(ws.out() / "jobs" / "r_ratings.csv"));
  write_file(ws.dir.path() / "bad.csv",
             "job_id,image_id,object_id,task_id,attribute,rater_id,answer,rank_in_sequence\n"
             "j,i,o,,occluded,r1,maybe,1\n");
  EXPECT_EQ(ws.run({"jobs", "import", "--ratings", (ws.dir.path() / "bad.csv").string()}), cli::kExitFailure);
}

TEST(Cli, ScoreWithoutRecordsFails) {
  Workspace ws;
  ASSERT_EQ(ws.run({"generate"}), cli::kExitOk);
  EXPECT_EQ(ws.run({"score"}), cli::kExitFailure);
  EXPECT_EQ(ws.run({"report"}), cli::kExitFailure);
}

TEST(Cli, GenerateIsReproducible) {
  Workspace ws;
  ASSERT_EQ(ws.run({"--out-dir", (ws.dir.path() / "a").string(), "generate", "--workers", "1"}), cli::kExitOk);
  ASSERT_EQ(ws.run({"--out-dir", (ws.dir.path() / "b").string(), "generate", "--workers", "4"}), cli::kExitOk);
  ASSERT_EQ(ws.run({"--out-dir", (ws.dir.path() / "b").string(), "generate", "--workers", "4"}), cli::kExitOk);
  const auto a = testing::hash_tree(ws.dir.path() / "a" / "bundle");
  EXPECT_GT(a.size(), 3u);
  EXPECT_EQ(a, testing::hash_tree(ws.dir.path() / "b" / "bundle"));
  ASSERT_EQ(ws.run({"--out-dir", (ws.dir.path() / "c").string(), "--seed", "6", "generate"}), cli::kExitOk);
  EXPECT_NE(a, testing::hash_tree(ws.dir.path() / "c" / "bundle"));
}

std::set<std::string> files_outside(const fs::path& root, const fs::path& excluded) {
  std::set<std::string> out;
  for (auto it = fs::recursive_directory_iterator(root); it != fs::recursive_directory_iterator(); ++it) {
    if (it->path() == excluded) {
      it.disable_recursion_pending();
      continue;
    }
    out.insert(fs::relative(it->path(), root).string());
  }
  return out;
}

TEST(Cli, EndToEndWithMockEndpoints) {
  const auto start = std::chrono::steady_clock::now();
  Workspace ws(8);
  const auto out = ws.dir.path() / "run";
  const auto before = files_outside(ws.dir.path(), out);
  auto run = [&](std::vector<std::string> args) {
    args.insert(args.begin(), {"--out-dir", out.string()});
    return ws.run(args);
  };
  ASSERT_EQ(run({"validate"}), cli::kExitOk);
  ASSERT_EQ(run({"enrich"}), cli::kExitOk);
  ASSERT_EQ(run({"generate"}), cli::kExitOk);

  const auto bundle = taskgen::read_bundle(out / "bundle");
  const auto humans = synth::simulate_human_ratings(bundle.tasks, 4, 0.9);
  const auto humans_csv = out / "human_answers.csv";
  write_file(humans_csv, ingest::format_ratings_csv(humans, "humans"));

  synth::MockModelServer server(synth::bundle_oracle_script(bundle, taskgen::default_templates(),
                                                            {{"strong", 0.9}, {"middle", 0.6}, {"weak", 0.3}}, 2));
  std::string endpoints;
  for (const auto& [id, transport, access] :
       std::vector<std::tuple<std::string, std::string, std::string>>{
           {"strong", "http_openai_style", "closed"}, {"middle", "http_custom", "open"}, {"weak", "http_openai_style", "open"}}) {
    endpoints += "\n[[endpoints]]\nmodel_id = \"" + id + "\"\ntransport = \"" + transport + "\"\nbase_url = \"" +
                 server.base_url() + "\"\naccess = \"" + access + "\"\nmax_concurrency = 4\ntimeout_s = 10.0\n";
  }
  write_file(ws.config, std::string(kDatasetToml) + endpoints);

  ASSERT_EQ(run({"evaluate", "--human-ratings", humans_csv.string()}), cli::kExitOk);
  EXPECT_EQ(server.request_count(), 3 * bundle.tasks.size());
  EXPECT_EQ(eval::read_records(out / "eval" / "records.jsonl").size(), 3 * bundle.tasks.size());
  // A second evaluate finds everything already journalled.
  ASSERT_EQ(run({"evaluate"}), cli::kExitOk);
  EXPECT_EQ(server.request_count(), 3 * bundle.tasks.size());

  ASSERT_EQ(run({"score"}), cli::kExitOk);
  ASSERT_EQ(run({"report"}), cli::kExitOk);
  for (const char* f : {"scores/auc.csv", "scores/accuracy_by_dataset.csv", "report/report.json",
                        "report/plot_data/task_correlation.json", "report/plot_data/rank_distribution.json",
                        "manifests/evaluate.json", "eval/run_manifest.json"})
    EXPECT_TRUE(fs::exists(out / f)) << f;

  const auto auc = csv::parse(read_file(out / "scores" / "auc.csv"));
  std::map<std::string, double> by_model;
  for (std::size_t i = 1; i < auc.size(); ++i)
    if (auc[i].size() >= 3 && !auc[i].back().empty()) by_model[auc[i][0]] = std::stod(auc[i].back());
  ASSERT_TRUE(by_model.contains("strong") && by_model.contains("weak"));
  EXPECT_GT(by_model["strong"], by_model["weak"]);

  EXPECT_EQ(files_outside(ws.dir.path(), out), before);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 60.0);
}

}  // namespace
}  // namespace taskaug
