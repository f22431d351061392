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

// Writes synthetic datasets and simulated human answers for demos and tests.

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <map>
#include <thread>

#include "taskaug/common/error.hpp"
#include "taskaug/common/rng.hpp"
#include "taskaug/common/util.hpp"
#include "taskaug/ingest/annotation_job.hpp"
#include "taskaug/synth/mock.hpp"
#include "taskaug/synth/scene.hpp"
#include "taskaug/taskgen/bundle.hpp"

namespace {

using namespace taskaug;
namespace fs = std::filesystem;

std::string config_toml(const std::string& name, std::uint64_t seed) {
  return "seed = " + std::to_string(seed) +
         "\nout_dir = \"out\"\n\n"
         "[[datasets]]\n"
         "name = \"" + name + "\"\n"
         "coco = \"annotations.json\"\n"
         "image_root = \"images\"\n"
         "depth_dir = \"depth\"\n"
         "depth_manifest = \"depth/manifest.tsv\"\n"
         "metadata_ratings = \"ratings.csv\"\n\n"
         "[generation]\n"
         "workers = 4\n\n"
         "[evaluation]\n"
         "human_ratings = \"human_answers.csv\"\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic fixtures for taskaug"};
  app.require_subcommand(1);

  auto* fixture = app.add_subcommand("fixture", "Render scenes and write a dataset plus config.toml");
  std::string out_dir;
  synth::FixtureOptions opt;
  std::string name = "synthetic";
  fixture->add_option("--out", out_dir, "Output directory")->required();
  fixture->add_option("--scenes", opt.scenes, "Number of scenes")->check(CLI::PositiveNumber);
  fixture->add_option("--seed", opt.seed, "Render seed");
  fixture->add_option("--width", opt.width)->check(CLI::Range(48, 4096));
  fixture->add_option("--height", opt.height)->check(CLI::Range(48, 4096));
  fixture->add_option("--name", name, "Dataset name");

  auto* humans = app.add_subcommand("humans", "Simulate task-level human answers for a bundle");
  std::string bundle_dir, out_csv;
  std::uint64_t seed = 1;
  double accuracy = 0.85;
  int threshold = 4, max_raters = 6;
  humans->add_option("--bundle", bundle_dir, "Bundle directory")->required();
  humans->add_option("--out", out_csv, "Ratings CSV to write")->required();
  humans->add_option("--seed", seed);
  humans->add_option("--accuracy", accuracy, "Chance a rater gives the key")->check(CLI::Range(0.0, 1.0));
  humans->add_option("--threshold", threshold);
  humans->add_option("--max-raters", max_raters);

  auto* serve = app.add_subcommand("serve", "Serve a mock model endpoint that knows a bundle's keys");
  std::vector<std::string> models;
  int port = 8080;
  serve->add_option("--bundle", bundle_dir, "Bundle directory")->required();
  serve->add_option("--model", models, "model_id=accuracy, repeatable");
  serve->add_option("--port", port);
  serve->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*fixture) {
      opt.domain = name;
      const auto fx = synth::make_fixture(opt);
      synth::write_fixture(fx, out_dir);
      write_file(fs::path(out_dir) / "config.toml", config_toml(name, opt.seed));
      std::printf("wrote %zu scenes to %s\n", fx.images.size(), out_dir.c_str());
    } else if (*humans) {
      const auto bundle = taskgen::read_bundle(bundle_dir);
      const auto ratings = synth::simulate_human_ratings(bundle.tasks, seed, accuracy, threshold, max_raters);
      write_file(out_csv, ingest::format_ratings_csv(ratings, "humans"));
      std::printf("wrote %zu ratings for %zu tasks\n", ratings.size(), bundle.tasks.size());
    } else if (*serve) {
      std::map<std::string, double> accuracy;
      for (const auto& m : models) {
        const auto eq = m.find('=');
        if (eq == std::string::npos) throw InvalidArgument("--model expects model_id=accuracy");
        accuracy[m.substr(0, eq)] = std::stod(m.substr(eq + 1));
      }
      const auto bundle = taskgen::read_bundle(bundle_dir);
      synth::MockModelServer server(
          synth::bundle_oracle_script(bundle, taskgen::default_templates(), accuracy, seed), port);
      std::printf("serving %zu tasks at %s\n", bundle.tasks.size(), server.base_url().c_str());
      std::fflush(stdout);
      std::signal(SIGINT, [](int) { std::_Exit(0); });
      std::signal(SIGTERM, [](int) { std::_Exit(0); });
      while (true) std::this_thread::sleep_for(std::chrono::hours(1));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
