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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "taskaug/core/types.hpp"
#include "taskaug/synth/scene.hpp"
#include "taskaug/taskgen/bundle.hpp"
#include "taskaug/taskgen/config.hpp"

namespace taskaug::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& label);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Relative path -> sha256 of every regular file under `dir`.
std::map<std::string, std::string> hash_tree(const std::filesystem::path& dir);

// Runs the fixture through consensus and enrichment like the CLI does.
taskgen::DatasetInput fixture_dataset(const synth::Fixture& fx, const std::string& name = "synthetic",
                                      int consensus_threshold = 4);

// Recomputes every task's key from the fixture's ground truth, raw masks,
// pixels, depth raster and the written asset PNGs. Returns one message per
// disagreement; `checked` receives the number of tasks examined per type code.
std::vector<std::string> check_answer_keys(const synth::Fixture& fx, const taskgen::LoadedBundle& bundle,
                                           const taskgen::GenerationConfig& config,
                                           std::map<std::string, int>& checked);

// Independent image measures (luma on a 0..255 scale).
double oracle_luma(Rgb c);
double oracle_laplacian_variance(const RgbImage& img, const Mask* region = nullptr);
double oracle_mean_abs_neighbour_delta(const RgbImage& img, const Mask* region = nullptr);

// Brute-force score tables: correct[model][image][question] with -1 for a
// question the model did not answer.
struct RawScores {
  std::vector<std::string> models;
  std::vector<std::string> images;
  std::vector<std::vector<std::vector<int>>> correct;
};
RawScores random_raw_scores(std::uint64_t seed, int max_images = 50, int max_questions = 25, int max_models = 10);
// Converts to tasks (binary, key "yes") and records; unanswered cells become
// transport errors.
void to_tasks_and_records(const RawScores& s, std::vector<TaskInstance>& tasks, std::vector<EvalRecord>& records);
double oracle_accuracy_percent(const RawScores& s, std::size_t model, double t);
double oracle_auc(const RawScores& s, std::size_t model, const std::vector<double>& grid);

}  // namespace taskaug::testing
