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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "taskaug/metrics/analytics.hpp"
#include "taskaug/metrics/score.hpp"

namespace taskaug::metrics {

struct MetricInputs {
  ScoringMode mode = ScoringMode::count_as_incorrect;
  ThresholdGrid grid;
  std::map<std::string, std::string> access;  // model -> open | closed
  std::map<std::string, std::vector<std::string>> rater_answers;  // task_id -> human answers
};

struct MetricReport {
  nlohmann::ordered_json summary;                  // consolidated tables
  std::map<std::string, std::string> tables;       // file name -> CSV text
  std::map<std::string, nlohmann::ordered_json> plot_data;  // file name -> JSON
  std::vector<std::string> warnings;
};

// Computes every metric the inputs allow; metrics whose preconditions fail
// (too few models, empty population) are skipped with a warning.
MetricReport compute_report(const ScoreMatrix& m, const MetricInputs& inputs);

// CSV tables plus metrics.json.
void write_score_tables(const MetricReport& report, const std::filesystem::path& dir);
// report.json plus plot_data/*.json.
void write_report(const MetricReport& report, const std::filesystem::path& dir);

}  // namespace taskaug::metrics
