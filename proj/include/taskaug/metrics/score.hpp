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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "taskaug/core/types.hpp"

namespace taskaug::metrics {

struct TaskInfo {
  std::string task_id;
  std::string image_id;
  std::string domain;
  TaskType task_type = TaskType::T1_1;
  std::string answer_key;
};

struct Cell {
  bool present = false;  // a record exists for (model, task)
  EvalStatus status = EvalStatus::transport_error;
  bool correct = false;
};

struct ScoreMatrix {
  std::vector<std::string> models;       // sorted
  std::vector<TaskInfo> tasks;           // bundle order
  std::vector<std::vector<Cell>> cells;  // [model][task]
  std::vector<std::string> warnings;

  std::optional<std::size_t> model_index(const std::string& model_id) const;
};

// C = 1 only for answered records whose parsed answer equals the key
// (both trimmed and lowercased). Records for unknown tasks and duplicate
// (task, model) records are reported in `warnings` and ignored.
ScoreMatrix build_score_matrix(const std::vector<TaskInstance>& tasks, const std::vector<EvalRecord>& records);

// How non-answered cells (unparseable, safety block, transport error) count.
enum class ScoringMode { count_as_incorrect, exclude };
std::string_view to_string(ScoringMode m);
std::optional<ScoringMode> parse_scoring_mode(std::string_view s);

// True when the cell enters denominators under `mode`.
bool scored(const Cell& c, ScoringMode mode);

enum class GroupBy { dataset, task_type };

struct AccuracyCell {
  std::string model;
  std::string group;               // domain or task code
  std::optional<double> percent;   // absent when nothing was scored
  int scored = 0;
  int correct = 0;
  std::map<std::string, int> status_counts;  // every present record, by status
};

// One row per (model, group) that has at least one task; rows sorted by model then group.
std::vector<AccuracyCell> accuracy(const ScoreMatrix& m, GroupBy by, ScoringMode mode = ScoringMode::count_as_incorrect);

struct ThresholdGrid {
  std::vector<double> values{0.2, 0.3, 0.4, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95, 1.0};
  // Throws InvalidArgument unless non-empty, strictly increasing, within [0, 1].
  void validate() const;
};

// Fraction of correctly answered questions per image for one model; images
// with no scored question are omitted. An empty `dataset` means all domains.
std::map<std::string, double> per_image_fractions(const ScoreMatrix& m, const std::string& model,
                                                  const std::string& dataset, ScoringMode mode);

// 100 * share of images whose fraction is >= t; absent when no image qualifies
// for scoring.
std::optional<double> accuracy_percent_t(const ScoreMatrix& m, const std::string& model, const std::string& dataset,
                                         double t, ScoringMode mode = ScoringMode::count_as_incorrect);

// Mean of accuracy_percent_t / 100 over the grid, in [0, 1].
std::optional<double> auc_accuracy_percent(const ScoreMatrix& m, const std::string& model, const std::string& dataset,
                                           const ThresholdGrid& grid = {},
                                           ScoringMode mode = ScoringMode::count_as_incorrect);

// Same quantities from precomputed fractions.
double accuracy_percent_t(const std::map<std::string, double>& fractions, double t);
double auc_accuracy_percent(const std::map<std::string, double>& fractions, const ThresholdGrid& grid);

// Distinct domains in task order of first appearance.
std::vector<std::string> domains(const ScoreMatrix& m);

}  // namespace taskaug::metrics
