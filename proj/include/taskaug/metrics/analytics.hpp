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
#include <span>
#include <string>
#include <vector>

#include "taskaug/metrics/score.hpp"

namespace taskaug::metrics {

// Competition ranks ("1224"): equal scores share the better rank and the
// next rank skips. `higher_is_better` picks the sort direction.
template <class Key>
std::map<Key, int> competition_ranks(const std::map<Key, double>& scores, bool higher_is_better) {
  std::map<Key, int> out;
  for (const auto& [k, v] : scores) {
    int better = 0;
    for (const auto& [k2, v2] : scores) better += (higher_is_better ? v2 > v : v2 < v) ? 1 : 0;
    out[k] = better + 1;
  }
  return out;
}

struct RankTable {
  std::map<std::string, std::map<std::string, int>> ranks;  // group -> model -> rank
  // model -> probability of rank k+1 over the groups the model was ranked in.
  std::map<std::string, std::vector<double>> distribution;
};

// Ranks models per group by descending accuracy. Throws InvalidArgument with
// fewer than two models.
RankTable rank_models(const std::vector<AccuracyCell>& table);

enum class Population { all, open, closed, humans };
std::string_view to_string(Population p);
std::optional<Population> parse_population(std::string_view s);

struct DifficultyRanks {
  // domain -> task code -> rank (1 = hardest), from accuracy pooled over the population.
  std::map<std::string, std::map<std::string, int>> ranks;
  // task code -> share of (domain, model) combinations giving rank k+1.
  std::map<std::string, std::vector<double>> blob;
  int combinations = 0;
};

// `access` maps model ids to "open"/"closed"; the humans pseudo-model only
// belongs to Population::humans. Throws InvalidArgument on an empty population.
DifficultyRanks task_difficulty_ranks(const ScoreMatrix& m, Population population,
                                      const std::map<std::string, std::string>& access,
                                      ScoringMode mode = ScoringMode::count_as_incorrect);

// 1 - (modal answer count / ratings); absent for no ratings.
std::optional<double> human_ambiguity(std::span<const std::string> answers);
std::map<std::string, std::optional<double>> human_ambiguity(const std::map<std::string, std::vector<std::string>>& answers);

// Sample Pearson correlation; absent for fewer than two points or a
// zero-variance input. Throws InvalidArgument on a length mismatch.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

struct LinkageStep {
  int left;   // cluster ids: 0..n-1 leaves, n+k the cluster made at step k
  int right;
  double distance;
  int size;
};

// Average-linkage agglomeration over a symmetric distance matrix. Ties
// merge the pair with the smallest (left, right) ids first.
std::vector<LinkageStep> average_linkage(const std::vector<std::vector<double>>& distance);

struct CorrelationResult {
  std::vector<std::string> tasks;    // task codes
  std::vector<std::string> columns;  // "model@domain"
  std::vector<std::vector<std::optional<double>>> vectors;  // [task][column] accuracy in [0,1]
  std::vector<std::vector<std::optional<double>>> r;        // [task][task]
  std::vector<LinkageStep> linkage;  // on 1 - r; a missing r counts as distance 1
};

// Per-task accuracy vectors over (model, domain) columns, correlated on the
// columns both tasks have. Throws InvalidArgument with fewer than two tasks
// or three models.
CorrelationResult task_correlation(const ScoreMatrix& m, const std::vector<std::string>& models,
                                   ScoringMode mode = ScoringMode::count_as_incorrect);

}  // namespace taskaug::metrics
