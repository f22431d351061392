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

#include "taskaug/metrics/score.hpp"

#include <algorithm>
#include <set>

#include "taskaug/common/error.hpp"

namespace taskaug::metrics {
namespace {

std::string canonical(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::optional<std::size_t> ScoreMatrix::model_index(const std::string& model_id) const {
  const auto it = std::ranges::lower_bound(models, model_id);
  if (it == models.end() || *it != model_id) return std::nullopt;
  return static_cast<std::size_t>(it - models.begin());
}

ScoreMatrix build_score_matrix(const std::vector<TaskInstance>& tasks, const std::vector<EvalRecord>& records) {
  ScoreMatrix m;
  std::map<std::string, std::size_t> task_index;
  for (const auto& t : tasks) {
    if (!task_index.emplace(t.task_id, m.tasks.size()).second) {
      throw InvalidArgument("duplicate task id " + t.task_id);
    }
    m.tasks.push_back({t.task_id, t.image_id, t.domain, t.task_type, canonical(t.answer_key)});
  }
  std::set<std::string> models;
  for (const auto& r : records) models.insert(r.model_id);
  m.models.assign(models.begin(), models.end());
  m.cells.assign(m.models.size(), std::vector<Cell>(m.tasks.size()));
  for (const auto& r : records) {
    const auto ti = task_index.find(r.task_id);
    if (ti == task_index.end()) {
      m.warnings.push_back("record for unknown task " + r.task_id + " (" + r.model_id + ")");
      continue;
    }
    auto& cell = m.cells[*m.model_index(r.model_id)][ti->second];
    if (cell.present) {
      m.warnings.push_back("duplicate record for " + r.task_id + " (" + r.model_id + "); first kept");
      continue;
    }
    cell.present = true;
    cell.status = r.status;
    cell.correct = r.status == EvalStatus::answered && r.parsed_answer &&
                   canonical(*r.parsed_answer) == m.tasks[ti->second].answer_key;
  }
  return m;
}

std::string_view to_string(ScoringMode m) { return m == ScoringMode::exclude ? "exclude" : "count_as_incorrect"; }

std::optional<ScoringMode> parse_scoring_mode(std::string_view s) {
  if (s == "count_as_incorrect") return ScoringMode::count_as_incorrect;
  if (s == "exclude") return ScoringMode::exclude;
  return std::nullopt;
}

bool scored(const Cell& c, ScoringMode mode) {
  if (!c.present) return false;
  return mode == ScoringMode::count_as_incorrect || c.status == EvalStatus::answered;
}

std::vector<AccuracyCell> accuracy(const ScoreMatrix& m, GroupBy by, ScoringMode mode) {
  std::vector<AccuracyCell> out;
  for (std::size_t mi = 0; mi < m.models.size(); ++mi) {
    std::map<std::string, AccuracyCell> groups;
    for (std::size_t ti = 0; ti < m.tasks.size(); ++ti) {
      const auto& task = m.tasks[ti];
      const std::string group = by == GroupBy::dataset ? task.domain : std::string(task_code(task.task_type));
      auto& g = groups[group];
      g.model = m.models[mi];
      g.group = group;
      const auto& c = m.cells[mi][ti];
      if (c.present) g.status_counts[std::string(to_string(c.status))]++;
      if (!scored(c, mode)) continue;
      ++g.scored;
      g.correct += c.correct ? 1 : 0;
    }
    for (auto& [name, g] : groups) {
      if (g.scored > 0) g.percent = 100.0 * g.correct / g.scored;
      out.push_back(std::move(g));
    }
  }
  return out;
}

void ThresholdGrid::validate() const {
  if (values.empty()) throw InvalidArgument("threshold grid is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0 && values[i] <= 1.0)) throw InvalidArgument("threshold outside [0, 1]");
    if (i > 0 && !(values[i] > values[i - 1])) throw InvalidArgument("threshold grid must be strictly increasing");
  }
}

std::map<std::string, double> per_image_fractions(const ScoreMatrix& m, const std::string& model,
                                                  const std::string& dataset, ScoringMode mode) {
  std::map<std::string, double> out;
  const auto mi = m.model_index(model);
  if (!mi) return out;
  std::map<std::string, std::pair<int, int>> counts;  // correct, total
  for (std::size_t ti = 0; ti < m.tasks.size(); ++ti) {
    const auto& task = m.tasks[ti];
    if (!dataset.empty() && task.domain != dataset) continue;
    const auto& c = m.cells[*mi][ti];
    if (!scored(c, mode)) continue;
    auto& [correct, total] = counts[task.image_id];
    correct += c.correct ? 1 : 0;
    ++total;
  }
  for (const auto& [image, ct] : counts) out[image] = static_cast<double>(ct.first) / ct.second;
  return out;
}

double accuracy_percent_t(const std::map<std::string, double>& fractions, double t) {
  if (fractions.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& [image, f] : fractions) hits += f >= t ? 1 : 0;
  return 100.0 * static_cast<double>(hits) / static_cast<double>(fractions.size());
}

double auc_accuracy_percent(const std::map<std::string, double>& fractions, const ThresholdGrid& grid) {
  grid.validate();
  double sum = 0.0;
  for (double t : grid.values) sum += accuracy_percent_t(fractions, t) / 100.0;
  return sum / static_cast<double>(grid.values.size());
}

std::optional<double> accuracy_percent_t(const ScoreMatrix& m, const std::string& model, const std::string& dataset,
                                         double t, ScoringMode mode) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("threshold outside [0, 1]");
  const auto f = per_image_fractions(m, model, dataset, mode);
  if (f.empty()) return std::nullopt;
  return accuracy_percent_t(f, t);
}

std::optional<double> auc_accuracy_percent(const ScoreMatrix& m, const std::string& model, const std::string& dataset,
                                           const ThresholdGrid& grid, ScoringMode mode) {
  const auto f = per_image_fractions(m, model, dataset, mode);
  if (f.empty()) return std::nullopt;
  return auc_accuracy_percent(f, grid);
}

std::vector<std::string> domains(const ScoreMatrix& m) {
  std::vector<std::string> out;
  for (const auto& t : m.tasks)
    if (std::ranges::find(out, t.domain) == out.end()) out.push_back(t.domain);
  return out;
}

}  // namespace taskaug::metrics
