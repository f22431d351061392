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

#include "taskaug/metrics/report.hpp"

#include <algorithm>

#include "taskaug/common/csv.hpp"
#include "taskaug/common/error.hpp"
#include "taskaug/common/util.hpp"
#include "taskaug/eval/runner.hpp"

namespace taskaug::metrics {
namespace {

using nlohmann::ordered_json;

std::string num(std::optional<double> v) { return v ? format_double(*v) : ""; }
ordered_json jnum(std::optional<double> v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

constexpr std::array<const char*, 4> kStatuses{"answered", "unparseable", "unanswered_safety", "transport_error"};

std::string accuracy_csv(const std::vector<AccuracyCell>& cells, const char* group_name) {
  std::vector<std::string> header{"model", group_name, "accuracy_percent", "scored", "correct"};
  for (auto s : kStatuses) header.emplace_back(s);
  std::string out = csv::format_row(header);
  for (const auto& c : cells) {
    std::vector<std::string> row{c.model, c.group, num(c.percent), std::to_string(c.scored), std::to_string(c.correct)};
    for (auto s : kStatuses) {
      const auto it = c.status_counts.find(s);
      row.push_back(std::to_string(it == c.status_counts.end() ? 0 : it->second));
    }
    out += csv::format_row(row);
  }
  return out;
}

ordered_json accuracy_json(const std::vector<AccuracyCell>& cells) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : cells) {
    arr.push_back({{"model", c.model},
                   {"group", c.group},
                   {"accuracy_percent", jnum(c.percent)},
                   {"scored", c.scored},
                   {"correct", c.correct},
                   {"status_counts", c.status_counts}});
  }
  return arr;
}

}  // namespace

MetricReport compute_report(const ScoreMatrix& m, const MetricInputs& in) {
  in.grid.validate();
  MetricReport rep;
  rep.warnings = m.warnings;
  auto& s = rep.summary;
  s["scoring_mode"] = to_string(in.mode);
  s["threshold_grid"] = in.grid.values;
  s["models"] = m.models;
  s["task_count"] = m.tasks.size();

  const auto by_dataset = accuracy(m, GroupBy::dataset, in.mode);
  const auto by_type = accuracy(m, GroupBy::task_type, in.mode);
  rep.tables["accuracy_by_dataset.csv"] = accuracy_csv(by_dataset, "dataset");
  rep.tables["accuracy_by_task_type.csv"] = accuracy_csv(by_type, "task_type");
  s["accuracy_by_dataset"] = accuracy_json(by_dataset);
  s["accuracy_by_task_type"] = accuracy_json(by_type);

  // Threshold curves and AUC per model for each domain and for all domains pooled.
  std::vector<std::string> scopes = domains(m);
  scopes.push_back("");
  std::string curves = csv::format_row({"model", "dataset", "t", "accuracy_percent"});
  std::string aucs = csv::format_row({"model", "dataset", "auc"});
  ordered_json curve_plot = ordered_json::array(), auc_json = ordered_json::array();
  for (const auto& model : m.models) {
    for (const auto& scope : scopes) {
      const auto fractions = per_image_fractions(m, model, scope, in.mode);
      const std::string label = scope.empty() ? "all" : scope;
      if (fractions.empty()) {
        rep.warnings.push_back("no scored images for " + model + " on " + label);
        continue;
      }
      ordered_json points = ordered_json::array();
      for (double t : in.grid.values) {
        const double v = accuracy_percent_t(fractions, t);
        curves += csv::format_row({model, label, format_double(t), format_double(v)});
        points.push_back({{"t", t}, {"accuracy_percent", v}});
      }
      const double auc = auc_accuracy_percent(fractions, in.grid);
      aucs += csv::format_row({model, label, format_double(auc)});
      curve_plot.push_back({{"model", model}, {"dataset", label}, {"images", fractions.size()}, {"points", points}});
      auc_json.push_back({{"model", model}, {"dataset", label}, {"auc", auc}});
    }
  }
  rep.tables["threshold_curves.csv"] = curves;
  rep.tables["auc.csv"] = aucs;
  s["auc"] = auc_json;
  rep.plot_data["threshold_curves.json"] = curve_plot;

  std::vector<std::string> machine_models;
  for (const auto& model : m.models)
    if (model != eval::kHumansModel) machine_models.push_back(model);

  // Model ranks per dataset.
  std::vector<AccuracyCell> machine_cells;
  for (const auto& c : by_dataset)
    if (c.model != eval::kHumansModel) machine_cells.push_back(c);
  try {
    const auto ranks = rank_models(machine_cells);
    std::string rt = csv::format_row({"dataset", "model", "rank"});
    std::string rd = csv::format_row({"model", "rank", "probability"});
    for (const auto& [group, models] : ranks.ranks)
      for (const auto& [model, rank] : models) rt += csv::format_row({group, model, std::to_string(rank)});
    ordered_json dist = ordered_json::object();
    for (const auto& [model, probs] : ranks.distribution) {
      for (std::size_t k = 0; k < probs.size(); ++k)
        rd += csv::format_row({model, std::to_string(k + 1), format_double(probs[k])});
      dist[model] = probs;
    }
    rep.tables["model_ranks.csv"] = rt;
    rep.tables["rank_distribution.csv"] = rd;
    s["model_ranks"] = ranks.ranks;
    rep.plot_data["rank_distribution.json"] = {{"ranks", ranks.ranks}, {"distribution", dist}};
  } catch (const InvalidArgument& e) {
    rep.warnings.push_back(std::string("model ranks skipped: ") + e.what());
  }

  // Task difficulty per population.
  std::string dt = csv::format_row({"population", "dataset", "task_type", "rank"});
  std::string db = csv::format_row({"population", "task_type", "rank", "share"});
  ordered_json difficulty = ordered_json::object();
  for (auto pop : {Population::all, Population::open, Population::closed, Population::humans}) {
    try {
      const auto d = task_difficulty_ranks(m, pop, in.access, in.mode);
      const std::string name(to_string(pop));
      for (const auto& [dom, ranks] : d.ranks)
        for (const auto& [code, rank] : ranks) dt += csv::format_row({name, dom, code, std::to_string(rank)});
      for (const auto& [code, shares] : d.blob)
        for (std::size_t k = 0; k < shares.size(); ++k)
          if (shares[k] > 0) db += csv::format_row({name, code, std::to_string(k + 1), format_double(shares[k])});
      difficulty[name] = {{"ranks", d.ranks}, {"blob", d.blob}, {"combinations", d.combinations}};
    } catch (const InvalidArgument& e) {
      rep.warnings.push_back(std::string("task difficulty skipped: ") + e.what());
    }
  }
  rep.tables["task_difficulty.csv"] = dt;
  rep.tables["task_difficulty_blobs.csv"] = db;
  s["task_difficulty"] = difficulty;
  rep.plot_data["task_difficulty.json"] = difficulty;

  // Human ambiguity against mean machine correctness per task.
  if (!in.rater_answers.empty()) {
    std::string at = csv::format_row({"task_id", "task_type", "ratings", "ambiguity", "model_accuracy"});
    ordered_json pts = ordered_json::array();
    for (std::size_t ti = 0; ti < m.tasks.size(); ++ti) {
      const auto& task = m.tasks[ti];
      const auto it = in.rater_answers.find(task.task_id);
      if (it == in.rater_answers.end()) continue;
      const auto amb = human_ambiguity(it->second);
      int correct = 0, n = 0;
      for (const auto& model : machine_models) {
        const auto& c = m.cells[*m.model_index(model)][ti];
        if (!scored(c, in.mode)) continue;
        ++n;
        correct += c.correct ? 1 : 0;
      }
      std::optional<double> acc;
      if (n > 0) acc.emplace(static_cast<double>(correct) / n);
      at += csv::format_row({task.task_id, std::string(task_code(task.task_type)), std::to_string(it->second.size()),
                             num(amb), num(acc)});
      pts.push_back({{"task_id", task.task_id},
                     {"task_type", task_code(task.task_type)},
                     {"ambiguity", jnum(amb)},
                     {"model_accuracy", jnum(acc)}});
    }
    rep.tables["ambiguity.csv"] = at;
    rep.plot_data["ambiguity_vs_accuracy.json"] = pts;
  }

  // Task correlation and linkage over machine models.
  try {
    const auto corr = task_correlation(m, machine_models, in.mode);
    std::vector<std::string> header{"task_type"};
    header.insert(header.end(), corr.tasks.begin(), corr.tasks.end());
    std::string ct = csv::format_row(header);
    ordered_json matrix = ordered_json::array();
    for (std::size_t a = 0; a < corr.tasks.size(); ++a) {
      std::vector<std::string> row{corr.tasks[a]};
      ordered_json jrow = ordered_json::array();
      for (std::size_t b = 0; b < corr.tasks.size(); ++b) {
        row.push_back(num(corr.r[a][b]));
        jrow.push_back(jnum(corr.r[a][b]));
      }
      ct += csv::format_row(row);
      matrix.push_back(jrow);
    }
    std::string lt = csv::format_row({"step", "left", "right", "distance", "size"});
    ordered_json link = ordered_json::array();
    for (std::size_t k = 0; k < corr.linkage.size(); ++k) {
      const auto& st = corr.linkage[k];
      lt += csv::format_row({std::to_string(k), std::to_string(st.left), std::to_string(st.right),
                             format_double(st.distance), std::to_string(st.size)});
      link.push_back({st.left, st.right, st.distance, st.size});
    }
    rep.tables["task_correlation.csv"] = ct;
    rep.tables["task_linkage.csv"] = lt;
    rep.plot_data["task_correlation.json"] = {
        {"labels", corr.tasks}, {"columns", corr.columns}, {"r", matrix}, {"linkage", link}};
    s["task_correlation"] = rep.plot_data["task_correlation.json"];
  } catch (const InvalidArgument& e) {
    rep.warnings.push_back(std::string("task correlation skipped: ") + e.what());
  }

  s["warnings"] = rep.warnings;
  return rep;
}

void write_score_tables(const MetricReport& report, const std::filesystem::path& dir) {
  for (const auto& [name, text] : report.tables) write_file(dir / name, text);
  write_file(dir / "metrics.json", report.summary.dump(2) + "\n");
}

void write_report(const MetricReport& report, const std::filesystem::path& dir) {
  write_file(dir / "report.json", report.summary.dump(2) + "\n");
  for (const auto& [name, j] : report.plot_data) write_file(dir / "plot_data" / name, j.dump(2) + "\n");
}

}  // namespace taskaug::metrics
