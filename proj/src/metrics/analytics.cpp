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

#include "taskaug/metrics/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "taskaug/common/error.hpp"
#include "taskaug/eval/runner.hpp"

namespace taskaug::metrics {

RankTable rank_models(const std::vector<AccuracyCell>& table) {
  std::set<std::string> models;
  std::map<std::string, std::map<std::string, double>> by_group;
  for (const auto& c : table) {
    models.insert(c.model);
    if (c.percent) by_group[c.group][c.model] = *c.percent;
  }
  if (models.size() < 2) throw InvalidArgument("ranking needs at least two models");

  RankTable out;
  std::map<std::string, int> ranked_in;
  for (const auto& m : models) out.distribution[m].assign(models.size(), 0.0);
  for (const auto& [group, scores] : by_group) {
    out.ranks[group] = competition_ranks(scores, true);
    for (const auto& [model, rank] : out.ranks[group]) {
      out.distribution[model][rank - 1] += 1.0;
      ++ranked_in[model];
    }
  }
  for (auto& [model, dist] : out.distribution) {
    if (ranked_in[model] == 0) continue;
    for (auto& p : dist) p /= ranked_in[model];
  }
  return out;
}

std::string_view to_string(Population p) {
  switch (p) {
    case Population::all: return "all";
    case Population::open: return "open";
    case Population::closed: return "closed";
    case Population::humans: return "humans";
  }
  return "all";
}

std::optional<Population> parse_population(std::string_view s) {
  for (auto p : {Population::all, Population::open, Population::closed, Population::humans})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

DifficultyRanks task_difficulty_ranks(const ScoreMatrix& m, Population population,
                                      const std::map<std::string, std::string>& access, ScoringMode mode) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < m.models.size(); ++i) {
    const auto& id = m.models[i];
    const bool human = id == eval::kHumansModel;
    const auto it = access.find(id);
    const std::string acc = it == access.end() ? "" : it->second;
    bool in = false;
    switch (population) {
      case Population::all: in = !human; break;
      case Population::open: in = !human && acc == "open"; break;
      case Population::closed: in = !human && acc == "closed"; break;
      case Population::humans: in = human; break;
    }
    if (in) members.push_back(i);
  }
  if (members.empty()) throw InvalidArgument("population '" + std::string(to_string(population)) + "' has no models");

  DifficultyRanks out;
  std::map<std::string, std::vector<double>> blob_counts;
  std::map<std::string, int> blob_totals;
  for (const auto& domain : domains(m)) {
    // task code -> (correct, scored), pooled and per member
    std::map<std::string, std::pair<int, int>> pooled;
    std::vector<std::map<std::string, std::pair<int, int>>> per_model(members.size());
    for (std::size_t ti = 0; ti < m.tasks.size(); ++ti) {
      const auto& task = m.tasks[ti];
      if (task.domain != domain) continue;
      const std::string code(task_code(task.task_type));
      for (std::size_t k = 0; k < members.size(); ++k) {
        const auto& c = m.cells[members[k]][ti];
        if (!scored(c, mode)) continue;
        for (auto* acc : {&pooled[code], &per_model[k][code]}) {
          acc->first += c.correct ? 1 : 0;
          acc->second += 1;
        }
      }
    }
    std::map<std::string, double> pooled_acc;
    for (const auto& [code, ct] : pooled)
      if (ct.second > 0) pooled_acc[code] = static_cast<double>(ct.first) / ct.second;
    if (pooled_acc.empty()) continue;
    out.ranks[domain] = competition_ranks(pooled_acc, false);

    for (const auto& counts : per_model) {
      std::map<std::string, double> acc;
      for (const auto& [code, ct] : counts)
        if (ct.second > 0) acc[code] = static_cast<double>(ct.first) / ct.second;
      if (acc.empty()) continue;
      ++out.combinations;
      for (const auto& [code, rank] : competition_ranks(acc, false)) {
        auto& v = blob_counts[code];
        v.resize(kTaskTypeCount, 0.0);
        v[rank - 1] += 1.0;
        ++blob_totals[code];
      }
    }
  }
  for (auto& [code, v] : blob_counts) {
    for (auto& x : v) x /= blob_totals[code];
    out.blob[code] = v;
  }
  return out;
}

std::optional<double> human_ambiguity(std::span<const std::string> answers) {
  if (answers.empty()) return std::nullopt;
  std::map<std::string, int> counts;
  int modal = 0;
  for (const auto& a : answers) modal = std::max(modal, ++counts[a]);
  return 1.0 - static_cast<double>(modal) / static_cast<double>(answers.size());
}

std::map<std::string, std::optional<double>> human_ambiguity(
    const std::map<std::string, std::vector<std::string>>& answers) {
  std::map<std::string, std::optional<double>> out;
  for (const auto& [task, list] : answers) out[task] = human_ambiguity(list);
  return out;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("pearson: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<LinkageStep> average_linkage(const std::vector<std::vector<double>>& distance) {
  const int n = static_cast<int>(distance.size());
  for (const auto& row : distance)
    if (static_cast<int>(row.size()) != n) throw InvalidArgument("distance matrix is not square");
  // Active clusters: id -> (size, distances to other active ids).
  std::map<int, int> size;
  std::map<std::pair<int, int>, double> d;
  for (int i = 0; i < n; ++i) {
    size[i] = 1;
    for (int j = i + 1; j < n; ++j) d[{i, j}] = distance[i][j];
  }
  auto dist = [&](int a, int b) { return a < b ? d.at({a, b}) : d.at({b, a}); };

  std::vector<LinkageStep> steps;
  for (int next = n; size.size() > 1; ++next) {
    std::pair<int, int> best{-1, -1};
    double best_d = std::numeric_limits<double>::infinity();
    for (auto a = size.begin(); a != size.end(); ++a) {
      for (auto b = std::next(a); b != size.end(); ++b) {
        const double v = dist(a->first, b->first);
        if (v < best_d) {
          best_d = v;
          best = {a->first, b->first};
        }
      }
    }
    const auto [l, r] = best;
    const int sl = size[l], sr = size[r];
    size.erase(l);
    size.erase(r);
    for (const auto& [k, sk] : size) d[{k, next}] = (sl * dist(k, l) + sr * dist(k, r)) / (sl + sr);
    size[next] = sl + sr;
    steps.push_back({l, r, best_d, sl + sr});
  }
  return steps;
}

CorrelationResult task_correlation(const ScoreMatrix& m, const std::vector<std::string>& models, ScoringMode mode) {
  if (models.size() < 3) throw InvalidArgument("task correlation needs at least three models");
  CorrelationResult out;
  std::map<std::string, std::size_t> task_row;
  for (auto t : all_task_types()) {
    const std::string code(task_code(t));
    if (std::ranges::any_of(m.tasks, [&](const TaskInfo& ti) { return ti.task_type == t; })) {
      task_row[code] = out.tasks.size();
      out.tasks.push_back(code);
    }
  }
  if (out.tasks.size() < 2) throw InvalidArgument("task correlation needs at least two task types");

  const auto doms = domains(m);
  std::vector<std::vector<std::pair<int, int>>> counts(out.tasks.size());
  std::vector<std::pair<std::size_t, std::string>> cols;
  for (const auto& model : models) {
    const auto mi = m.model_index(model);
    if (!mi) throw InvalidArgument("no records for model " + model);
    for (const auto& dom : doms) {
      cols.emplace_back(*mi, dom);
      out.columns.push_back(model + "@" + dom);
    }
  }
  for (auto& c : counts) c.assign(cols.size(), {0, 0});
  for (std::size_t ci = 0; ci < cols.size(); ++ci) {
    const auto& [mi, dom] = cols[ci];
    for (std::size_t ti = 0; ti < m.tasks.size(); ++ti) {
      const auto& task = m.tasks[ti];
      if (task.domain != dom) continue;
      const auto& c = m.cells[mi][ti];
      if (!scored(c, mode)) continue;
      auto& ct = counts[task_row[std::string(task_code(task.task_type))]][ci];
      ct.first += c.correct ? 1 : 0;
      ct.second += 1;
    }
  }
  out.vectors.assign(out.tasks.size(), std::vector<std::optional<double>>(cols.size()));
  for (std::size_t t = 0; t < out.tasks.size(); ++t)
    for (std::size_t ci = 0; ci < cols.size(); ++ci)
      if (counts[t][ci].second > 0) out.vectors[t][ci] = static_cast<double>(counts[t][ci].first) / counts[t][ci].second;

  const std::size_t n = out.tasks.size();
  out.r.assign(n, std::vector<std::optional<double>>(n));
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      std::vector<double> x, y;
      for (std::size_t ci = 0; ci < cols.size(); ++ci) {
        if (out.vectors[a][ci] && out.vectors[b][ci]) {
          x.push_back(*out.vectors[a][ci]);
          y.push_back(*out.vectors[b][ci]);
        }
      }
      const auto r = pearson(x, y);
      out.r[a][b] = out.r[b][a] = r;
      if (a != b) dist[a][b] = dist[b][a] = r ? 1.0 - *r : 1.0;
    }
  }
  out.linkage = average_linkage(dist);
  return out;
}

}  // namespace taskaug::metrics
