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

#include "support.hpp"
#include "taskaug/common/error.hpp"
#include "taskaug/metrics/score.hpp"

namespace taskaug {
namespace {

using metrics::ScoringMode;

TaskInstance task(const std::string& id, const std::string& image, const std::string& domain,
                  TaskType type = TaskType::T1_1, const std::string& key = "yes") {
  TaskInstance t;
  t.task_id = id;
  t.image_id = image;
  t.domain = domain;
  t.task_type = type;
  t.answer_key = key;
  return t;
}

EvalRecord record(const std::string& task, const std::string& model, std::optional<std::string> answer,
                  EvalStatus status = EvalStatus::answered) {
  EvalRecord r;
  r.task_id = task;
  r.model_id = model;
  r.parsed_answer = std::move(answer);
  r.status = status;
  r.attempt_count = 1;
  return r;
}

TEST(ScoreMatrix, CorrectOnlyForMatchingAnsweredRecords) {
  const std::vector<TaskInstance> tasks{task("t1", "i1", "d"), task("t2", "i1", "d"), task("t3", "i2", "d"),
                                        task("t4", "i2", "d", TaskType::T1_2, "3")};
  const std::vector<EvalRecord> records{
      record("t1", "m", " YES "), record("t2", "m", "no"), record("t3", "m", "yes", EvalStatus::unanswered_safety),
      record("t4", "m", "3"), record("t4", "m", "3"), record("zz", "m", "yes")};
  const auto m = metrics::build_score_matrix(tasks, records);
  ASSERT_EQ(m.models, std::vector<std::string>{"m"});
  EXPECT_TRUE(m.cells[0][0].correct);
  EXPECT_FALSE(m.cells[0][1].correct);
  EXPECT_FALSE(m.cells[0][2].correct);
  EXPECT_TRUE(m.cells[0][3].correct);
  EXPECT_EQ(m.warnings.size(), 2u);
}

TEST(Accuracy, PerDatasetPercent) {
  std::vector<TaskInstance> tasks;
  std::vector<EvalRecord> records;
  for (int i = 0; i < 4; ++i) {
    const auto id = "t" + std::to_string(i);
    tasks.push_back(task(id, "i" + std::to_string(i), "street"));
    records.push_back(record(id, "all_right", "yes"));
    records.push_back(record(id, "three_of_four", i == 0 ? "no" : "yes"));
    records.push_back(record(id, "offline", std::nullopt, EvalStatus::transport_error));
  }
  const auto m = metrics::build_score_matrix(tasks, records);
  const auto rows = metrics::accuracy(m, metrics::GroupBy::dataset);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].model, "all_right");
  EXPECT_DOUBLE_EQ(*rows[0].percent, 100.0);
  EXPECT_DOUBLE_EQ(*rows[1].percent, 0.0);
  EXPECT_EQ(rows[1].status_counts.at("transport_error"), 4);
  EXPECT_DOUBLE_EQ(*rows[2].percent, 75.0);

  const auto excluded = metrics::accuracy(m, metrics::GroupBy::dataset, ScoringMode::exclude);
  EXPECT_FALSE(excluded[1].percent.has_value());
  EXPECT_EQ(excluded[1].scored, 0);
}

TEST(Accuracy, SafetyBlocksCountAsIncorrectByDefault) {
  const std::vector<TaskInstance> tasks{task("t1", "i1", "d"), task("t2", "i2", "d")};
  const std::vector<EvalRecord> records{record("t1", "m", "yes"),
                                        record("t2", "m", std::nullopt, EvalStatus::unanswered_safety)};
  const auto m = metrics::build_score_matrix(tasks, records);
  const auto def = metrics::accuracy(m, metrics::GroupBy::task_type);
  EXPECT_DOUBLE_EQ(*def[0].percent, 50.0);
  EXPECT_EQ(def[0].status_counts.at("unanswered_safety"), 1);
  EXPECT_EQ(def[0].status_counts.at("answered"), 1);
  EXPECT_DOUBLE_EQ(*metrics::accuracy(m, metrics::GroupBy::task_type, ScoringMode::exclude)[0].percent, 100.0);
}

TEST(AccuracyT, HandComputedFractions) {
  const std::map<std::string, double> f{{"a", 1.0}, {"b", 0.6}, {"c", 0.5}};
  EXPECT_NEAR(metrics::accuracy_percent_t(f, 0.75), 100.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(metrics::accuracy_percent_t(f, 0.5), 100.0);
  EXPECT_DOUBLE_EQ(metrics::accuracy_percent_t(f, 0.0), 100.0);
  EXPECT_NEAR(metrics::accuracy_percent_t(f, 0.6), 200.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(metrics::accuracy_percent_t(f, 1.0), 100.0 / 3.0);
}

TEST(AccuracyT, PerImageFractionsFromMatrix) {
  // Image i1: 2 of 3 right; image i2: 1 of 2 right.
  const std::vector<TaskInstance> tasks{task("a", "i1", "d"), task("b", "i1", "d"), task("c", "i1", "d"),
                                        task("d", "i2", "d"), task("e", "i2", "d")};
  const std::vector<EvalRecord> records{record("a", "m", "yes"), record("b", "m", "yes"), record("c", "m", "no"),
                                        record("d", "m", "yes"), record("e", "m", "no")};
  const auto m = metrics::build_score_matrix(tasks, records);
  const auto f = metrics::per_image_fractions(m, "m", "", ScoringMode::count_as_incorrect);
  EXPECT_NEAR(f.at("i1"), 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(f.at("i2"), 0.5);
  EXPECT_DOUBLE_EQ(*metrics::accuracy_percent_t(m, "m", "d", 0.6), 50.0);
  EXPECT_DOUBLE_EQ(*metrics::accuracy_percent_t(m, "m", "d", 0.5), 100.0);
  EXPECT_FALSE(metrics::accuracy_percent_t(m, "m", "other", 0.5).has_value());
}

TEST(Auc, Endpoints) {
  std::vector<TaskInstance> tasks;
  std::vector<EvalRecord> records;
  for (int i = 0; i < 6; ++i) {
    const auto id = "t" + std::to_string(i);
    tasks.push_back(task(id, "i" + std::to_string(i / 2), "d"));
    records.push_back(record(id, "perfect", "yes"));
    records.push_back(record(id, "hopeless", "no"));
  }
  const auto m = metrics::build_score_matrix(tasks, records);
  EXPECT_EQ(*metrics::auc_accuracy_percent(m, "perfect", ""), 1.0);
  EXPECT_EQ(*metrics::auc_accuracy_percent(m, "hopeless", ""), 0.0);
}

TEST(Auc, GridValidation) {
  metrics::ThresholdGrid g;
  EXPECT_NO_THROW(g.validate());
  EXPECT_EQ(g.values.size(), 14u);
  g.values = {0.5, 0.4};
  EXPECT_THROW(g.validate(), InvalidArgument);
  g.values = {};
  EXPECT_THROW(g.validate(), InvalidArgument);
  g.values = {0.5, 1.5};
  EXPECT_THROW(g.validate(), InvalidArgument);
}

TEST(AccuracyTProperty, MatchesBruteForceOracle) {
  const metrics::ThresholdGrid grid;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto raw = testing::random_raw_scores(seed);
    std::vector<TaskInstance> tasks;
    std::vector<EvalRecord> records;
    testing::to_tasks_and_records(raw, tasks, records);
    const auto m = metrics::build_score_matrix(tasks, records);
    for (std::size_t k = 0; k < raw.models.size(); ++k) {
      double prev = 101.0;
      for (double t : grid.values) {
        const double got = *metrics::accuracy_percent_t(m, raw.models[k], "", t);
        EXPECT_NEAR(got, testing::oracle_accuracy_percent(raw, k, t), 1e-9);
        EXPECT_LE(got, prev);
        prev = got;
      }
      EXPECT_EQ(*metrics::accuracy_percent_t(m, raw.models[k], "", 0.0), 100.0);
      EXPECT_NEAR(*metrics::auc_accuracy_percent(m, raw.models[k], "", grid),
                  testing::oracle_auc(raw, k, grid.values), 1e-12);
    }
  }
}

TEST(Scoring, ModeNames) {
  EXPECT_EQ(metrics::parse_scoring_mode("exclude"), ScoringMode::exclude);
  EXPECT_EQ(metrics::parse_scoring_mode(metrics::to_string(ScoringMode::count_as_incorrect)),
            ScoringMode::count_as_incorrect);
  EXPECT_FALSE(metrics::parse_scoring_mode("drop").has_value());
}

}  // namespace
}  // namespace taskaug
