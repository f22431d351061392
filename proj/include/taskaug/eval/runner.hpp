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

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "taskaug/core/types.hpp"
#include "taskaug/eval/endpoint.hpp"
#include "taskaug/taskgen/bundle.hpp"
#include "taskaug/taskgen/templates.hpp"

namespace taskaug::eval {

struct RunOptions {
  std::filesystem::path journal;   // records.jsonl
  std::filesystem::path manifest;  // run manifest; skipped when empty
  // Stop after this many new records (0 = no limit). Lets tests cut a run short.
  std::size_t max_new_records = 0;
};

struct RunSummary {
  std::size_t sent = 0;
  std::size_t skipped = 0;  // already in the journal
  std::map<std::string, std::map<std::string, int>> status_counts;  // model -> status -> n
};

// Sends every (task, endpoint) pair not yet in the journal. Endpoints run in
// parallel, each with max_concurrency workers.
RunSummary run_benchmark(const taskgen::LoadedBundle& bundle, const std::vector<ModelEndpoint>& endpoints,
                         const taskgen::TemplateSet& templates, const RunOptions& options);

inline constexpr const char* kHumansModel = "humans";

struct HumanAnswers {
  std::vector<EvalRecord> records;                               // model "humans"
  std::map<std::string, std::vector<std::string>> rater_answers; // task_id -> collected answers
  std::vector<std::string> missing_tasks;                        // tasks with no ratings
  std::vector<std::string> warnings;
};

// Consensus per task (early stopping at `threshold` agreeing raters) becomes
// the humans pseudo-model's answer; "unresolved" is kept as the parsed answer
// and therefore never matches a key. Ratings ranked beyond `max_raters` are ignored.
HumanAnswers ingest_human_answers(const std::vector<TaskInstance>& tasks, std::span<const HumanRating> ratings,
                                  int threshold = 4, int max_raters = 6);

}  // namespace taskaug::eval
