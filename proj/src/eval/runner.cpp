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

#include "taskaug/eval/runner.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <set>
#include <thread>

#include "taskaug/common/error.hpp"
#include "taskaug/common/util.hpp"
#include "taskaug/common/version.hpp"
#include "taskaug/enrich/consensus.hpp"
#include "taskaug/eval/answer_parser.hpp"
#include "taskaug/eval/client.hpp"
#include "taskaug/eval/journal.hpp"
#include "taskaug/eval/prompt.hpp"

namespace taskaug::eval {

RunSummary run_benchmark(const taskgen::LoadedBundle& bundle, const std::vector<ModelEndpoint>& endpoints,
                         const taskgen::TemplateSet& templates, const RunOptions& options) {
  for (const auto& e : endpoints) e.validate();
  Journal journal(options.journal);

  if (!options.manifest.empty()) {
    nlohmann::ordered_json m;
    m["code_version"] = kVersion;
    m["template_version"] = templates.version;
    m["bundle_manifest_sha256"] = sha256_hex(bundle.manifest.dump());
    m["bundle_seed"] = bundle.manifest.value("seed", std::uint64_t{0});
    m["endpoints"] = nlohmann::ordered_json::array();
    for (const auto& e : endpoints) m["endpoints"].push_back(e.describe());
    write_file(options.manifest, m.dump(2) + "\n");
  }

  RunSummary summary;
  std::mutex summary_mu;
  std::atomic<std::size_t> budget_used{0};
  auto claim = [&] {
    if (options.max_new_records == 0) return true;
    return budget_used.fetch_add(1) < options.max_new_records;
  };

  std::vector<std::unique_ptr<EndpointClient>> clients;
  std::vector<std::vector<const TaskInstance*>> pending(endpoints.size());
  for (std::size_t e = 0; e < endpoints.size(); ++e) {
    clients.push_back(std::make_unique<EndpointClient>(endpoints[e]));
    for (const auto& t : bundle.tasks) {
      if (journal.contains(t.task_id, endpoints[e].model_id)) {
        ++summary.skipped;
      } else {
        pending[e].push_back(&t);
      }
    }
  }

  std::vector<std::atomic<std::size_t>> next(endpoints.size());
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> workers;
    for (std::size_t e = 0; e < endpoints.size(); ++e) {
      for (int w = 0; w < endpoints[e].max_concurrency; ++w) {
        workers.emplace_back([&, e] {
          try {
            while (true) {
              const auto i = next[e].fetch_add(1);
              if (i >= pending[e].size() || !claim()) return;
              const auto& task = *pending[e][i];
              const auto prompt = render_prompt(task, templates);
              std::vector<std::string> pngs;
              for (const auto& id : prompt.attachments) pngs.push_back(read_file(bundle.asset_path(id)));
              const auto result = clients[e]->query(prompt, pngs);

              EvalRecord r;
              r.task_id = task.task_id;
              r.model_id = endpoints[e].model_id;
              r.raw_response = result.raw;
              r.status = result.status;
              r.latency_ms = result.latency_ms;
              r.attempt_count = result.attempts;
              if (result.status == EvalStatus::answered) {
                r.parsed_answer = parse_answer(result.raw, task.answer_type);
                if (!r.parsed_answer) r.status = EvalStatus::unparseable;
              }
              journal.append(r);
              std::lock_guard lock(summary_mu);
              ++summary.sent;
              summary.status_counts[r.model_id][std::string(to_string(r.status))]++;
            }
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
        });
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return summary;
}

HumanAnswers ingest_human_answers(const std::vector<TaskInstance>& tasks, std::span<const HumanRating> ratings,
                                  int threshold, int max_raters) {
  if (max_raters < 1 || threshold < 1 || threshold > max_raters) {
    throw InvalidArgument("need 1 <= consensus threshold <= max raters");
  }
  std::map<std::string, std::vector<HumanRating>> by_task;
  for (const auto& r : ratings) {
    if (r.task_id.empty()) continue;
    by_task[r.task_id].push_back(r);
  }

  HumanAnswers out;
  std::set<std::string> known;
  for (const auto& t : tasks) {
    known.insert(t.task_id);
    auto it = by_task.find(t.task_id);
    if (it == by_task.end()) {
      out.missing_tasks.push_back(t.task_id);
      continue;
    }
    auto& group = it->second;
    std::ranges::stable_sort(group, {}, &HumanRating::rank_in_sequence);
    if (static_cast<int>(group.size()) > max_raters) {
      out.warnings.push_back(t.task_id + ": " + std::to_string(group.size()) + " ratings, using the first " +
                             std::to_string(max_raters));
      group.resize(max_raters);
    }
    const auto consensus = enrich::merge_human_metadata(group, threshold);
    EvalRecord r;
    r.task_id = t.task_id;
    r.model_id = kHumansModel;
    r.parsed_answer = consensus.answer;
    r.status = EvalStatus::answered;
    r.attempt_count = consensus.ratings_used;
    auto& answers = out.rater_answers[t.task_id];
    for (const auto& g : group) {
      if (!r.raw_response.empty()) r.raw_response += "|";
      r.raw_response += g.answer;
      answers.push_back(g.answer);
    }
    out.records.push_back(std::move(r));
  }
  for (const auto& [task_id, group] : by_task) {
    if (!known.contains(task_id)) out.warnings.push_back("ratings for unknown task " + task_id);
  }
  return out;
}

}  // namespace taskaug::eval
