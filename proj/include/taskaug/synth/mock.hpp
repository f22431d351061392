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

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "taskaug/core/types.hpp"
#include "taskaug/taskgen/bundle.hpp"
#include "taskaug/taskgen/templates.hpp"

namespace taskaug::synth {

// Canonical answers other than the key (for count tasks: key +/- 1).
std::vector<std::string> wrong_answers(const TaskInstance& task);

// Task-level rater sequences: each rater gives the key with probability
// `accuracy`; a sequence stops once `threshold` raters agree or
// `max_raters` have answered.
std::vector<HumanRating> simulate_human_ratings(const std::vector<TaskInstance>& tasks, std::uint64_t seed,
                                                double accuracy, int threshold = 4, int max_raters = 6);

struct MockRequest {
  std::string path;   // "/chat/completions" or "/generate", without the prefix
  std::string model;
  std::string prompt;
  std::vector<std::string> images_b64;
  std::size_t index = 0;  // arrival order, from 0
};

struct MockReply {
  int status = 200;
  std::string text;
  bool blocked = false;  // content_filter finish (OpenAI style) or {"blocked": true}
  std::string body;      // sent verbatim when non-empty
  int delay_ms = 0;
};

using MockScript = std::function<MockReply(const MockRequest&)>;

// Local HTTP model endpoint serving POST <prefix>/chat/completions and
// <prefix>/generate on 127.0.0.1. Calls `script` from server threads.
class MockModelServer {
 public:
  explicit MockModelServer(MockScript script, int port = 0, std::string prefix = "/v1");
  ~MockModelServer();
  MockModelServer(const MockModelServer&) = delete;
  MockModelServer& operator=(const MockModelServer&) = delete;

  int port() const;
  std::string base_url() const;
  std::size_t request_count() const;
  int max_in_flight() const;
  std::vector<std::chrono::steady_clock::time_point> arrivals() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Recognises bundle tasks by prompt text and attached images. A model
// answers correctly with probability accuracy[model] (0.5 if unlisted);
// unknown requests get a reply the parser rejects.
MockScript bundle_oracle_script(const taskgen::LoadedBundle& bundle, const taskgen::TemplateSet& templates,
                                std::map<std::string, double> accuracy, std::uint64_t seed);

}  // namespace taskaug::synth
