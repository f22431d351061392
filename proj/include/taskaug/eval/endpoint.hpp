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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace taskaug::eval {

enum class Transport { http_openai_style, http_custom };
std::string_view to_string(Transport t);
std::optional<Transport> parse_transport(std::string_view s);

struct ModelEndpoint {
  std::string model_id;
  Transport transport = Transport::http_openai_style;
  // scheme://host[:port][/prefix]; OpenAI-style requests go to <prefix>/chat/completions,
  // custom ones to <prefix>/generate.
  std::string base_url;
  std::string api_model;  // model name sent in the payload; defaults to model_id
  std::string auth_env;   // name of the env var holding the bearer token
  double timeout_s = 60.0;
  int max_retries = 3;
  double rate_limit_rpm = 0.0;  // 0 = unlimited
  int max_concurrency = 1;
  double backoff_base_ms = 500.0;
  std::string access = "closed";  // "open" or "closed" weights; used for population splits
  // Substrings (case-insensitive) that mark an error body as a safety block.
  std::vector<std::string> refusal_markers{"safety", "content_filter", "content policy", "blocked"};

  // Throws InvalidArgument on missing ids/urls or non-positive limits.
  void validate() const;
  // Config without secrets, for run manifests.
  nlohmann::ordered_json describe() const;
};

}  // namespace taskaug::eval
