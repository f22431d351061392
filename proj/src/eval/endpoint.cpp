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

#include "taskaug/eval/endpoint.hpp"

#include "taskaug/common/error.hpp"

namespace taskaug::eval {

std::string_view to_string(Transport t) {
  return t == Transport::http_openai_style ? "http_openai_style" : "http_custom";
}

std::optional<Transport> parse_transport(std::string_view s) {
  if (s == "http_openai_style") return Transport::http_openai_style;
  if (s == "http_custom") return Transport::http_custom;
  return std::nullopt;
}

void ModelEndpoint::validate() const {
  if (model_id.empty()) throw InvalidArgument("endpoint model_id is empty");
  if (base_url.empty()) throw InvalidArgument("endpoint " + model_id + " has no base_url");
  if (max_concurrency < 1) throw InvalidArgument("endpoint " + model_id + ": max_concurrency must be >= 1");
  if (max_retries < 0) throw InvalidArgument("endpoint " + model_id + ": max_retries must be >= 0");
  if (!(timeout_s > 0)) throw InvalidArgument("endpoint " + model_id + ": timeout must be > 0");
  if (rate_limit_rpm < 0) throw InvalidArgument("endpoint " + model_id + ": rate limit must be >= 0");
  if (backoff_base_ms < 0) throw InvalidArgument("endpoint " + model_id + ": backoff must be >= 0");
  if (access != "open" && access != "closed") {
    throw InvalidArgument("endpoint " + model_id + ": access must be 'open' or 'closed'");
  }
}

nlohmann::ordered_json ModelEndpoint::describe() const {
  nlohmann::ordered_json j;
  j["model_id"] = model_id;
  j["transport"] = to_string(transport);
  j["base_url"] = base_url;
  j["api_model"] = api_model.empty() ? model_id : api_model;
  j["auth_env"] = auth_env;
  j["timeout_s"] = timeout_s;
  j["max_retries"] = max_retries;
  j["rate_limit_rpm"] = rate_limit_rpm;
  j["max_concurrency"] = max_concurrency;
  j["backoff_base_ms"] = backoff_base_ms;
  j["access"] = access;
  j["refusal_markers"] = refusal_markers;
  return j;
}

}  // namespace taskaug::eval
