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
#include <condition_variable>
#include <mutex>
#include <string>
#include <vector>

#include "taskaug/common/rng.hpp"
#include "taskaug/core/types.hpp"
#include "taskaug/eval/endpoint.hpp"
#include "taskaug/eval/prompt.hpp"

namespace taskaug::eval {

// Per-endpoint gate: at most `max_concurrency` holders at once, and
// successive acquisitions spaced at least 60/rpm seconds apart.
class Throttle {
 public:
  Throttle(int max_concurrency, double rate_limit_rpm);

  void acquire();
  void release();

  class Guard {
   public:
    explicit Guard(Throttle& t) : t_(t) { t_.acquire(); }
    ~Guard() { t_.release(); }
    Guard(const Guard&) = delete;
    Guard& operator=(const Guard&) = delete;

   private:
    Throttle& t_;
  };

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int in_flight_ = 0;
  int max_;
  std::chrono::steady_clock::duration interval_;
  std::chrono::steady_clock::time_point next_;
};

struct QueryResult {
  // answered here means "got text back"; the runner downgrades to unparseable.
  EvalStatus status = EvalStatus::transport_error;
  std::string raw;
  double latency_ms = 0.0;
  int attempts = 0;
  std::string error;
};

class EndpointClient {
 public:
  explicit EndpointClient(ModelEndpoint endpoint);

  // Sends one prompt with PNG attachments. Never throws for transport
  // problems; they are reported through the status.
  QueryResult query(const RenderedPrompt& prompt, const std::vector<std::string>& png_attachments);

  const ModelEndpoint& endpoint() const { return endpoint_; }

 private:
  enum class Outcome { ok, safety, retry, fatal };
  Outcome attempt(const std::string& body, std::string& text, std::string& error);
  std::string build_body(const RenderedPrompt& prompt, const std::vector<std::string>& png_attachments) const;

  ModelEndpoint endpoint_;
  std::string host_;    // scheme://host:port
  std::string prefix_;  // path prefix without trailing slash
  std::string token_;
  Throttle throttle_;
  std::mutex rng_mu_;
  Rng jitter_;
};

}  // namespace taskaug::eval
