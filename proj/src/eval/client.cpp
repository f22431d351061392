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

#include "taskaug/eval/client.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <json.hpp>

#include "taskaug/common/util.hpp"

namespace taskaug::eval {
namespace {

bool contains_ci(std::string_view hay, std::string_view needle) {
  if (needle.empty()) return false;
  auto eq = [](char a, char b) { return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b)); };
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end(), eq) != hay.end();
}

}  // namespace

Throttle::Throttle(int max_concurrency, double rate_limit_rpm) : max_(std::max(1, max_concurrency)) {
  interval_ = rate_limit_rpm > 0 ? std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                       std::chrono::duration<double>(60.0 / rate_limit_rpm))
                                 : std::chrono::steady_clock::duration::zero();
}

void Throttle::acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return in_flight_ < max_; });
  ++in_flight_;
  const auto slot = std::max(std::chrono::steady_clock::now(), next_);
  next_ = slot + interval_;
  lock.unlock();
  std::this_thread::sleep_until(slot);
}

void Throttle::release() {
  {
    std::lock_guard lock(mu_);
    --in_flight_;
  }
  cv_.notify_one();
}

EndpointClient::EndpointClient(ModelEndpoint endpoint)
    : endpoint_(std::move(endpoint)),
      throttle_(endpoint_.max_concurrency, endpoint_.rate_limit_rpm),
      jitter_(fnv1a64(endpoint_.model_id)) {
  endpoint_.validate();
  const auto scheme_end = endpoint_.base_url.find("://");
  const auto path_start =
      endpoint_.base_url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  host_ = endpoint_.base_url.substr(0, path_start);
  if (path_start != std::string::npos) prefix_ = endpoint_.base_url.substr(path_start);
  while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
  if (!endpoint_.auth_env.empty()) {
    if (const char* v = std::getenv(endpoint_.auth_env.c_str())) token_ = v;
  }
}

std::string EndpointClient::build_body(const RenderedPrompt& prompt,
                                       const std::vector<std::string>& png_attachments) const {
  using nlohmann::ordered_json;
  const std::string model = endpoint_.api_model.empty() ? endpoint_.model_id : endpoint_.api_model;
  ordered_json body;
  body["model"] = model;
  if (endpoint_.transport == Transport::http_openai_style) {
    ordered_json content = ordered_json::array();
    content.push_back({{"type", "text"}, {"text", prompt.text}});
    for (const auto& png : png_attachments) {
      const std::string url =
          "data:image/png;base64," +
          base64_encode({reinterpret_cast<const std::uint8_t*>(png.data()), png.size()});
      content.push_back({{"type", "image_url"}, {"image_url", {{"url", url}}}});
    }
    body["messages"] = ordered_json::array({{{"role", "user"}, {"content", content}}});
    body["temperature"] = 0;
    body["max_tokens"] = 256;
  } else {
    body["prompt"] = prompt.text;
    body["images"] = ordered_json::array();
    for (const auto& png : png_attachments)
      body["images"].push_back(base64_encode({reinterpret_cast<const std::uint8_t*>(png.data()), png.size()}));
  }
  return body.dump();
}

EndpointClient::Outcome EndpointClient::attempt(const std::string& body, std::string& text, std::string& error) {
  httplib::Client client(host_);
  const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::duration<double>(endpoint_.timeout_s));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  httplib::Headers headers;
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);
  const std::string path =
      prefix_ + (endpoint_.transport == Transport::http_openai_style ? "/chat/completions" : "/generate");

  httplib::Result res = [&] {
    Throttle::Guard guard(throttle_);
    return client.Post(path, headers, body, "application/json");
  }();
  if (!res) {
    error = "transport: " + httplib::to_string(res.error());
    return Outcome::retry;
  }
  if (res->status == 429 || res->status >= 500) {
    error = "HTTP " + std::to_string(res->status);
    return Outcome::retry;
  }
  if (res->status < 200 || res->status >= 300) {
    error = "HTTP " + std::to_string(res->status);
    text = res->body;
    for (const auto& m : endpoint_.refusal_markers)
      if (contains_ci(res->body, m)) return Outcome::safety;
    return Outcome::fatal;
  }

  const auto j = nlohmann::json::parse(res->body, nullptr, false);
  if (j.is_discarded()) {
    error = "response is not JSON";
    text = res->body;
    return Outcome::fatal;
  }
  if (endpoint_.transport == Transport::http_openai_style) {
    if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty()) {
      error = "response has no choices";
      text = res->body;
      return Outcome::fatal;
    }
    const auto& choice = j["choices"][0];
    if (choice.value("finish_reason", "") == "content_filter") {
      text = res->body;
      return Outcome::safety;
    }
    const auto msg = choice.find("message");
    if (msg == choice.end() || !msg->contains("content") || !(*msg)["content"].is_string()) {
      error = "response has no message content";
      text = res->body;
      return Outcome::fatal;
    }
    text = (*msg)["content"].get<std::string>();
    return Outcome::ok;
  }
  if (j.value("blocked", false)) {
    text = res->body;
    return Outcome::safety;
  }
  if (!j.contains("text") || !j["text"].is_string()) {
    error = "response has no text";
    text = res->body;
    return Outcome::fatal;
  }
  text = j["text"].get<std::string>();
  return Outcome::ok;
}

QueryResult EndpointClient::query(const RenderedPrompt& prompt, const std::vector<std::string>& png_attachments) {
  QueryResult r;
  const auto body = build_body(prompt, png_attachments);
  const auto start = std::chrono::steady_clock::now();
  const int max_attempts = 1 + endpoint_.max_retries;
  for (int a = 1; a <= max_attempts; ++a) {
    r.attempts = a;
    std::string text, error;
    const auto outcome = attempt(body, text, error);
    r.error = error;
    if (outcome == Outcome::ok) {
      r.status = EvalStatus::answered;
      r.raw = std::move(text);
      break;
    }
    if (outcome == Outcome::safety) {
      r.status = EvalStatus::unanswered_safety;
      r.raw = std::move(text);
      break;
    }
    r.status = EvalStatus::transport_error;
    r.raw = std::move(text);
    if (outcome == Outcome::fatal || a == max_attempts) break;
    double factor;
    {
      std::lock_guard lock(rng_mu_);
      factor = 0.5 + jitter_.uniform01();
    }
    const double delay_ms = endpoint_.backoff_base_ms * std::pow(2.0, a - 1) * factor;
    std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(delay_ms));
  }
  r.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace taskaug::eval
