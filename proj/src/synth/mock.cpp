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

#include "taskaug/synth/mock.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "taskaug/common/error.hpp"
#include "taskaug/common/rng.hpp"
#include "taskaug/common/util.hpp"
#include "taskaug/eval/prompt.hpp"

namespace taskaug::synth {

std::vector<std::string> wrong_answers(const TaskInstance& t) {
  switch (t.answer_type) {
    case AnswerType::binary: return {t.answer_key == "yes" ? "no" : "yes"};
    case AnswerType::color: return {t.answer_key == "red" ? "green" : "red"};
    case AnswerType::quiz4: {
      std::vector<std::string> out;
      for (std::size_t i = 0; i < std::max<std::size_t>(t.options.size(), 2); ++i) {
        std::string l(1, static_cast<char>('a' + i));
        if (l != t.answer_key) out.push_back(std::move(l));
      }
      return out;
    }
    case AnswerType::count: {
      const int k = std::stoi(t.answer_key);
      std::vector<std::string> out{std::to_string(k + 1)};
      if (k > 0) out.push_back(std::to_string(k - 1));
      return out;
    }
  }
  return {};
}

std::vector<HumanRating> simulate_human_ratings(const std::vector<TaskInstance>& tasks, std::uint64_t seed,
                                                double accuracy, int threshold, int max_raters) {
  std::vector<HumanRating> out;
  for (const auto& t : tasks) {
    Rng rng(derive_seed(seed, t.task_id));
    const auto wrong = wrong_answers(t);
    std::map<std::string, int> votes;
    for (int k = 1; k <= max_raters; ++k) {
      HumanRating r;
      r.task_id = t.task_id;
      r.image_id = t.image_id;
      r.rater_id = "h" + std::to_string(rng.uniform_index(40));
      r.answer = rng.uniform01() < accuracy ? t.answer_key : wrong[rng.uniform_index(wrong.size())];
      r.rank_in_sequence = k;
      const int v = ++votes[r.answer];
      out.push_back(std::move(r));
      if (v >= threshold) break;
    }
  }
  return out;
}

struct MockModelServer::Impl {
  httplib::Server server;
  std::thread thread;
  std::string prefix;
  int port = 0;
  MockScript script;
  std::atomic<std::size_t> count{0};
  std::atomic<int> in_flight{0};
  std::atomic<int> max_in_flight{0};
  mutable std::mutex mu;
  std::vector<std::chrono::steady_clock::time_point> arrivals;

  void handle(const std::string& path, const httplib::Request& req, httplib::Response& res) {
    const int now = ++in_flight;
    int seen = max_in_flight.load();
    while (now > seen && !max_in_flight.compare_exchange_weak(seen, now)) {
    }
    MockRequest m;
    m.path = path;
    m.index = count.fetch_add(1);
    {
      std::lock_guard lock(mu);
      arrivals.push_back(std::chrono::steady_clock::now());
    }
    const auto body = nlohmann::json::parse(req.body, nullptr, false);
    if (!body.is_discarded()) {
      m.model = body.value("model", "");
      if (path == "/generate") {
        m.prompt = body.value("prompt", "");
        for (const auto& img : body.value("images", nlohmann::json::array())) m.images_b64.push_back(img.get<std::string>());
      } else if (body.contains("messages") && !body["messages"].empty()) {
        for (const auto& part : body["messages"][0].value("content", nlohmann::json::array())) {
          if (part.value("type", "") == "text") {
            m.prompt += part.value("text", "");
          } else if (part.value("type", "") == "image_url") {
            std::string url = part["image_url"].value("url", "");
            if (const auto comma = url.find(','); comma != std::string::npos) url.erase(0, comma + 1);
            m.images_b64.push_back(std::move(url));
          }
        }
      }
    }
    const MockReply reply = script(m);
    if (reply.delay_ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(reply.delay_ms));
    res.status = reply.status;
    if (!reply.body.empty()) {
      res.set_content(reply.body, "application/json");
    } else if (path == "/generate") {
      nlohmann::json j;
      if (reply.blocked) j["blocked"] = true;
      else j["text"] = reply.text;
      res.set_content(j.dump(), "application/json");
    } else {
      nlohmann::json choice;
      choice["index"] = 0;
      choice["message"] = {{"role", "assistant"}, {"content", reply.blocked ? nlohmann::json() : nlohmann::json(reply.text)}};
      choice["finish_reason"] = reply.blocked ? "content_filter" : "stop";
      res.set_content(nlohmann::json{{"choices", {choice}}}.dump(), "application/json");
    }
    --in_flight;
  }
};

MockModelServer::MockModelServer(MockScript script, int port, std::string prefix) : impl_(std::make_unique<Impl>()) {
  impl_->script = std::move(script);
  impl_->prefix = std::move(prefix);
  for (const std::string path : {"/chat/completions", "/generate"}) {
    impl_->server.Post(impl_->prefix + path, [this, path](const httplib::Request& req, httplib::Response& res) {
      impl_->handle(path, req, res);
    });
  }
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
  } else if (impl_->server.bind_to_port("127.0.0.1", port)) {
    impl_->port = port;
  } else {
    impl_->port = -1;
  }
  if (impl_->port < 0) throw IoError("mock server: cannot bind a port");
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

MockModelServer::~MockModelServer() { stop(); }

void MockModelServer::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int MockModelServer::port() const { return impl_->port; }
std::string MockModelServer::base_url() const {
  return "http://127.0.0.1:" + std::to_string(impl_->port) + impl_->prefix;
}
std::size_t MockModelServer::request_count() const { return impl_->count.load(); }
int MockModelServer::max_in_flight() const { return impl_->max_in_flight.load(); }
std::vector<std::chrono::steady_clock::time_point> MockModelServer::arrivals() const {
  std::lock_guard lock(impl_->mu);
  return impl_->arrivals;
}

namespace {

std::string request_key(std::string_view prompt, const std::vector<std::string>& images_b64) {
  std::string s(prompt);
  for (const auto& b : images_b64) s += "\n" + b;
  return sha256_hex(s);
}

std::string phrase(const TaskInstance& t, const std::string& answer, Rng& rng) {
  if (t.answer_type == AnswerType::quiz4) {
    std::string upper = answer;
    std::ranges::transform(upper, upper.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return rng.coin() ? upper : "The answer is " + upper + ".";
  }
  if (t.answer_type == AnswerType::binary) return rng.coin() ? answer : (answer == "yes" ? "Yes, it is." : "No.");
  return rng.coin() ? answer : "Answer: " + answer;
}

}  // namespace

MockScript bundle_oracle_script(const taskgen::LoadedBundle& bundle, const taskgen::TemplateSet& templates,
                                std::map<std::string, double> accuracy, std::uint64_t seed) {
  auto by_key = std::make_shared<std::map<std::string, TaskInstance>>();
  for (const auto& t : bundle.tasks) {
    const auto prompt = eval::render_prompt(t, templates);
    std::vector<std::string> images;
    for (const auto& id : prompt.attachments) {
      const auto png = read_file(bundle.asset_path(id));
      images.push_back(base64_encode({reinterpret_cast<const std::uint8_t*>(png.data()), png.size()}));
    }
    by_key->emplace(request_key(prompt.text, images), t);
  }
  return [by_key, accuracy = std::move(accuracy), seed](const MockRequest& req) {
    MockReply reply;
    const auto it = by_key->find(request_key(req.prompt, req.images_b64));
    if (it == by_key->end()) {
      reply.text = "I cannot tell from these images.";
      return reply;
    }
    const auto& task = it->second;
    const auto acc = accuracy.find(req.model);
    const double p = acc == accuracy.end() ? 0.5 : acc->second;
    Rng rng(derive_seed(derive_seed(seed, req.model), task.task_id));
    const auto wrong = wrong_answers(task);
    const auto& answer = rng.uniform01() < p ? task.answer_key : wrong[rng.uniform_index(wrong.size())];
    reply.text = phrase(task, answer, rng);
    return reply;
  };
}

}  // namespace taskaug::synth
