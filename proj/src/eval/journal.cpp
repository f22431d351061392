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

#include "taskaug/eval/journal.hpp"

#include <unistd.h>

#include "taskaug/common/error.hpp"
#include "taskaug/common/util.hpp"

namespace taskaug::eval {

using nlohmann::ordered_json;

ordered_json to_json(const EvalRecord& r) {
  ordered_json j;
  j["task_id"] = r.task_id;
  j["model_id"] = r.model_id;
  j["raw_response"] = r.raw_response;
  j["parsed_answer"] = r.parsed_answer ? ordered_json(*r.parsed_answer) : ordered_json(nullptr);
  j["status"] = to_string(r.status);
  j["latency_ms"] = r.latency_ms;
  j["attempt_count"] = r.attempt_count;
  return j;
}

EvalRecord eval_record_from_json(const ordered_json& j) {
  EvalRecord r;
  try {
    r.task_id = j.at("task_id").get<std::string>();
    r.model_id = j.at("model_id").get<std::string>();
    r.raw_response = j.value("raw_response", "");
    if (j.contains("parsed_answer") && j["parsed_answer"].is_string()) r.parsed_answer = j["parsed_answer"].get<std::string>();
    const auto status = parse_eval_status(j.at("status").get<std::string>());
    if (!status) throw ParseError("unknown status " + j.at("status").dump());
    r.status = *status;
    r.latency_ms = j.value("latency_ms", 0.0);
    r.attempt_count = j.value("attempt_count", 0);
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("bad eval record: ") + e.what());
  }
  return r;
}

namespace {

// Parses complete lines; returns the byte length of the valid prefix.
std::size_t parse_lines(const std::string& text, std::vector<EvalRecord>& out) {
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string::npos) return start;  // partial tail
    const std::string_view line(text.data() + start, end - start);
    if (!line.empty()) {
      const auto j = ordered_json::parse(line, nullptr, false);
      if (j.is_discarded()) throw ParseError("corrupt record line", start);
      out.push_back(eval_record_from_json(j));
    }
    start = end + 1;
  }
  return start;
}

}  // namespace

std::vector<EvalRecord> read_records(const std::filesystem::path& path) {
  std::vector<EvalRecord> out;
  parse_lines(read_file(path), out);
  return out;
}

void write_records(const std::filesystem::path& path, const std::vector<EvalRecord>& records) {
  std::string text;
  for (const auto& r : records) text += to_json(r).dump() + "\n";
  write_file(path, text);
}

Journal::Journal(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  if (std::filesystem::exists(path)) {
    const auto text = read_file(path);
    const auto valid = parse_lines(text, loaded_);
    if (valid < text.size()) std::filesystem::resize_file(path, valid);
    for (const auto& r : loaded_) keys_.emplace(r.task_id, r.model_id);
  }
  file_ = std::fopen(path.c_str(), "ab");
  if (!file_) throw IoError("cannot open journal " + path.string());
}

Journal::~Journal() {
  if (file_) std::fclose(file_);
}

bool Journal::contains(const std::string& task_id, const std::string& model_id) const {
  std::lock_guard lock(mu_);
  return keys_.contains({task_id, model_id});
}

void Journal::append(const EvalRecord& record) {
  const auto line = to_json(record).dump() + "\n";
  std::lock_guard lock(mu_);
  if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() || std::fflush(file_) != 0) {
    throw IoError("journal write failed");
  }
  ::fsync(::fileno(file_));
  keys_.emplace(record.task_id, record.model_id);
}

}  // namespace taskaug::eval
