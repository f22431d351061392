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

#include <cstdio>
#include <filesystem>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "taskaug/core/types.hpp"

namespace taskaug::eval {

nlohmann::ordered_json to_json(const EvalRecord& r);
EvalRecord eval_record_from_json(const nlohmann::ordered_json& j);

// Reads a JSON-lines record file. A partial final line (an interrupted
// write) is ignored; a corrupt line elsewhere throws ParseError.
std::vector<EvalRecord> read_records(const std::filesystem::path& path);
void write_records(const std::filesystem::path& path, const std::vector<EvalRecord>& records);

// Append-only record log keyed by (task_id, model_id). Opening an existing
// journal loads its records and cuts off a partial final line.
class Journal {
 public:
  explicit Journal(const std::filesystem::path& path);
  ~Journal();
  Journal(const Journal&) = delete;
  Journal& operator=(const Journal&) = delete;

  bool contains(const std::string& task_id, const std::string& model_id) const;
  // Thread-safe; each record is flushed and synced before returning.
  void append(const EvalRecord& record);
  const std::vector<EvalRecord>& loaded() const { return loaded_; }

 private:
  std::FILE* file_ = nullptr;
  mutable std::mutex mu_;
  std::set<std::pair<std::string, std::string>> keys_;
  std::vector<EvalRecord> loaded_;
};

}  // namespace taskaug::eval
