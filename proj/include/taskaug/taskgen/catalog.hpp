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

#include <string>
#include <vector>

#include "taskaug/core/types.hpp"

namespace taskaug::taskgen {

struct TaskCatalogEntry {
  TaskType task_type;
  std::vector<std::string> required_attributes;
  std::string eligibility;
  std::string answer_key_rule;
  std::string template_id;
};

// All 25 task types, in catalog order.
const std::vector<TaskCatalogEntry>& task_catalog();

}  // namespace taskaug::taskgen
