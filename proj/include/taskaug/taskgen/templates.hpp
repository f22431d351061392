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

#include <map>
#include <string>
#include <string_view>

#include "taskaug/core/types.hpp"

namespace taskaug::taskgen {

// Question text (with {placeholders}) and answer-format instruction for one
// task type.
struct PromptTemplate {
  std::string question;
  std::string instruction;
};

struct TemplateSet {
  std::string version;
  std::map<TaskType, PromptTemplate> templates;

  // Throws Error if the task type has no template.
  const PromptTemplate& at(TaskType t) const;
};

// The versioned templates shipped with the library.
const TemplateSet& default_templates();

// Replaces each {name} with its value; unknown placeholders are left as-is.
std::string fill_template(std::string_view text, const std::map<std::string, std::string>& values);

}  // namespace taskaug::taskgen
