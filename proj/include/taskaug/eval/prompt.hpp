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
#include "taskaug/taskgen/templates.hpp"

namespace taskaug::eval {

struct RenderedPrompt {
  std::string text;
  std::vector<std::string> attachments;  // asset ids, in send order
};

// Question, options labelled A)-D) in stored order, then the answer
// instruction. Options that name an attached asset are shown as "Image n".
// Throws Error when the template set lacks the task type.
RenderedPrompt render_prompt(const TaskInstance& task, const taskgen::TemplateSet& templates);

}  // namespace taskaug::eval
