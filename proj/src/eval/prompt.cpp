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

#include "taskaug/eval/prompt.hpp"

namespace taskaug::eval {

RenderedPrompt render_prompt(const TaskInstance& task, const taskgen::TemplateSet& templates) {
  const auto& tmpl = templates.at(task.task_type);
  RenderedPrompt p;
  p.attachments = task.image_refs;
  p.text = task.prompt_text;
  if (task.image_refs.size() > 1) {
    p.text += "\nThe images are attached in order as Image 1 to Image " + std::to_string(task.image_refs.size()) + ".";
  }
  // Image-choice quizzes end their attachment list with the options.
  const std::size_t n = task.options.size(), refs = task.image_refs.size();
  bool image_options = n > 0 && refs >= n;
  for (std::size_t i = 0; image_options && i < n; ++i) image_options = task.options[i] == task.image_refs[refs - n + i];
  for (std::size_t i = 0; i < n; ++i) {
    const std::string label = image_options ? "Image " + std::to_string(refs - n + i + 1) : task.options[i];
    p.text += "\n";
    p.text += static_cast<char>('A' + i);
    p.text += ") " + label;
  }
  p.text += "\n" + tmpl.instruction;
  return p;
}

}  // namespace taskaug::eval
