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

#include "taskaug/taskgen/templates.hpp"

#include "taskaug/common/error.hpp"

namespace taskaug::taskgen {

const PromptTemplate& TemplateSet::at(TaskType t) const {
  const auto it = templates.find(t);
  if (it == templates.end()) {
    throw Error("no prompt template for task type " + std::string(task_code(t)) + " in template set " +
                version);
  }
  return it->second;
}

const TemplateSet& default_templates() {
  static const TemplateSet set = [] {
    constexpr const char* kBinary = "Answer with yes or no.";
    constexpr const char* kCount = "Answer with a single whole number.";
    constexpr const char* kQuiz = "Answer with the letter of the correct option (A, B, C or D).";
    constexpr const char* kColor = "Answer with red or green.";
    TemplateSet s;
    s.version = "taskaug-templates/1";
    auto& t = s.templates;
    t[TaskType::T1_1] = {"Is there a {class} in the image?", kBinary};
    t[TaskType::T1_2] = {"How many objects of the class '{class}' are in the image?", kCount};
    t[TaskType::T1_3] = {"Apart from the object marked with the {marker} box, is there any other object in the image?", kBinary};
    t[TaskType::T2_1] = {"Is the object marked with the {marker} box occluded by another object?", kQuiz};
    t[TaskType::T2_2] = {"Is the object marked with the {marker} box truncated by the edge of the image?", kBinary};
    t[TaskType::T2_3] = {"The same object is marked with a {marker} box in each of the four images. In which image is the marked object blurred?", kQuiz};
    t[TaskType::T2_4] = {"The same object is marked with a {marker} box in each of the four images. In which image does the marked object contain noise?", kQuiz};
    t[TaskType::T2_5] = {"Which of the four images is the least blurred?", kQuiz};
    t[TaskType::T2_6] = {"Three of the four images were corrupted with noise. Which image is not corrupted?", kQuiz};
    t[TaskType::T3_1] = {"Two objects are marked with a red and a green box. Which of the two objects is larger?", kColor};
    t[TaskType::T3_2] = {"Two objects are marked with a red and a green box. Which of the two objects is further to the left of the image?", kColor};
    t[TaskType::T3_3] = {"Two objects are marked with a red and a green box. Which of the two objects is further to the bottom of the image?", kColor};
    t[TaskType::T3_4] = {"Is there another object further to the left of the image than the object marked with the {marker} box?", kBinary};
    t[TaskType::T3_5] = {"Is there another object further to the bottom of the image than the object marked with the {marker} box?", kBinary};
    t[TaskType::T4_1] = {"Are the object marked with the red box and the object marked with the green box touching each other?", kBinary};
    t[TaskType::T4_2] = {"Which way is the object marked with the {marker} box facing?", kQuiz};
    t[TaskType::T5_1] = {"The first image shows an object marked with a {marker} box. Which of the four color tiles shows the color of the marked object?", kQuiz};
    t[TaskType::T5_2] = {"Which of the four images is the 2nd brightest?", kQuiz};
    t[TaskType::T5_3] = {"Three of the four images have altered colors. Which image is not corrupted?", kQuiz};
    t[TaskType::T5_4] = {"Two points are marked with a red and a green dot. Is the point marked in red brighter than the point marked in green?", kBinary};
    t[TaskType::T6_1] = {"Two objects are marked with a red and a green box. Which of the two objects is closer to the camera?", kColor};
    t[TaskType::T6_2] = {"Two points are marked with a red and a green dot. Is the point marked in red closer to the camera than the point marked in green?", kBinary};
    t[TaskType::T7_1] = {"The first image has a gray area cut out. Each of the four tiles that follow has been rotated. Which tile, once rotated back, fits best into the cut out area?", kQuiz};
    t[TaskType::T7_2] = {"The first image has a gray area cut out. Which of the four tiles that follow fits best into the cut out area?", kQuiz};
    t[TaskType::T8_1] = {"Three of the four images are rotated. Which image is not rotated?", kQuiz};
    return s;
  }();
  return set;
}

std::string fill_template(std::string_view text, const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      const auto close = text.find('}', i);
      if (close != std::string_view::npos) {
        const auto it = values.find(std::string(text.substr(i + 1, close - i - 1)));
        if (it != values.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(text[i++]);
  }
  return out;
}

}  // namespace taskaug::taskgen
