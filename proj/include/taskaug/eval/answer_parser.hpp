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

#include <optional>
#include <string>
#include <string_view>

#include "taskaug/core/types.hpp"

namespace taskaug::eval {

// Extracts the canonical answer ("yes"/"no", "a".."d", "red"/"green", or a
// decimal count) from a raw model response. The earliest candidate of the
// requested kind wins. Total over arbitrary bytes; nullopt when nothing matches.
std::optional<std::string> parse_answer(std::string_view raw, AnswerType type);

}  // namespace taskaug::eval
