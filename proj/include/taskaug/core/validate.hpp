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

namespace taskaug {

struct Violation {
  std::string image_id;
  std::string object_id;  // empty for image-level violations
  std::string kind;       // e.g. "duplicate id", "bbox not tight", "empty mask"
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks every dataset invariant and reports all violations. Never throws
// for invalid content and never modifies the dataset.
ValidationReport validate_dataset(const std::vector<AnnotatedImage>& dataset);

}  // namespace taskaug
