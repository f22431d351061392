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
#include <span>
#include <string>
#include <vector>

#include "taskaug/core/types.hpp"

namespace taskaug::enrich {

inline constexpr const char* kUnresolved = "unresolved";

struct Consensus {
  std::string answer = kUnresolved;
  // Ratings consumed before stopping (all of them if the threshold was never hit).
  int ratings_used = 0;
  bool threshold_reached = false;
};

// Consensus with early stopping for the ratings of one item. Ratings are
// consumed in rank order; as soon as one answer has `threshold` votes it wins
// and later ratings are ignored. Otherwise the strict-majority answer wins, or
// the item is unresolved. Throws InvalidArgument if threshold < 1.
Consensus merge_human_metadata(std::span<const HumanRating> ratings, int threshold);

// Groups ratings by item key and merges each group.
std::map<std::string, Consensus> merge_all(std::span<const HumanRating> ratings, int threshold);

}  // namespace taskaug::enrich
