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

#include "taskaug/enrich/consensus.hpp"

#include <algorithm>

#include "taskaug/common/error.hpp"

namespace taskaug::enrich {

Consensus merge_human_metadata(std::span<const HumanRating> ratings, int threshold) {
  if (threshold < 1) throw InvalidArgument("consensus threshold must be >= 1");
  std::vector<const HumanRating*> ordered;
  ordered.reserve(ratings.size());
  for (const auto& r : ratings) ordered.push_back(&r);
  std::ranges::stable_sort(ordered, {}, [](const HumanRating* r) { return r->rank_in_sequence; });

  Consensus out;
  std::map<std::string, int> votes;
  for (const auto* r : ordered) {
    ++out.ratings_used;
    if (++votes[r->answer] >= threshold) {
      out.answer = r->answer;
      out.threshold_reached = true;
      return out;
    }
  }
  for (const auto& [answer, n] : votes) {
    if (2 * n > out.ratings_used) {
      out.answer = answer;
      break;
    }
  }
  return out;
}

std::map<std::string, Consensus> merge_all(std::span<const HumanRating> ratings, int threshold) {
  std::map<std::string, std::vector<HumanRating>> groups;
  for (const auto& r : ratings) groups[r.item_key()].push_back(r);
  std::map<std::string, Consensus> out;
  for (const auto& [key, group] : groups) out[key] = merge_human_metadata(group, threshold);
  return out;
}

}  // namespace taskaug::enrich
