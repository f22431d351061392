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
#include <string_view>
#include <vector>

#include "taskaug/core/types.hpp"

namespace taskaug::enrich {

// JSON-lines: one object record per line, attributes plus "source_tags".
std::string to_jsonl(const std::vector<MetadataRecord>& records);
std::vector<MetadataRecord> from_jsonl(std::string_view text);

}  // namespace taskaug::enrich
