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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "taskaug/core/types.hpp"

namespace taskaug::ingest {

// A problem with one annotation or image; parsing continues past it.
struct ItemError {
  std::string kind;  // "unknown image", "unknown category", "empty mask", "image load", ...
  std::string item;  // annotation or image id
  std::string message;
};

struct CocoParseResult {
  std::vector<AnnotatedImage> images;
  std::vector<ItemError> errors;
  std::vector<std::string> warnings;
};

struct CocoOptions {
  std::string domain_tag;
  // When false, images are returned with an empty pixel raster (annotation-only use).
  bool load_pixels = true;
};

// Parses a COCO instance annotation file. Throws ParseError (with byte offset)
// on malformed JSON or a missing top-level array; everything else is reported
// per item. Crowd annotations are skipped with a warning.
CocoParseResult parse_coco(std::string_view annotation_json, const std::filesystem::path& image_root,
                           const CocoOptions& options = {});

}  // namespace taskaug::ingest
