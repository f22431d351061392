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

namespace taskaug::csv {

using Row = std::vector<std::string>;

// RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF line endings.
// Throws ParseError on an unterminated quote.
std::vector<Row> parse(std::string_view text);

// Quotes a field only when it contains a comma, quote, or line break.
std::string escape(std::string_view field);

std::string format_row(const Row& row);

}  // namespace taskaug::csv
