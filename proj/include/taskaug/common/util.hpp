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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>

namespace taskaug {

std::string base64_encode(std::span<const std::uint8_t> bytes);

// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

// Writes atomically via a sibling temporary file and rename.
void write_file(const std::filesystem::path& path, std::string_view contents);

// Runs fn(i) for i in [0, n) on up to `workers` threads. Exceptions from any
// invocation are rethrown on the calling thread (the first one wins).
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

// Formats a double with the shortest round-trip representation.
std::string format_double(double v);

}  // namespace taskaug
