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

namespace taskaug::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation or runtime failure
inline constexpr int kExitUsage = 2;

int cli_main(int argc, const char* const* argv);
// Convenience overload; args exclude the program name.
int cli_main(const std::vector<std::string>& args);

}  // namespace taskaug::cli
