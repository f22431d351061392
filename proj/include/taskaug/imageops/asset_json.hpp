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

#include <json.hpp>

#include "taskaug/imageops/asset.hpp"

namespace taskaug::imageops {

nlohmann::ordered_json to_json(const Transform& t);
Transform transform_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const TransformChain& chain);
TransformChain chain_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const Marking& m);
Marking marking_from_json(const nlohmann::ordered_json& j);

}  // namespace taskaug::imageops
