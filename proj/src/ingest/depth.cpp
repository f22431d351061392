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

#include "taskaug/ingest/depth.hpp"

#include <sstream>

#include "taskaug/common/error.hpp"
#include "taskaug/common/util.hpp"
#include "taskaug/io/image_io.hpp"

namespace taskaug::ingest {

std::map<std::string, DepthMap> load_depth_maps(const std::filesystem::path& directory,
                                                const std::filesystem::path& manifest,
                                                const ImageDims& dims) {
  std::map<std::string, DepthMap> out;
  std::istringstream lines(read_file(manifest));
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError("depth manifest line " + std::to_string(line_no) + " lacks a tab");
    }
    const std::string image_id = line.substr(0, tab);
    const std::string filename = line.substr(tab + 1);
    const auto d = dims.find(image_id);
    if (d == dims.end()) throw InvalidArgument("depth map for unknown image " + image_id);
    const auto path = directory / filename;
    if (!std::filesystem::exists(path)) {
      throw IoError("depth map for image " + image_id + " missing: " + path.string());
    }
    DepthMap map{image_id, io::read_gray16_png(path)};
    if (map.width() != d->second.first || map.height() != d->second.second) {
      throw InvalidArgument("depth map dimension mismatch for image " + image_id + ": " +
                            std::to_string(map.width()) + "x" + std::to_string(map.height()) +
                            " vs image " + std::to_string(d->second.first) + "x" +
                            std::to_string(d->second.second));
    }
    out.emplace(image_id, std::move(map));
  }
  return out;
}

}  // namespace taskaug::ingest
