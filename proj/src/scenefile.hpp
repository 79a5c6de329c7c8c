// Copyright 2026 The mgopt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MGOPT_SCENEFILE_HPP
#define MGOPT_SCENEFILE_HPP

#include <stdexcept>
#include <string>

#include "bench.hpp"

namespace mgopt {

/// Malformed scene/manifest input. Messages carry the offending key or the
/// parser's line/column diagnostics.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct SceneFileData {
  ProblemInstance instance;
  PlannerConfig planner;
};

SceneFileData parse_scene_text(const std::string& text);
SceneFileData load_scene_file(const std::string& path);

/// Planner overrides from a JSON object using the scene file's planner keys,
/// applied over `base`.
PlannerConfig parse_planner_overrides(const std::string& json_text,
                                      const PlannerConfig& base);

/// JSON document that parses back to the identical scene (floats verbatim).
std::string write_scene_text(const ProblemInstance& instance, const PlannerConfig& planner);
void save_scene_file(const std::string& path, const ProblemInstance& instance,
                     const PlannerConfig& planner);

struct ManifestEntry {
  std::string name;
  std::string type;  // selectors | ablation
  int scenes = 1;
  int runs = 1;
  std::uint64_t seed = 0;
  SceneSpec scene_template;
  std::vector<Selector> selectors;
  std::string parameter;        // ablation only
  std::vector<double> values;   // ablation only
  PlannerConfig planner;
};

std::vector<ManifestEntry> parse_manifest_text(const std::string& text);
std::vector<ManifestEntry> load_manifest_file(const std::string& path);

/// SceneSpec list the manifest entry expands to (seed + index per scene).
std::vector<SceneSpec> manifest_scene_specs(const ManifestEntry& entry);

}  // namespace mgopt

#endif  // MGOPT_SCENEFILE_HPP
