// Copyright 2026 The shadow4d Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// JSON scene files.
//
//   {
//     "name": "bakery",
//     "variables": ["x", "y", "z"],
//     "surfaces": [{"name": "S1", "role": "factor", "expr": "(x - 1)^2 + ..."}],
//     "lights": [{"name": "L", "coords": [-1, -2, 10], "homogeneous": false}],
//     "camera": {"d": -6},
//     "grid": {"min": [-8, -8, -8], "max": [8, 8, 8], "resolution": 96},
//     "shadows": [["S", "P"]]
//   }
//
// Numbers may be JSON numbers or strings such as "1/4"; both are read
// exactly from their decimal text. "role" defaults to "factor". "shadows"
// lists caster/target pairs and defaults to every factor onto every receiver.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shadow4d/mesh.hpp"
#include "shadow4d/scene.hpp"

namespace shadow4d {

struct SceneFile {
  std::string name;
  SceneDescription scene;
  std::vector<std::string> light_names;
  std::optional<GridSpec> grid;
  /// (caster, target) surface names.
  std::vector<std::pair<std::string, std::string>> shadows;

  /// Factor or receiver with this name. Throws StructuralError when absent.
  const Hypersurface& surface(std::string_view name) const;
  /// Factors followed by receivers.
  std::vector<const Hypersurface*> surfaces() const;
};

/// Throws ParseError for malformed JSON or expressions, StructuralError for
/// inconsistent content.
SceneFile parse_scene(std::string_view json_text);
/// Throws IoError when the file cannot be read.
SceneFile load_scene(const std::filesystem::path& path);

}  // namespace shadow4d
