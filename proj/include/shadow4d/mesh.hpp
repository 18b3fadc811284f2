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


// Triangle meshes of implicit surfaces in three variables, illumination
// coloring, and OBJ/PLY output.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "shadow4d/poly.hpp"
#include "shadow4d/scene.hpp"
#include "shadow4d/visibility.hpp"

namespace shadow4d {

/// Sample lattice over an axis-aligned box; `resolution` samples per axis.
struct GridSpec {
  std::array<double, 3> min{-1, -1, -1};
  std::array<double, 3> max{1, 1, 1};
  int resolution = 96;

  static constexpr std::int64_t kMaxCells = std::int64_t{512} * 512 * 512;
  /// Throws DomainError on an empty box, resolution < 2, or too many cells.
  void validate() const;
};

using Rgb = std::array<std::uint8_t, 3>;

struct ColoredMesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  /// Empty until classified; otherwise one entry per vertex.
  std::vector<Illumination> classes;
  /// Empty or one entry per vertex.
  std::vector<Rgb> colors;
  std::vector<std::string> warnings;
};

Rgb color_of(Illumination c);

/// Marching cubes on double evaluations of p (three variables). Vertices on
/// shared grid edges are shared, so closed surfaces inside the box give
/// watertight meshes. Corner signs of 1% of vertices are re-checked exactly;
/// a disagreement throws PrecisionError.
ColoredMesh marching_cubes(const Polynomial& p, const GridSpec& grid, unsigned workers = 1);

/// Newton projection of a point onto p = 0 in double precision.
std::array<double, 3> project_to_surface(const Polynomial& p, std::array<double, 3> x);

/// Classifies every vertex of a mesh of `surface` with `classifier`.
void classify_mesh(ColoredMesh& mesh, const SceneDescription& scene, const Classifier& classifier,
                   SurfaceRef surface, unsigned workers = 1);

enum class MeshFormat { Obj, Ply };

/// Byte-deterministic output, written through a temporary file. Throws IoError.
void export_mesh(const ColoredMesh& mesh, MeshFormat format, const std::filesystem::path& path);

struct ColoredSegment {
  std::array<double, 3> from;
  std::array<double, 3> to;
  Rgb color;
  std::string group;
};

/// Frame edges with the axis colors x green, y blue, z purple, w red.
std::vector<ColoredSegment> colored_frame(const std::vector<FrameEdge>& edges);

/// Polyline OBJ; coincident endpoints share one vertex. Throws IoError.
void export_frame(const std::vector<ColoredSegment>& segments, const std::filesystem::path& path);

}  // namespace shadow4d
