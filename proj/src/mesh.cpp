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


#include "shadow4d/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "mc_tables.hpp"
#include "shadow4d/error.hpp"

namespace shadow4d {

void GridSpec::validate() const {
  for (int a = 0; a < 3; ++a) {
    if (!(min[a] < max[a])) throw DomainError("grid box is empty along an axis");
  }
  if (resolution < 2) throw DomainError("grid resolution must be at least 2");
  const std::int64_t cells = std::int64_t{resolution - 1} * (resolution - 1) * (resolution - 1);
  if (cells > kMaxCells) throw DomainError("grid exceeds the cell cap");
}

Rgb color_of(Illumination c) {
  switch (c) {
    case Illumination::Illuminated:
      return {40, 90, 230};
    case Illumination::PolarExcluded:
      return {40, 170, 70};
    case Illumination::Occluded:
      return {220, 40, 40};
    case Illumination::ReceiverShadow:
      return {70, 70, 70};
    case Illumination::ReceiverLit:
      return {205, 205, 205};
  }
  return {255, 255, 255};
}

namespace {

// Runs body(begin, end) over [0, n) split into contiguous chunks.
template <class F>
void parallel_chunks(std::size_t n, unsigned workers, F body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t begin = n * w / workers, end = n * (w + 1) / workers;
    threads.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct Lattice {
  int n;
  std::array<std::vector<double>, 3> coord;
  std::vector<double> value;  // index (k * n + j) * n + i

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * n + j) * n + i;
  }
};

Lattice sample(const Polynomial& p, const GridSpec& grid, unsigned workers) {
  Lattice lat;
  lat.n = grid.resolution;
  const int n = lat.n;
  for (int a = 0; a < 3; ++a) {
    lat.coord[a].resize(n);
    for (int i = 0; i < n; ++i) {
      lat.coord[a][i] = i == n - 1 ? grid.max[a] : grid.min[a] + (grid.max[a] - grid.min[a]) * i / (n - 1);
    }
  }
  lat.value.resize(static_cast<std::size_t>(n) * n * n);
  // Collapse p to a univariate in the third variable for every (x, y) column.
  const auto cz = coefficients_in(p, 2);
  parallel_chunks(static_cast<std::size_t>(n) * n, workers, [&](std::size_t begin, std::size_t end) {
    std::vector<double> c(cz.size());
    for (std::size_t col = begin; col < end; ++col) {
      const int i = static_cast<int>(col % n), j = static_cast<int>(col / n);
      const double xy[3] = {lat.coord[0][i], lat.coord[1][j], 0.0};
      for (std::size_t e = 0; e < cz.size(); ++e) c[e] = evaluate(cz[e], std::span<const double>(xy, 3));
      for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * lat.coord[2][k] + *it;
        lat.value[lat.index(i, j, k)] = acc;
      }
    }
  });
  return lat;
}

}  // namespace

ColoredMesh marching_cubes(const Polynomial& p, const GridSpec& grid, unsigned workers) {
  if (p.space().dimension() != 3) throw StructuralError("marching cubes needs three variables");
  grid.validate();
  if (p.is_constant()) {
    ColoredMesh empty;
    empty.warnings.push_back("constant polynomial; mesh is empty");
    return empty;
  }
  const Lattice lat = sample(p, grid, workers);
  const int n = lat.n;

  // Each slab of cells (fixed k) emits triangles as grid-edge keys.
  using Key = std::uint64_t;
  std::vector<std::vector<std::array<Key, 3>>> slabs(n - 1);
  parallel_chunks(static_cast<std::size_t>(n - 1), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      auto& out = slabs[k];
      for (int j = 0; j + 1 < n; ++j) {
        for (int i = 0; i + 1 < n; ++i) {
          int cube = 0;
          std::size_t corner[8];
          for (int c = 0; c < 8; ++c) {
            const auto& o = detail::kCornerOffset[c];
            corner[c] = lat.index(i + o[0], j + o[1], static_cast<int>(k) + o[2]);
            if (lat.value[corner[c]] < 0.0) cube |= 1 << c;
          }
          if (detail::kEdgeTable[cube] == 0) continue;
          Key keys[12];
          for (int e = 0; e < 12; ++e) {
            const int a = detail::kEdgeCorners[e][0], b = detail::kEdgeCorners[e][1];
            int axis = 0;
            while (detail::kCornerOffset[a][axis] == detail::kCornerOffset[b][axis]) ++axis;
            const bool a_low = detail::kCornerOffset[a][axis] == 0;
            keys[e] = static_cast<Key>(a_low ? corner[a] : corner[b]) * 3 + axis;
          }
          for (const int* t = detail::kTriTable[cube]; *t != -1; t += 3) {
            out.push_back({keys[t[0]], keys[t[2]], keys[t[1]]});
          }
        }
      }
    }
  });

  ColoredMesh mesh;
  std::unordered_map<Key, std::uint32_t> index_of;
  std::vector<Key> vertex_key;
  auto vertex = [&](Key key) {
    auto [it, inserted] = index_of.try_emplace(key, static_cast<std::uint32_t>(vertex_key.size()));
    if (inserted) vertex_key.push_back(key);
    return it->second;
  };
  for (const auto& slab : slabs) {
    for (const auto& tri : slab) {
      std::array<std::uint32_t, 3> t{vertex(tri[0]), vertex(tri[1]), vertex(tri[2])};
      mesh.triangles.push_back(t);
    }
  }
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  auto endpoints = [&](Key key) {
    const int axis = static_cast<int>(key % 3);
    const std::size_t g0 = key / 3;
    const std::size_t step = axis == 0 ? 1 : axis == 1 ? static_cast<std::size_t>(n) : nn;
    return std::pair{g0, g0 + step};
  };
  auto grid_point = [&](std::size_t g) {
    return std::array<double, 3>{lat.coord[0][g % n], lat.coord[1][(g / n) % n], lat.coord[2][g / nn]};
  };
  mesh.vertices.resize(vertex_key.size());
  for (std::size_t v = 0; v < vertex_key.size(); ++v) {
    const auto [g0, g1] = endpoints(vertex_key[v]);
    const int axis = static_cast<int>(vertex_key[v] % 3);
    auto pos = grid_point(g0);
    const double x0 = pos[axis], x1 = grid_point(g1)[axis];
    const double v0 = lat.value[g0], v1 = lat.value[g1];
    pos[axis] = (v1 * x0 - v0 * x1) / (v1 - v0);
    mesh.vertices[v] = pos;
  }
  // Drop triangles that collapse after interpolation.
  std::vector<std::array<std::uint32_t, 3>> kept;
  kept.reserve(mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) continue;
    const auto& a = mesh.vertices[t[0]];
    const auto& b = mesh.vertices[t[1]];
    const auto& c = mesh.vertices[t[2]];
    const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    const double w[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
    const double cx = u[1] * w[2] - u[2] * w[1], cy = u[2] * w[0] - u[0] * w[2],
                 cz = u[0] * w[1] - u[1] * w[0];
    if (0.5 * std::sqrt(cx * cx + cy * cy + cz * cz) <= 1e-12) continue;
    kept.push_back(t);
  }
  mesh.triangles = std::move(kept);

  for (std::size_t v = 0; v < vertex_key.size(); v += 100) {
    const auto [g0, g1] = endpoints(vertex_key[v]);
    for (std::size_t g : {g0, g1}) {
      const auto pt = grid_point(g);
      const Point exact{rational_from_double(pt[0]), rational_from_double(pt[1]), rational_from_double(pt[2])};
      const bool exact_negative = sign(evaluate(p, exact)) < 0;
      if (exact_negative != (lat.value[g] < 0.0)) {
        throw PrecisionError("floating-point sign disagrees with exact evaluation at a grid point");
      }
    }
  }
  if (mesh.triangles.empty()) mesh.warnings.push_back("no sign change inside the grid; mesh is empty");
  return mesh;
}

std::array<double, 3> project_to_surface(const Polynomial& p, std::array<double, 3> x) {
  const auto grad = gradient(p);
  for (int iter = 0; iter < 32; ++iter) {
    const double f = evaluate(p, std::span<const double>(x));
    double g[3], g2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      g[a] = evaluate(grad[a], std::span<const double>(x));
      g2 += g[a] * g[a];
    }
    if (g2 == 0.0) break;
    const double step = f / g2;
    for (int a = 0; a < 3; ++a) x[a] -= step * g[a];
    if (std::abs(f) / std::sqrt(g2) < 1e-13) break;
  }
  return x;
}

void classify_mesh(ColoredMesh& mesh, const SceneDescription& scene, const Classifier& classifier,
                   SurfaceRef surface, unsigned workers) {
  const auto& list = surface.role == SurfaceRef::Role::Factor ? scene.factors : scene.receivers;
  if (surface.index >= list.size()) throw StructuralError("surface index out of range");
  const Polynomial& sigma = list[surface.index].poly;
  mesh.classes.assign(mesh.vertices.size(), Illumination::Illuminated);
  mesh.colors.assign(mesh.vertices.size(), Rgb{});
  parallel_chunks(mesh.vertices.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      const auto q = project_to_surface(sigma, mesh.vertices[v]);
      Sample s{Point{rational_from_double(q[0]), rational_from_double(q[1]), rational_from_double(q[2])},
               surface};
      mesh.classes[v] = classifier.classify(s).cls;
      mesh.colors[v] = color_of(mesh.classes[v]);
    }
  });
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string fmt_unit(std::uint8_t c) { return fmt(c / 255.0); }

void write_atomically(const std::filesystem::path& path, const std::string& body) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << body;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move output into '" + path.string() + "': " + ec.message());
}

}  // namespace

void export_mesh(const ColoredMesh& mesh, MeshFormat format, const std::filesystem::path& path) {
  const bool colored = mesh.colors.size() == mesh.vertices.size() && !mesh.colors.empty();
  std::ostringstream out;
  if (format == MeshFormat::Obj) {
    out << "# shadow4d mesh\n# vertices " << mesh.vertices.size() << " triangles "
        << mesh.triangles.size() << "\n";
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
      const auto& p = mesh.vertices[v];
      out << "v " << fmt(p[0]) << ' ' << fmt(p[1]) << ' ' << fmt(p[2]);
      if (colored) {
        const auto& c = mesh.colors[v];
        out << ' ' << fmt_unit(c[0]) << ' ' << fmt_unit(c[1]) << ' ' << fmt_unit(c[2]);
      }
      out << '\n';
    }
    for (const auto& t : mesh.triangles) {
      out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    }
  } else {
    out << "ply\nformat ascii 1.0\ncomment shadow4d mesh\nelement vertex " << mesh.vertices.size()
        << "\nproperty double x\nproperty double y\nproperty double z\n";
    if (colored) out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    out << "element face " << mesh.triangles.size()
        << "\nproperty list uchar int vertex_indices\nend_header\n";
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
      const auto& p = mesh.vertices[v];
      out << fmt(p[0]) << ' ' << fmt(p[1]) << ' ' << fmt(p[2]);
      if (colored) {
        const auto& c = mesh.colors[v];
        out << ' ' << int{c[0]} << ' ' << int{c[1]} << ' ' << int{c[2]};
      }
      out << '\n';
    }
    for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
  write_atomically(path, out.str());
}

std::vector<ColoredSegment> colored_frame(const std::vector<FrameEdge>& edges) {
  std::vector<ColoredSegment> out;
  for (const auto& e : edges) {
    switch (e.axis) {
      case Axis::X:
        out.push_back({e.from, e.to, {0, 200, 0}, "axis_x"});
        break;
      case Axis::Y:
        out.push_back({e.from, e.to, {0, 160, 230}, "axis_y"});
        break;
      case Axis::Z:
        out.push_back({e.from, e.to, {140, 60, 200}, "axis_z"});
        break;
      case Axis::W:
        out.push_back({e.from, e.to, {220, 30, 30}, "axis_w"});
        break;
    }
  }
  return out;
}

void export_frame(const std::vector<ColoredSegment>& segments, const std::filesystem::path& path) {
  std::vector<std::array<double, 3>> vertices;
  std::map<std::array<double, 3>, std::size_t> index_of;
  auto vertex = [&](const std::array<double, 3>& p) {
    auto [it, inserted] = index_of.try_emplace(p, vertices.size());
    if (inserted) vertices.push_back(p);
    return it->second + 1;
  };
  std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> groups;
  std::map<std::string, Rgb> group_color;
  std::vector<std::string> group_order;
  for (const auto& s : segments) {
    auto a = vertex(s.from), b = vertex(s.to);
    if (!groups.count(s.group)) group_order.push_back(s.group);
    groups[s.group].emplace_back(a, b);
    group_color[s.group] = s.color;
  }
  std::ostringstream out;
  out << "# shadow4d frame\n# vertices " << vertices.size() << " segments " << segments.size() << "\n";
  for (const auto& p : vertices) out << "v " << fmt(p[0]) << ' ' << fmt(p[1]) << ' ' << fmt(p[2]) << '\n';
  for (const auto& g : group_order) {
    const auto& c = group_color[g];
    out << "g " << g << "\n# color " << fmt_unit(c[0]) << ' ' << fmt_unit(c[1]) << ' ' << fmt_unit(c[2]) << '\n';
    for (const auto& [a, b] : groups[g]) out << "l " << a << ' ' << b << '\n';
  }
  write_atomically(path, out.str());
}

}  // namespace shadow4d
