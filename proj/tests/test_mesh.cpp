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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "shadow4d/error.hpp"
#include "shadow4d/mesh.hpp"
#include "shadow4d/scene_file.hpp"
#include "test_support.hpp"

namespace {

using namespace shadow4d;
using testsupport::P;

const VariableSpace kXyz{"x", "y", "z"};

GridSpec box(double lo, double hi, int res) {
  GridSpec g;
  g.min = {lo, lo, lo};
  g.max = {hi, hi, hi};
  g.resolution = res;
  return g;
}

bool watertight(const ColoredMesh& m) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> edges;
  for (const auto& t : m.triangles) {
    for (int k = 0; k < 3; ++k) {
      auto a = t[k], b = t[(k + 1) % 3];
      ++edges[{std::min(a, b), std::max(a, b)}];
    }
  }
  return !edges.empty() && std::all_of(edges.begin(), edges.end(), [](const auto& e) { return e.second == 2; });
}

double max_residual(const Polynomial& p, const ColoredMesh& m) {
  const auto g = gradient(p);
  double worst = 0;
  for (const auto& v : m.vertices) {
    const std::span<const double> x(v.data(), 3);
    double n2 = 0;
    for (const auto& gi : g) n2 += std::pow(evaluate(gi, x), 2);
    worst = std::max(worst, std::abs(evaluate(p, x)) / (1 + std::sqrt(n2)));
  }
  return worst;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class MeshFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("shadow4d_mesh_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST(MarchingCubes, SphereResidualBound) {
  const Polynomial p = P("x^2 + y^2 + z^2 - 1", kXyz);
  const ColoredMesh m = marching_cubes(p, box(-2, 2, 64));
  ASSERT_FALSE(m.vertices.empty());
  EXPECT_TRUE(watertight(m));
  const double grad_max = 2 * std::sqrt(12.0);  // |grad p| at a box corner
  for (const auto& v : m.vertices) {
    EXPECT_LT(std::abs(evaluate(p, std::span<const double>(v.data(), 3))), 0.05 * grad_max);
  }
}

TEST(MarchingCubes, PlaneIsExact) {
  const ColoredMesh m = marching_cubes(P("z", kXyz), box(-1, 1, 8));
  ASSERT_FALSE(m.triangles.empty());
  for (const auto& v : m.vertices) EXPECT_EQ(v[2], 0.0);
  EXPECT_EQ(m.triangles.size(), 2u * 7 * 7);
}

TEST(MarchingCubes, ConstantGivesEmptyMeshWithWarning) {
  const ColoredMesh m = marching_cubes(Polynomial::constant(kXyz, 1), box(-1, 1, 8));
  EXPECT_TRUE(m.vertices.empty());
  EXPECT_TRUE(m.triangles.empty());
  EXPECT_FALSE(m.warnings.empty());
}

TEST(MarchingCubes, SurfaceOutsideBoxWarns) {
  const ColoredMesh m = marching_cubes(P("x^2 + y^2 + z^2 - 1", kXyz), box(3, 4, 8));
  EXPECT_TRUE(m.triangles.empty());
  EXPECT_FALSE(m.warnings.empty());
}

TEST(MarchingCubes, GridValidation) {
  const Polynomial p = P("x", kXyz);
  EXPECT_THROW(marching_cubes(p, box(1, 1, 8)), DomainError);
  EXPECT_THROW(marching_cubes(p, box(-1, 1, 1)), DomainError);
  EXPECT_THROW(marching_cubes(p, box(-1, 1, 1000)), DomainError);
  EXPECT_THROW(marching_cubes(P("x", VariableSpace{"x", "y"}), box(-1, 1, 8)), StructuralError);
}

TEST(MarchingCubes, ClosedFixturesAreWatertight) {
  const SceneFile sf = load_scene(testsupport::scene_path("bakery.json"));
  GridSpec g;
  g.min = {-3, -7, -5};
  g.max = {5, 5, 8};
  g.resolution = 72;
  for (const char* name : {"S1", "S2", "S3"}) {
    const ColoredMesh m = marching_cubes(sf.surface(name).poly, g);
    EXPECT_TRUE(watertight(m)) << name;
    EXPECT_TRUE(m.warnings.empty()) << name;
  }
}

TEST(MarchingCubes, TriangleIndicesInRangeAndNondegenerate) {
  const Polynomial p = P("(x^2 + y^2 + z^2 + 3)^2 - 16*(x^2 + y^2)", kXyz);
  const ColoredMesh m = marching_cubes(p, box(-3.5, 3.5, 48));
  for (const auto& t : m.triangles) {
    for (auto i : t) ASSERT_LT(i, m.vertices.size());
    const auto& a = m.vertices[t[0]];
    const auto& b = m.vertices[t[1]];
    const auto& c = m.vertices[t[2]];
    const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    const double v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
    const double cx = u[1] * v[2] - u[2] * v[1], cy = u[2] * v[0] - u[0] * v[2], cz = u[0] * v[1] - u[1] * v[0];
    EXPECT_GT(0.5 * std::sqrt(cx * cx + cy * cy + cz * cz), 1e-12);
  }
}

TEST(MarchingCubes, ResidualShrinksWithResolution) {
  const Polynomial p = P("x^2 + y^2 + z^2 - 1", kXyz);
  double prev = 0;
  for (int res : {16, 32, 64, 128}) {
    const double r = max_residual(p, marching_cubes(p, box(-1.7, 1.9, res)));
    if (prev > 0) EXPECT_LE(r, 1.1 * prev) << res;
    prev = r;
  }
}

TEST(MarchingCubes, DeterministicAcrossWorkers) {
  const Polynomial p = P("(x^2 + y^2 + z^2 + 3)^2 - 16*(x^2 + y^2)", kXyz);
  const ColoredMesh a = marching_cubes(p, box(-3.5, 3.5, 40), 1);
  const ColoredMesh b = marching_cubes(p, box(-3.5, 3.5, 40), 4);
  EXPECT_EQ(a.vertices, b.vertices);
  EXPECT_EQ(a.triangles, b.triangles);
}

TEST(ProjectToSurface, LandsOnSphere) {
  const Polynomial p = P("x^2 + y^2 + z^2 - 1", kXyz);
  const auto x = project_to_surface(p, {0.9, 0.1, 0.2});
  EXPECT_NEAR(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]), 1.0, 1e-12);
}

std::set<Illumination> classes_of(const ColoredMesh& m) { return {m.classes.begin(), m.classes.end()}; }

TEST(ClassifyMesh, BakerySphereSplitsIntoTwoCaps) {
  const SceneFile sf = load_scene(testsupport::scene_path("bakery.json"));
  const Classifier c(sf.scene, 0);
  ColoredMesh m = marching_cubes(sf.surface("S1").poly, box(-5, 9, 48));
  classify_mesh(m, sf.scene, c, {SurfaceRef::Role::Factor, 0}, 4);
  ASSERT_EQ(m.classes.size(), m.vertices.size());
  ASSERT_EQ(m.colors.size(), m.vertices.size());
  EXPECT_EQ(classes_of(m), (std::set<Illumination>{Illumination::Illuminated, Illumination::PolarExcluded}));
  // Vertices clearly away from the polar plane 2x - 2y - 5z + 19 = 0 are
  // lit exactly on the light's side (the light gives -7).
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    const auto& v = m.vertices[i];
    const double side = 2 * v[0] - 2 * v[1] - 5 * v[2] + 19;
    if (std::abs(side) < 0.5) continue;
    EXPECT_EQ(m.classes[i], side < 0 ? Illumination::Illuminated : Illumination::PolarExcluded);
    EXPECT_EQ(m.colors[i], color_of(m.classes[i]));
  }
}

TEST(ClassifyMesh, TorusWithLowLightHasAllThreeClasses) {
  SceneDescription s;
  s.space = kXyz;
  s.factors.emplace_back("T", P("(x^2 + y^2 + z^2 + 3)^2 - 16*(x^2 + y^2)", kXyz));
  s.lights.push_back(LightSource::affine({-10, Rational(1, 2), Rational(3, 2)}));
  const Classifier c(s, 0);
  ColoredMesh m = marching_cubes(s.factors[0].poly, box(-3.5, 3.5, 48));
  classify_mesh(m, s, c, {SurfaceRef::Role::Factor, 0}, 4);
  EXPECT_EQ(classes_of(m), (std::set<Illumination>{Illumination::Illuminated, Illumination::PolarExcluded,
                                                   Illumination::Occluded}));
}

TEST(ClassifyMesh, BakeryTorusUnderSteepLightHasNoSelfShadow) {
  // L(-1, -2, 10) is about 24 degrees off the torus axis: every segment from a
  // front-facing point clears the tube, and S1 and S3 miss the torus.
  const SceneFile sf = load_scene(testsupport::scene_path("bakery.json"));
  const Classifier c(sf.scene, 0);
  GridSpec g;
  g.min = {-2.5, -2.5, 0.5};
  g.max = {4.5, 4.5, 3.5};
  g.resolution = 56;
  ColoredMesh m = marching_cubes(sf.surface("S2").poly, g);
  classify_mesh(m, sf.scene, c, {SurfaceRef::Role::Factor, 1}, 4);
  EXPECT_EQ(classes_of(m), (std::set<Illumination>{Illumination::Illuminated, Illumination::PolarExcluded}));
}

TEST(ClassifyMesh, ParaboloidReceivesTheSceneShadow) {
  const SceneFile sf = load_scene(testsupport::scene_path("bakery.json"));
  const Classifier c(sf.scene, 0);
  GridSpec g = *sf.grid;
  g.resolution = 40;
  ColoredMesh m = marching_cubes(sf.surface("P").poly, g);
  classify_mesh(m, sf.scene, c, {SurfaceRef::Role::Receiver, 0}, 4);
  const auto cls = classes_of(m);
  EXPECT_TRUE(cls.count(Illumination::ReceiverShadow));
  EXPECT_TRUE(cls.count(Illumination::ReceiverLit));
  EXPECT_EQ(cls.size(), 2u);
}

TEST(Colors, DistinctPerClass) {
  const Rgb blue = color_of(Illumination::Illuminated);
  const Rgb green = color_of(Illumination::PolarExcluded);
  const Rgb red = color_of(Illumination::Occluded);
  EXPECT_GT(blue[2], std::max(blue[0], blue[1]));
  EXPECT_GT(green[1], std::max(green[0], green[2]));
  EXPECT_GT(red[0], std::max(red[1], red[2]));
  const Rgb dark = color_of(Illumination::ReceiverShadow), light = color_of(Illumination::ReceiverLit);
  EXPECT_EQ(dark[0], dark[1]);
  EXPECT_EQ(light[0], light[1]);
  EXPECT_LT(dark[0], light[0]);
}

TEST_F(MeshFiles, SingleTriangleObj) {
  ColoredMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.triangles = {{0, 1, 2}};
  export_mesh(m, MeshFormat::Obj, dir_ / "t.obj");
  const std::string text = slurp(dir_ / "t.obj");
  int v = 0, f = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    v += line.rfind("v ", 0) == 0;
    f += line.rfind("f ", 0) == 0;
  }
  EXPECT_EQ(v, 3);
  EXPECT_EQ(f, 1);
  EXPECT_NE(text.find("\nf 1 2 3\n"), std::string::npos);
}

TEST_F(MeshFiles, EmptyMeshHasValidHeaders) {
  const ColoredMesh m;
  export_mesh(m, MeshFormat::Ply, dir_ / "e.ply");
  export_mesh(m, MeshFormat::Obj, dir_ / "e.obj");
  const std::string ply = slurp(dir_ / "e.ply");
  EXPECT_EQ(ply.rfind("ply\nformat ascii 1.0\n", 0), 0u);
  EXPECT_NE(ply.find("element vertex 0\n"), std::string::npos);
  EXPECT_NE(ply.find("element face 0\n"), std::string::npos);
  EXPECT_TRUE(testsupport::read_obj(dir_ / "e.obj").vertices.empty());
}

TEST_F(MeshFiles, SphereRoundTrip) {
  const SceneDescription s = [] {
    SceneDescription d;
    d.space = kXyz;
    d.factors.emplace_back("U", P("x^2 + y^2 + z^2 - 1", kXyz));
    d.lights.push_back(LightSource::affine({0, 0, 2}));
    return d;
  }();
  ColoredMesh m = marching_cubes(s.factors[0].poly, box(-1.5, 1.5, 32));
  classify_mesh(m, s, Classifier(s, 0), {SurfaceRef::Role::Factor, 0});
  export_mesh(m, MeshFormat::Obj, dir_ / "s.obj");
  export_mesh(m, MeshFormat::Ply, dir_ / "s.ply");
  for (const auto& back : {testsupport::read_obj(dir_ / "s.obj"), testsupport::read_ply(dir_ / "s.ply")}) {
    ASSERT_EQ(back.vertices.size(), m.vertices.size());
    ASSERT_EQ(back.faces.size(), m.triangles.size());
    ASSERT_EQ(back.colors.size(), m.vertices.size());
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
      for (int k = 0; k < 3; ++k) EXPECT_NEAR(back.vertices[i][k], m.vertices[i][k], 1e-8);
    }
    for (std::size_t i = 0; i < m.triangles.size(); ++i) {
      for (int k = 0; k < 3; ++k) EXPECT_EQ(back.faces[i][k], m.triangles[i][k]);
    }
  }
}

TEST_F(MeshFiles, ByteDeterministic) {
  const Polynomial p = P("x^2 + 2*y^2 + z^2 - 1", kXyz);
  export_mesh(marching_cubes(p, box(-1.5, 1.5, 24), 1), MeshFormat::Ply, dir_ / "a.ply");
  export_mesh(marching_cubes(p, box(-1.5, 1.5, 24), 3), MeshFormat::Ply, dir_ / "b.ply");
  EXPECT_EQ(slurp(dir_ / "a.ply"), slurp(dir_ / "b.ply"));
}

TEST_F(MeshFiles, UnwritablePathIsIoError) {
  std::ofstream(dir_ / "file") << "x";
  EXPECT_THROW(export_mesh(ColoredMesh{}, MeshFormat::Obj, dir_ / "file" / "m.obj"), IoError);
}

TEST_F(MeshFiles, HypercubeFrame) {
  export_frame(colored_frame(hypercube_frame(PerspectiveCamera(-6))), dir_ / "f.obj");
  const std::string text = slurp(dir_ / "f.obj");
  int v = 0, l = 0, g = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    v += line.rfind("v ", 0) == 0;
    l += line.rfind("l ", 0) == 0;
    g += line.rfind("g ", 0) == 0;
  }
  EXPECT_EQ(v, 16);
  EXPECT_EQ(l, 32);
  EXPECT_EQ(g, 4);
}

TEST_F(MeshFiles, SingleSegmentAndEmptyFrame) {
  export_frame({{{0, 0, 0}, {1, 1, 1}, {0, 255, 0}, "axis_x"}}, dir_ / "one.obj");
  const std::string one = slurp(dir_ / "one.obj");
  EXPECT_NE(one.find("\nl 1 2\n"), std::string::npos);
  EXPECT_EQ(testsupport::read_obj(dir_ / "one.obj").vertices.size(), 2u);
  export_frame({}, dir_ / "none.obj");
  const std::string none = slurp(dir_ / "none.obj");
  EXPECT_EQ(none.find("\nv "), std::string::npos);
  EXPECT_EQ(none.find("\nl "), std::string::npos);
}

TEST(FrameColors, AxisGroups) {
  const auto segs = colored_frame(hypercube_frame(PerspectiveCamera(-6)));
  std::map<std::string, int> groups;
  for (const auto& s : segs) ++groups[s.group];
  EXPECT_EQ(groups, (std::map<std::string, int>{{"axis_w", 8}, {"axis_x", 8}, {"axis_y", 8}, {"axis_z", 8}}));
}

}  // namespace
