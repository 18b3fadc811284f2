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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "shadow4d/expr.hpp"
#include "shadow4d/pipeline.hpp"
#include "shadow4d/scene_file.hpp"
#include "test_support.hpp"

namespace {

using namespace shadow4d;
namespace fs = std::filesystem;

struct CliResult {
  int status;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SHADOW4D_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    out_ = fs::temp_directory_path() /
           ("shadow4d_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(out_);
  }
  void TearDown() override { fs::remove_all(out_); }
  std::string scene(const char* f) const { return "--scene " + testsupport::scene_path(f).string(); }
  std::string out() const { return "--out " + out_.string(); }
  fs::path out_;
};

TEST_F(Cli, PolarMatchesTable) {
  const CliResult r = run_cli("polar " + scene("bakery.json") + " " + out());
  ASSERT_EQ(r.status, 0) << r.output;
  const auto lines = lines_of(out_ / "bakery_polar.txt");
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "S1_L: 2*x - 2*y - 5*z + 19 = 0");
  EXPECT_EQ(lines[2], "S3_L: 16*x + y - 48*z - 131 = 0");
  EXPECT_EQ(lines[3], "P_L: 24*x + 4*y - 25*z - 708 = 0");
}

TEST_F(Cli, TerminatorPrintsSystems) {
  const CliResult r = run_cli("terminator " + scene("bakery.json") + " " + out());
  ASSERT_EQ(r.status, 0) << r.output;
  const auto lines = lines_of(out_ / "bakery_terminator.txt");
  int systems = 0;
  for (const auto& l : lines) {
    if (l.rfind("#", 0) == 0) continue;
    EXPECT_NE(l.find(" && "), std::string::npos) << l;
    ++systems;
  }
  EXPECT_EQ(systems, 4);
  EXPECT_EQ(lines.back(), "# scene bound 56");
}

TEST_F(Cli, ProjectHyperRingContour) {
  const CliResult r = run_cli("project " + scene("hyperring.json") + " " + out() + " --workers 2");
  ASSERT_EQ(r.status, 0) << r.output;
  const SceneFile sf = load_scene(testsupport::scene_path("hyperring.json"));
  const VariableSpace img = image_space(sf.scene.space);
  bool found = false;
  for (const auto& line : lines_of(out_ / "hyperring_project.txt")) {
    std::smatch m;
    if (!std::regex_match(line, m, std::regex(R"((\S+): (.*) = 0)"))) continue;
    const Polynomial p = parse_expression(m[2].str(), img);
    if (degree(p) == 8 && term_count(p) == 72) found = true;
  }
  EXPECT_TRUE(found);
}

TEST_F(Cli, FrameHasSixteenVertices) {
  const CliResult r = run_cli("frame " + out());
  ASSERT_EQ(r.status, 0) << r.output;
  const auto m = testsupport::read_obj(out_ / "hypercube.obj");
  EXPECT_EQ(m.vertices.size(), 16u);
}

TEST_F(Cli, MeshWritesColoredFiles) {
  const CliResult r = run_cli("mesh " + scene("bakery.json") + " " + out() + " --grid-res 24 --format ply --workers 2");
  ASSERT_EQ(r.status, 0) << r.output;
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(out_)) files += e.path().extension() == ".ply";
  EXPECT_EQ(files, 4u);
}

TEST_F(Cli, ErrorsExitNonzero) {
  CliResult r = run_cli("polar --scene " + (out_ / "missing.json").string());
  EXPECT_NE(r.status, 0);
  fs::create_directories(out_);
  std::ofstream(out_ / "bad.json") << R"({"variables": ["x"], "surfaces": [{"name": "A", "expr": "x + q"}]})";
  r = run_cli("polar --scene " + (out_ / "bad.json").string() + " " + out());
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.output.find("error:"), std::string::npos) << r.output;
  r = run_cli("cone " + scene("bakery.json") + " --backend nonsense");
  EXPECT_NE(r.status, 0);
}

TEST(Bench, RowsAndCellsFollowTheTableLayout) {
  const SceneFile sf = load_scene(testsupport::scene_path("hyperquadrics.json"));
  Pipeline pipe(sf);
  const auto objects = pipe.objects();
  // Contours and terminator images of S and P, the cone of S, one shadow.
  EXPECT_EQ(objects.size(), 6u);
  const std::vector<Backend> backends{Backend::Auto, Backend::Groebner};
  const BenchTable a = run_bench(pipe, objects, backends, Budget::seconds(60), 2);
  const BenchTable b = run_bench(pipe, objects, backends, Budget::seconds(60), 1);
  ASSERT_EQ(a.rows.size(), objects.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].object.label, b.rows[i].object.label);
    EXPECT_EQ(a.rows[i].degree, b.rows[i].degree);
    EXPECT_EQ(a.rows[i].terms, b.rows[i].terms);
    ASSERT_EQ(a.rows[i].cells.size(), 2u);
    for (const auto& c : a.rows[i].cells) EXPECT_EQ(c.status, BenchCell::Status::Ok) << c.message;
  }
  // Only the timing cells may differ between runs.
  auto mask = [](std::string s) { return std::regex_replace(s, std::regex(R"(\d+\.\d+s?)"), "#"); };
  EXPECT_EQ(mask(format_bench_text(a)), mask(format_bench_text(b)));
  EXPECT_EQ(mask(format_bench_csv(a)), mask(format_bench_csv(b)));
  const std::string csv = format_bench_csv(a);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "object,deg,terms,auto,groebner");
}

TEST(Bench, BudgetAndFailureCells) {
  const SceneFile sf = load_scene(testsupport::scene_path("hyperring.json"));
  Pipeline pipe(sf);
  const auto contours = pipe.objects(ObjectKind::OccludingContour);
  ASSERT_EQ(contours.size(), 1u);
  Budget tiny;
  tiny.step_limit = 3;
  const BenchTable t = run_bench(pipe, contours, {Backend::Groebner}, tiny);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].cells[0].status, BenchCell::Status::Timeout);
  EXPECT_EQ(t.rows[0].degree, 0u);

  BenchTable f = t;
  f.rows[0].cells[0].status = BenchCell::Status::Failed;
  const std::string text_t = format_bench_text(t), text_f = format_bench_text(f);
  EXPECT_TRUE(std::regex_search(text_t, std::regex(R"(\|\s+T\n)"))) << text_t;
  EXPECT_TRUE(std::regex_search(text_f, std::regex(R"(\|\s+F\n)"))) << text_f;
}

}  // namespace
