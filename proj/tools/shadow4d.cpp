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


// shadow4d command-line front end.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "shadow4d/error.hpp"
#include "shadow4d/mesh.hpp"
#include "shadow4d/pipeline.hpp"
#include "shadow4d/scene_file.hpp"
#include "shadow4d/visibility.hpp"

namespace fs = std::filesystem;
using namespace shadow4d;

namespace {

struct Options {
  std::string scene;
  std::string backend = "auto";
  std::vector<std::string> bench_backends;
  double budget = 300.0;
  std::string out = "out";
  int grid_res = 0;
  unsigned workers = 1;
  std::string format = "obj";
  std::string d = "-6";
};

SolveOptions solve_options(const Options& o) {
  return {parse_backend(o.backend), o.budget > 0 ? Budget::seconds(o.budget) : Budget{}};
}

std::string slug(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += c;
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

fs::path output_file(const Options& o, const std::string& name) {
  fs::create_directories(o.out);
  return fs::path(o.out) / name;
}

void write_text(const fs::path& path, const std::string& body) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << body;
  }
  fs::rename(tmp, path);
}

std::string equation(const std::string& name, const Polynomial& p) {
  return name + ": " + to_string(p) + " = 0\n";
}

std::string system_line(const std::string& name, const PolySystem& sys) {
  std::string line = name + ": ";
  for (std::size_t i = 0; i < sys.polys.size(); ++i) {
    if (i) line += " && ";
    line += to_string(sys.polys[i]) + " = 0";
  }
  return line + "\n";
}

std::string summary(const Polynomial& p) {
  return "degree " + std::to_string(degree(p)) + ", " + std::to_string(term_count(p)) + " terms";
}

// Runs fn(i) for i in [0, n) on up to `workers` threads.
template <class F>
void for_each_parallel(std::size_t n, unsigned workers, F fn) {
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto work = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < std::max(1u, workers); ++w) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string light_label(const SceneFile& sf, std::size_t l) {
  return sf.scene.lights.size() > 1 ? "[" + sf.light_names[l] + "]" : "";
}

int cmd_polar(const Options& o) {
  SceneFile sf = load_scene(o.scene);
  std::string text;
  for (std::size_t l = 0; l < sf.scene.lights.size(); ++l) {
    for (const auto* s : sf.surfaces()) {
      Hypersurface polar = first_polar(*s, sf.scene.lights[l]);
      text += equation(s->name + "_" + sf.light_names[l], polar.poly);
    }
  }
  std::cout << text;
  write_text(output_file(o, sf.name + "_polar.txt"), text);
  return 0;
}

int cmd_terminator(const Options& o) {
  SceneFile sf = load_scene(o.scene);
  std::string text;
  for (std::size_t l = 0; l < sf.scene.lights.size(); ++l) {
    for (const auto* s : sf.surfaces()) {
      TerminatorSystem t = terminator_system(*s, sf.scene.lights[l]);
      text += "# bezout bound " + std::to_string(t.bezout_bound) + "\n";
      text += system_line("c_" + s->name + light_label(sf, l), t.system);
    }
  }
  text += "# scene bound " + std::to_string(scene_terminator_bound(sf.scene)) + "\n";
  std::cout << text;
  write_text(output_file(o, sf.name + "_terminator.txt"), text);
  return 0;
}

// Evaluates pipeline objects concurrently and writes one equation per object.
int run_objects(const Options& o, const SceneFile& sf, const std::vector<PipelineObject>& objects,
                const std::string& file) {
  Pipeline pipeline(sf, o.budget > 0 ? Budget::seconds(o.budget) : Budget{});
  std::vector<EliminationResult> results(objects.size());
  for_each_parallel(objects.size(), o.workers,
                    [&](std::size_t i) { results[i] = pipeline.run(objects[i], solve_options(o)); });
  std::string text;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const auto& r = results[i];
    const std::string name = slug(objects[i].label);
    if (r.status == EliminationStatus::NoRelation) {
      std::cout << objects[i].label << ": no relation\n";
      text += "# " + name + ": no relation\n";
      continue;
    }
    std::cout << objects[i].label << ": " << summary(r.eliminant) << " (" << to_record(r.stats) << ")\n";
    text += equation(name, r.eliminant);
  }
  write_text(output_file(o, sf.name + "_" + file + ".txt"), text);
  return 0;
}

int cmd_cone(const Options& o) {
  SceneFile sf = load_scene(o.scene);
  Pipeline probe(sf);
  return run_objects(o, sf, probe.objects(ObjectKind::TangentCone), "cone");
}

int cmd_project(const Options& o) {
  SceneFile sf = load_scene(o.scene);
  if (!sf.scene.camera) throw StructuralError("scene has no camera");
  Pipeline probe(sf);
  auto objects = probe.objects(ObjectKind::OccludingContour);
  auto terms = probe.objects(ObjectKind::Terminator);
  objects.insert(objects.end(), terms.begin(), terms.end());
  return run_objects(o, sf, objects, "project");
}

int cmd_shadow(const Options& o) {
  SceneFile sf = load_scene(o.scene);
  if (sf.scene.camera) {
    Pipeline probe(sf);
    return run_objects(o, sf, probe.objects(ObjectKind::Shadow), "shadow");
  }
  // Without a camera the boundary is reported as the system {theta, sigma}.
  Pipeline pipeline(sf, o.budget > 0 ? Budget::seconds(o.budget) : Budget{});
  std::vector<std::pair<std::size_t, std::pair<std::string, std::string>>> jobs;
  for (std::size_t l = 0; l < sf.scene.lights.size(); ++l) {
    for (const auto& pair : sf.shadows) jobs.push_back({l, pair});
  }
  for_each_parallel(jobs.size(), o.workers,
                    [&](std::size_t i) { pipeline.cone(jobs[i].second.first, jobs[i].first); });
  std::string text;
  for (const auto& [l, pair] : jobs) {
    const auto& theta = pipeline.cone(pair.first, l);
    PolySystem sys = shadow_boundary_system(theta.eliminant, sf.surface(pair.second));
    std::cout << pair.first << "->" << pair.second << light_label(sf, l) << ": cone "
              << summary(theta.eliminant) << "\n";
    text += system_line("shadow_" + pair.first + "_" + pair.second + light_label(sf, l), sys);
  }
  write_text(output_file(o, sf.name + "_shadow.txt"), text);
  return 0;
}

GridSpec grid_for(const Options& o, const SceneFile& sf) {
  GridSpec g = sf.grid.value_or(GridSpec{});
  if (o.grid_res > 0) {
    g.resolution = o.grid_res;
  } else if (!sf.grid) {
    g.resolution = 96;
  }
  g.validate();
  return g;
}

struct ClassifiedSurface {
  std::string name;
  ColoredMesh mesh;
};

std::vector<ClassifiedSurface> classified_meshes(const Options& o, const SceneFile& sf) {
  if (sf.scene.space.dimension() != 3) {
    throw StructuralError("classification needs a scene in three variables");
  }
  if (sf.scene.lights.empty()) throw StructuralError("scene has no lights");
  const GridSpec grid = grid_for(o, sf);
  Classifier classifier(sf.scene, 0);
  std::vector<ClassifiedSurface> out;
  auto add = [&](const Hypersurface& s, SurfaceRef ref) {
    ColoredMesh mesh = marching_cubes(s.poly, grid, o.workers);
    for (const auto& w : mesh.warnings) std::cerr << "warning: " << s.name << ": " << w << "\n";
    classify_mesh(mesh, sf.scene, classifier, ref, o.workers);
    out.push_back({s.name, std::move(mesh)});
  };
  for (std::size_t i = 0; i < sf.scene.factors.size(); ++i) {
    add(sf.scene.factors[i], {SurfaceRef::Role::Factor, i});
  }
  for (std::size_t i = 0; i < sf.scene.receivers.size(); ++i) {
    add(sf.scene.receivers[i], {SurfaceRef::Role::Receiver, i});
  }
  return out;
}

int cmd_classify(const Options& o) {
  SceneFile sf = load_scene(o.scene);
  std::ostringstream text;
  text.precision(9);
  for (const auto& cs : classified_meshes(o, sf)) {
    std::map<Illumination, std::size_t> counts;
    for (std::size_t v = 0; v < cs.mesh.vertices.size(); ++v) {
      const auto& p = cs.mesh.vertices[v];
      ++counts[cs.mesh.classes[v]];
      text << cs.name << ' ' << p[0] << ' ' << p[1] << ' ' << p[2] << ' ' << to_string(cs.mesh.classes[v]) << '\n';
    }
    std::cout << cs.name << ":";
    for (const auto& [c, n] : counts) std::cout << ' ' << to_string(c) << '=' << n;
    std::cout << "\n";
  }
  write_text(output_file(o, sf.name + "_classify.txt"), text.str());
  return 0;
}

int cmd_mesh(const Options& o) {
  SceneFile sf = load_scene(o.scene);
  const MeshFormat format = o.format == "ply" ? MeshFormat::Ply : MeshFormat::Obj;
  if (o.format != "obj" && o.format != "ply") throw StructuralError("format must be obj or ply");
  const std::string ext = format == MeshFormat::Ply ? ".ply" : ".obj";
  if (sf.scene.space.dimension() == 3) {
    for (const auto& cs : classified_meshes(o, sf)) {
      const auto path = output_file(o, sf.name + "_" + slug(cs.name) + ext);
      export_mesh(cs.mesh, format, path);
      std::cout << path.string() << ": " << cs.mesh.vertices.size() << " vertices, "
                << cs.mesh.triangles.size() << " triangles\n";
    }
    return 0;
  }
  // 4-D scenes: mesh the images in the modeling space, one color per kind.
  if (!sf.scene.camera) throw StructuralError("scene has no camera");
  Pipeline pipeline(sf, o.budget > 0 ? Budget::seconds(o.budget) : Budget{});
  std::vector<PipelineObject> objects;
  for (const auto& obj : pipeline.objects()) {
    if (obj.kind != ObjectKind::TangentCone) objects.push_back(obj);
  }
  std::vector<EliminationResult> results(objects.size());
  for_each_parallel(objects.size(), o.workers,
                    [&](std::size_t i) { results[i] = pipeline.run(objects[i], solve_options(o)); });
  const GridSpec grid = grid_for(o, sf);
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (results[i].status != EliminationStatus::Eliminant) continue;
    ColoredMesh mesh = marching_cubes(results[i].eliminant, grid, o.workers);
    for (const auto& w : mesh.warnings) std::cerr << "warning: " << objects[i].label << ": " << w << "\n";
    Rgb color = objects[i].kind == ObjectKind::OccludingContour ? Rgb{205, 205, 205}
                : objects[i].kind == ObjectKind::Terminator     ? Rgb{40, 90, 230}
                                                                : Rgb{70, 70, 70};
    mesh.colors.assign(mesh.vertices.size(), color);
    const auto path = output_file(o, sf.name + "_" + slug(objects[i].label) + ext);
    export_mesh(mesh, format, path);
    std::cout << path.string() << ": " << mesh.vertices.size() << " vertices, " << mesh.triangles.size()
              << " triangles\n";
  }
  return 0;
}

int cmd_frame(const Options& o) {
  Rational d = parse_rational(o.d);
  std::string name = "hypercube";
  if (!o.scene.empty()) {
    SceneFile sf = load_scene(o.scene);
    if (sf.scene.camera) d = sf.scene.camera->d;
    name = sf.name + "_hypercube";
  }
  const auto edges = hypercube_frame(PerspectiveCamera(d));
  const auto path = output_file(o, name + ".obj");
  export_frame(colored_frame(edges), path);
  std::cout << path.string() << ": " << edges.size() << " edges\n";
  return 0;
}

int cmd_bench(const Options& o) {
  SceneFile sf = load_scene(o.scene);
  const Budget budget = o.budget > 0 ? Budget::seconds(o.budget) : Budget{};
  std::vector<Backend> backends;
  for (const auto& b : o.bench_backends) backends.push_back(parse_backend(b));
  if (backends.empty()) backends = {Backend::Auto, Backend::Groebner, Backend::Dixon};
  Pipeline pipeline(sf, budget);
  BenchTable table = run_bench(pipeline, pipeline.objects(), backends, budget, o.workers);
  const std::string text = format_bench_text(table);
  std::cout << text;
  write_text(output_file(o, sf.name + "_bench.txt"), text);
  write_text(output_file(o, sf.name + "_bench.csv"), format_bench_csv(table));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact shadows, terminators and 4-D perspective images of algebraic hypersurfaces"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool scene_required = true) {
    auto* opt = sub->add_option("--scene", o.scene, "scene file (JSON)");
    if (scene_required) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--workers", o.workers, "concurrent objects / mesh tiles")->capture_default_str();
  };
  auto solver = [&](CLI::App* sub) {
    sub->add_option("--backend", o.backend, "auto | groebner | dixon | sylvester")
        ->check(CLI::IsMember({"auto", "groebner", "dixon", "sylvester"}))
        ->capture_default_str();
    sub->add_option("--budget", o.budget, "seconds per elimination, 0 = unlimited")->capture_default_str();
  };
  auto gridded = [&](CLI::App* sub) {
    sub->add_option("--grid-res", o.grid_res, "samples per axis (default: scene grid, else 96)");
  };

  std::map<CLI::App*, int (*)(const Options&)> handlers;
  auto* polar = app.add_subcommand("polar", "first polars of every surface");
  common(polar);
  handlers[polar] = cmd_polar;
  auto* term = app.add_subcommand("terminator", "terminator systems with Bezout bounds");
  common(term);
  handlers[term] = cmd_terminator;
  auto* cone = app.add_subcommand("cone", "tangent cones of every factor");
  common(cone);
  solver(cone);
  handlers[cone] = cmd_cone;
  auto* project = app.add_subcommand("project", "occluding contours and terminator images");
  common(project);
  solver(project);
  handlers[project] = cmd_project;
  auto* shadow = app.add_subcommand("shadow", "shadow boundary systems or projected shadows");
  common(shadow);
  solver(shadow);
  handlers[shadow] = cmd_shadow;
  auto* classify = app.add_subcommand("classify", "illumination classes of mesh samples");
  common(classify);
  gridded(classify);
  handlers[classify] = cmd_classify;
  auto* mesh = app.add_subcommand("mesh", "colored OBJ/PLY meshes");
  common(mesh);
  solver(mesh);
  gridded(mesh);
  mesh->add_option("--format", o.format, "obj | ply")->check(CLI::IsMember({"obj", "ply"}))->capture_default_str();
  handlers[mesh] = cmd_mesh;
  auto* frame = app.add_subcommand("frame", "reference hypercube in the 4-D perspective");
  common(frame, false);
  frame->add_option("--d", o.d, "camera distance when no scene is given")->capture_default_str();
  handlers[frame] = cmd_frame;
  auto* bench = app.add_subcommand("bench", "timing table over all pipeline objects");
  common(bench);
  bench->add_option("--backend", o.bench_backends, "backends to time (repeatable; default all)")
      ->check(CLI::IsMember({"auto", "groebner", "dixon", "sylvester"}));
  bench->add_option("--budget", o.budget, "seconds per cell, 0 = unlimited")->capture_default_str();
  handlers[bench] = cmd_bench;

  CLI11_PARSE(app, argc, argv);
  try {
    for (auto& [sub, fn] : handlers) {
      if (sub->parsed()) return fn(o);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
