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


#include "shadow4d/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

#include "shadow4d/error.hpp"

namespace shadow4d {

Pipeline::Pipeline(const SceneFile& scene, Budget cone_budget) : scene_(&scene), cone_budget_(cone_budget) {}

std::vector<PipelineObject> Pipeline::objects() const {
  const auto& sc = scene_->scene;
  const bool multi = sc.lights.size() > 1;
  auto light_suffix = [&](std::size_t l) { return multi ? " [" + scene_->light_names[l] + "]" : std::string(); };
  std::vector<PipelineObject> out;
  // A hyperplane has a constant polar, hence no contour and no terminator.
  std::vector<const Hypersurface*> curved;
  for (const auto* s : scene_->surfaces()) {
    if (degree(s->poly) > 1) curved.push_back(s);
  }
  if (sc.camera) {
    for (const auto* s : curved) {
      out.push_back({ObjectKind::OccludingContour, "occ. cont. " + s->name, s->name, "", 0});
    }
    for (std::size_t l = 0; l < sc.lights.size(); ++l) {
      for (const auto* s : curved) {
        out.push_back({ObjectKind::Terminator, "terminator " + s->name + light_suffix(l), s->name, "", l});
      }
    }
  }
  for (std::size_t l = 0; l < sc.lights.size(); ++l) {
    for (const auto& s : sc.factors) {
      if (degree(s.poly) < 2) continue;
      out.push_back({ObjectKind::TangentCone, "tang. hypcon. " + s.name + light_suffix(l), s.name, "", l});
    }
  }
  if (sc.camera) {
    for (std::size_t l = 0; l < sc.lights.size(); ++l) {
      for (const auto& [c, t] : scene_->shadows) {
        out.push_back({ObjectKind::Shadow, "shadow " + c + "->" + t + light_suffix(l), c, t, l});
      }
    }
  }
  return out;
}

std::vector<PipelineObject> Pipeline::objects(ObjectKind kind) const {
  auto all = objects();
  std::erase_if(all, [&](const PipelineObject& o) { return o.kind != kind; });
  return all;
}

const EliminationResult& Pipeline::cone(const std::string& surface, std::size_t light) {
  std::shared_future<EliminationResult> fut;
  std::promise<EliminationResult> promise;
  bool owner = false;
  {
    std::lock_guard lock(mu_);
    auto key = std::pair{surface, light};
    auto it = cones_.find(key);
    if (it == cones_.end()) {
      fut = promise.get_future().share();
      cones_.emplace(key, fut);
      owner = true;
    } else {
      fut = it->second;
    }
  }
  if (owner) {
    try {
      promise.set_value(tangent_cone(scene_->surface(surface), scene_->scene.lights.at(light),
                                     {Backend::Auto, cone_budget_}));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return fut.get();
}

EliminationResult Pipeline::run(const PipelineObject& o, const SolveOptions& opts) {
  const auto& sc = scene_->scene;
  const Hypersurface& s = scene_->surface(o.surface);
  auto camera = [&]() -> const PerspectiveCamera& {
    if (!sc.camera) throw StructuralError("scene has no camera");
    return *sc.camera;
  };
  switch (o.kind) {
    case ObjectKind::OccludingContour:
      return perspective_image(s, camera(), opts);
    case ObjectKind::Terminator:
      return perspective_terminator(s, sc.lights.at(o.light), camera(), opts);
    case ObjectKind::TangentCone:
      return tangent_cone(s, sc.lights.at(o.light), opts);
    case ObjectKind::Shadow: {
      const EliminationResult& theta = cone(o.surface, o.light);
      if (theta.status != EliminationStatus::Eliminant) {
        throw DegenerateSystemError("tangent cone of '" + o.surface + "' has no relation");
      }
      return perspective_shadow(theta.eliminant, scene_->surface(o.target), camera(), opts);
    }
  }
  throw StructuralError("unknown pipeline object");
}

BenchTable run_bench(Pipeline& pipeline, const std::vector<PipelineObject>& objects,
                     const std::vector<Backend>& backends, const Budget& budget, unsigned workers) {
  BenchTable table;
  table.scene = pipeline.scene().name;
  table.backends = backends;
  table.rows.resize(objects.size());
  for (std::size_t r = 0; r < objects.size(); ++r) {
    table.rows[r].object = objects[r];
    table.rows[r].cells.resize(backends.size());
  }
  // Shadow rows time only their own elimination; cones are prepared up front.
  for (const auto& o : objects) {
    if (o.kind != ObjectKind::Shadow) continue;
    try {
      pipeline.cone(o.surface, o.light);
    } catch (const Error&) {
      // Reported as failures by the shadow cells below.
    }
  }
  const std::size_t jobs = objects.size() * backends.size();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job; (job = next++) < jobs;) {
      const std::size_t r = job / backends.size(), b = job % backends.size();
      BenchCell& cell = table.rows[r].cells[b];
      const auto start = std::chrono::steady_clock::now();
      try {
        EliminationResult res = pipeline.run(objects[r], {backends[b], budget});
        cell.status = BenchCell::Status::Ok;
        cell.stats = res.stats;
      } catch (const BudgetExceeded& e) {
        cell.status = BenchCell::Status::Timeout;
        cell.stats = e.partial();
        cell.message = e.what();
      } catch (const std::exception& e) {
        cell.status = BenchCell::Status::Failed;
        cell.message = e.what();
      }
      cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  std::vector<std::thread> threads;
  for (unsigned w = 1; w < std::max(1u, workers); ++w) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  for (auto& row : table.rows) {
    for (const auto& cell : row.cells) {
      if (cell.status == BenchCell::Status::Ok) {
        row.degree = cell.stats.eliminant_degree;
        row.terms = cell.stats.eliminant_terms;
        break;
      }
    }
  }
  return table;
}

namespace {

std::string cell_text(const BenchCell& c) {
  switch (c.status) {
    case BenchCell::Status::Timeout:
      return "T";
    case BenchCell::Status::Failed:
      return "F";
    case BenchCell::Status::Ok:
      break;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", c.seconds);
  return buf;
}

std::string backend_header(Backend b) { return b == Backend::Auto ? "auto" : std::string(to_string(b)); }

}  // namespace

std::string format_bench_text(const BenchTable& table) {
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header{"object", "deg", "terms"};
  for (auto b : table.backends) header.push_back(backend_header(b));
  grid.push_back(header);
  for (const auto& row : table.rows) {
    std::vector<std::string> line{row.object.label, row.degree ? std::to_string(row.degree) : "-",
                                  row.terms ? std::to_string(row.terms) : "-"};
    for (const auto& c : row.cells) line.push_back(cell_text(c));
    grid.push_back(line);
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : grid) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::ostringstream out;
  out << "scene: " << table.scene << '\n';
  for (std::size_t r = 0; r < grid.size(); ++r) {
    for (std::size_t i = 0; i < grid[r].size(); ++i) {
      const auto& s = grid[r][i];
      if (i == 0) {
        out << s << std::string(width[i] - s.size(), ' ');
      } else {
        out << " | " << std::string(width[i] - s.size(), ' ') << s;
      }
    }
    out << '\n';
    if (r == 0) {
      std::size_t total = width[0];
      for (std::size_t i = 1; i < width.size(); ++i) total += 3 + width[i];
      out << std::string(total, '-') << '\n';
    }
  }
  out << "T: budget exceeded, F: failed\n";
  return out.str();
}

std::string format_bench_csv(const BenchTable& table) {
  std::ostringstream out;
  out << "object,deg,terms";
  for (auto b : table.backends) out << ',' << backend_header(b);
  out << '\n';
  for (const auto& row : table.rows) {
    out << '"' << row.object.label << "\"," << row.degree << ',' << row.terms;
    for (const auto& c : row.cells) {
      out << ',';
      if (c.status == BenchCell::Status::Ok) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", c.seconds);
        out << buf;
      } else {
        out << cell_text(c);
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace shadow4d
