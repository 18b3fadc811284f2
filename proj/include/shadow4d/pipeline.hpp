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


// Named elimination objects of a scene (occluding contours, terminator
// images, tangent cones, projected shadows) and the benchmark table over them.

#pragma once

#include <future>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "shadow4d/elim.hpp"
#include "shadow4d/scene_file.hpp"

namespace shadow4d {

enum class ObjectKind { OccludingContour, Terminator, TangentCone, Shadow };

struct PipelineObject {
  ObjectKind kind;
  std::string label;
  std::string surface;
  std::string target;  // shadows only
  std::size_t light = 0;
};

/// Evaluates pipeline objects of one scene. Tangent cones feeding shadow
/// objects are computed once with the default backend and shared; run() is
/// safe to call concurrently.
class Pipeline {
 public:
  Pipeline(const SceneFile& scene, Budget cone_budget = {});

  /// Cones for every factor and light; with a camera also occluding
  /// contours and terminator images of every surface and the listed shadows.
  std::vector<PipelineObject> objects() const;
  std::vector<PipelineObject> objects(ObjectKind kind) const;

  EliminationResult run(const PipelineObject& object, const SolveOptions& opts);
  /// Cached tangent cone of a surface.
  const EliminationResult& cone(const std::string& surface, std::size_t light);

  const SceneFile& scene() const { return *scene_; }

 private:
  const SceneFile* scene_;
  Budget cone_budget_;
  std::mutex mu_;
  std::map<std::pair<std::string, std::size_t>, std::shared_future<EliminationResult>> cones_;
};

struct BenchCell {
  enum class Status { Ok, Timeout, Failed };
  Status status = Status::Failed;
  double seconds = 0.0;
  std::string message;
  EliminationStats stats;
};

struct BenchRow {
  PipelineObject object;
  std::vector<BenchCell> cells;  // one per backend
  /// From the first backend that succeeded; zero when all failed.
  unsigned degree = 0;
  std::size_t terms = 0;
};

struct BenchTable {
  std::string scene;
  std::vector<Backend> backends;
  std::vector<BenchRow> rows;
};

BenchTable run_bench(Pipeline& pipeline, const std::vector<PipelineObject>& objects,
                     const std::vector<Backend>& backends, const Budget& budget, unsigned workers = 1);

/// Aligned plain text; budget-exceeded cells print T and failures F.
std::string format_bench_text(const BenchTable& table);
/// One record per row: object,deg,terms,<backend>... with the same cell notation.
std::string format_bench_csv(const BenchTable& table);

}  // namespace shadow4d
