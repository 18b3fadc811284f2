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


// Exact pointwise illumination: which side of the first polar a point lies
// on, and whether the open segment to the light crosses any factor.

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "shadow4d/scene.hpp"

namespace shadow4d {

enum class PolarSide { Same, Opposite, On };

enum class Illumination : std::uint8_t {
  Illuminated,
  PolarExcluded,
  Occluded,
  ReceiverShadow,
  ReceiverLit,
};

std::string_view to_string(Illumination c);

/// Sign of sigma_L(x) relative to sigma_L(L). Throws DegeneratePolarError
/// when sigma_L(L) = 0.
PolarSide polar_side(const Hypersurface& s, const LightSource& l, const Point& x);

/// Univariate polynomial, coefficient k belongs to t^k.
using UPoly = std::vector<Rational>;

/// Distinct real roots in (a, b]. Requires p != 0 and a < b.
std::size_t sturm_count(const UPoly& p, const Rational& a, const Rational& b);
/// Same for a polynomial that involves at most one variable.
std::size_t sturm_count(const Polynomial& p, const Rational& a, const Rational& b);

/// p restricted to the line origin + t * direction.
UPoly restrict_to_line(const Polynomial& p, const Point& origin, const Point& direction);

/// Endpoint exclusion in the segment parameter for inexact samples.
inline constexpr double kSegmentEpsilon = 1e-6;
/// Maximum |sigma| / |grad sigma| for a float sample to count as on-surface.
inline constexpr double kOnSurfaceTolerance = 1e-7;

struct SurfaceRef {
  enum class Role { Factor, Receiver };
  Role role = Role::Factor;
  std::size_t index = 0;
};

struct Sample {
  Point point;
  SurfaceRef surface;
};

struct ClassifiedSample {
  Point point;
  SurfaceRef surface;
  Illumination cls = Illumination::Illuminated;
};

/// Per-light precomputation for classifying many samples of one scene.
/// Immutable after construction; classify is safe to call concurrently.
class Classifier {
 public:
  Classifier(const SceneDescription& scene, std::size_t light_index);

  /// True if the open segment from x to the light meets a factor. `own` is
  /// the factor x lies on, if any; its root at x is excluded.
  bool segment_occluded(const Point& x, std::optional<std::size_t> own) const;
  PolarSide polar_side(std::size_t factor, const Point& x) const;
  ClassifiedSample classify(const Sample& s) const;

 private:
  struct FactorData {
    Polynomial sigma;
    Polynomial polar;
    int light_side = 0;
  };
  const SceneDescription* scene_;
  Point light_;
  std::vector<FactorData> factors_;
};

/// Convenience wrappers that build a Classifier for a single query.
bool segment_occlusion(const SceneDescription& scene, const Point& x, std::size_t factor,
                       std::size_t light_index = 0);
ClassifiedSample classify_sample(const SceneDescription& scene, const Sample& sample,
                                 std::size_t light_index = 0);

}  // namespace shadow4d
