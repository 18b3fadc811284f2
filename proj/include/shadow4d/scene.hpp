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


// Geometric constructions over implicit hypersurfaces: first polars,
// terminators, tangent cones, and images under the 4-D perspective with
// center (0, 0, d, 0) onto the space spanned by the remaining axes.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shadow4d/elim.hpp"
#include "shadow4d/poly.hpp"

namespace shadow4d {

/// Zero set of a nonconstant polynomial.
struct Hypersurface {
  std::string name;
  Polynomial poly;

  Hypersurface() = default;
  /// Throws DomainError for a constant polynomial.
  Hypersurface(std::string name, Polynomial poly);
};

/// Point light in homogeneous coordinates (x_1..x_n, x_0).
class LightSource {
 public:
  LightSource() = default;
  /// Throws DomainError when every coordinate is zero.
  explicit LightSource(std::vector<Rational> homogeneous);
  static LightSource affine(const Point& p);

  std::size_t dimension() const { return coords_.size() - 1; }
  const std::vector<Rational>& homogeneous() const { return coords_; }
  bool is_affine() const { return coords_.back() != 0; }
  /// Throws ImproperPointError for a light at infinity.
  Point affine_point() const;

 private:
  std::vector<Rational> coords_;
};

/// Center (0, 0, d, 0) in the variable named "z"; image space is every other axis.
struct PerspectiveCamera {
  Rational d;

  /// Throws DomainError for d = 0.
  explicit PerspectiveCamera(Rational distance);
  /// The center as a light-like homogeneous point of `space`.
  LightSource center(const VariableSpace& space) const;
};

inline constexpr std::string_view kDepthVariable = "z";

struct SceneDescription {
  VariableSpace space;
  std::vector<Hypersurface> factors;
  std::vector<Hypersurface> receivers;
  std::vector<LightSource> lights;
  std::optional<PerspectiveCamera> camera;

  /// Throws StructuralError for an empty factor list or mixed spaces.
  void validate() const;
};

/// Solver settings shared by every elimination a construction performs.
struct SolveOptions {
  Backend backend = Backend::Auto;
  Budget budget;
};

/// Dehomogenized first polar of `s` with respect to `p`, normalized
/// primitive. Throws DegeneratePolarError if it vanishes identically.
Hypersurface first_polar(const Hypersurface& s, const LightSource& p);

struct TerminatorSystem {
  PolySystem system;  // {sigma, sigma_L}
  unsigned bezout_bound = 0;
};

TerminatorSystem terminator_system(const Hypersurface& s, const LightSource& l);
/// n(n-1) for the product of all factors, n = sum of factor degrees.
unsigned scene_terminator_bound(const SceneDescription& scene);

/// The eliminant lives in the ambient space of `s`.
/// Throws TangencyDegeneracyError when the light lies on `s`.
EliminationResult tangent_cone(const Hypersurface& s, const LightSource& l,
                               const SolveOptions& opts = {});

/// {theta_caster, sigma_receiver}.
PolySystem shadow_boundary_system(const Polynomial& caster_cone, const Hypersurface& receiver);

/// Image space of a camera over `space`: every variable except the depth axis.
VariableSpace image_space(const VariableSpace& space);

/// Throws ImproperPointError when p_z = d.
Point perspective_point(const Point& p, const VariableSpace& space, const PerspectiveCamera& cam);
std::vector<double> perspective_point(std::span<const double> p, const VariableSpace& space,
                                      const PerspectiveCamera& cam);

/// Eliminates the preimage point Q from {a(Q), b(Q), projection equations}.
/// Both polynomials live in the ambient space; the eliminant lives in image_space.
EliminationResult perspective_eliminant(const Polynomial& a, const Polynomial& b,
                                        const PerspectiveCamera& cam, const SolveOptions& opts = {});

/// Occluding contour: the image of the contour generator {sigma, sigma_C}.
EliminationResult perspective_image(const Hypersurface& s, const PerspectiveCamera& cam,
                                    const SolveOptions& opts = {});
EliminationResult perspective_terminator(const Hypersurface& s, const LightSource& l,
                                         const PerspectiveCamera& cam, const SolveOptions& opts = {});
/// Image of {receiver = 0, caster_cone = 0}; pass the caster itself as
/// receiver for its self-shadow boundary.
EliminationResult perspective_shadow(const Polynomial& caster_cone, const Hypersurface& receiver,
                                     const PerspectiveCamera& cam, const SolveOptions& opts = {});

enum class Axis { X, Y, Z, W };

struct FrameEdge {
  std::array<double, 3> from;
  std::array<double, 3> to;
  Axis axis;
};

/// The 32 edges of the hypercube [-1, 1]^4 under the perspective of `cam`.
/// Throws ImproperPointError if a vertex lies on z = d.
std::vector<FrameEdge> hypercube_frame(const PerspectiveCamera& cam);

}  // namespace shadow4d
