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


#include "shadow4d/scene.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "shadow4d/error.hpp"

namespace shadow4d {

Hypersurface::Hypersurface(std::string n, Polynomial p) : name(std::move(n)), poly(std::move(p)) {
  if (poly.is_constant()) throw DomainError("hypersurface '" + name + "' has a constant polynomial");
}

LightSource::LightSource(std::vector<Rational> homogeneous) : coords_(std::move(homogeneous)) {
  if (coords_.size() < 2) throw DomainError("light needs at least one affine coordinate");
  if (std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; })) {
    throw DomainError("light has all-zero homogeneous coordinates");
  }
}

LightSource LightSource::affine(const Point& p) {
  std::vector<Rational> h(p);
  h.emplace_back(1);
  return LightSource(std::move(h));
}

Point LightSource::affine_point() const {
  if (!is_affine()) throw ImproperPointError("light source is at infinity");
  Point p(coords_.begin(), coords_.end() - 1);
  for (auto& c : p) c /= coords_.back();
  return p;
}

PerspectiveCamera::PerspectiveCamera(Rational distance) : d(std::move(distance)) {
  if (d == 0) throw DomainError("camera distance must be nonzero");
}

LightSource PerspectiveCamera::center(const VariableSpace& space) const {
  Point c(space.dimension(), Rational(0));
  c[space.require(kDepthVariable)] = d;
  return LightSource::affine(c);
}

void SceneDescription::validate() const {
  if (factors.empty()) throw StructuralError("scene has no factor surfaces");
  auto check = [&](const Hypersurface& s) {
    if (!(s.poly.space() == space)) {
      throw StructuralError("surface '" + s.name + "' is not over the scene variables");
    }
  };
  std::for_each(factors.begin(), factors.end(), check);
  std::for_each(receivers.begin(), receivers.end(), check);
  for (const auto& l : lights) {
    if (l.dimension() != space.dimension()) throw StructuralError("light dimension mismatch");
  }
  if (camera) space.require(kDepthVariable);
}

namespace {

std::string fresh_name(const VariableSpace& space, std::string name) {
  while (space.contains(name)) name += "_";
  return name;
}

}  // namespace

Hypersurface first_polar(const Hypersurface& s, const LightSource& p) {
  const VariableSpace& space = s.poly.space();
  if (p.dimension() != space.dimension()) throw StructuralError("polar point dimension mismatch");
  const std::string h = fresh_name(space, "_x0");
  Polynomial hom = homogenize(s.poly, h);
  const VariableSpace& hs = hom.space();
  Polynomial polar(hs);
  const auto& coords = p.homogeneous();
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    if (coords[i] != 0) polar += partial(hom, i) * coords[i];
  }
  if (coords.back() != 0) polar += partial(hom, hs.require(h)) * coords.back();
  polar = dehomogenize(polar, h);
  if (polar.is_zero() || polar.is_constant()) {
    throw DegeneratePolarError("first polar of '" + s.name + "' is degenerate");
  }
  return Hypersurface(s.name + "_polar", normalize_primitive(polar));
}

TerminatorSystem terminator_system(const Hypersurface& s, const LightSource& l) {
  Hypersurface polar = first_polar(s, l);
  const unsigned n = degree(s.poly);
  return {PolySystem{{s.poly, polar.poly}}, n * (n - 1)};
}

unsigned scene_terminator_bound(const SceneDescription& scene) {
  unsigned n = 0;
  for (const auto& f : scene.factors) n += degree(f.poly);
  return n * (n - 1);
}

EliminationResult tangent_cone(const Hypersurface& s, const LightSource& l, const SolveOptions& opts) {
  const VariableSpace& space = s.poly.space();
  const Point apex = l.affine_point();
  if (evaluate(s.poly, apex) == 0) {
    throw TangencyDegeneracyError("light lies on '" + s.name + "'");
  }
  Hypersurface polar = first_polar(s, l);

  std::vector<std::string> extra;
  std::map<std::string, Polynomial> to_q;
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    extra.push_back(fresh_name(space, "q_" + space.name(i)));
  }
  const std::string a = fresh_name(space, "a");
  extra.push_back(a);
  VariableSpace big = space.extended(extra);
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    to_q.emplace(space.name(i), Polynomial::variable(big, extra[i]));
  }

  PolySystem sys;
  sys.polys.push_back(substitute(embed(s.poly, big), to_q));
  sys.polys.push_back(substitute(embed(polar.poly, big), to_q));
  const Polynomial av = Polynomial::variable(big, a);
  const Polynomial one = Polynomial::constant(big, 1);
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    sys.polys.push_back(av * apex[i] + (one - av) * Polynomial::variable(big, extra[i]) -
                        Polynomial::variable(big, i));
  }
  EliminationTask task{std::move(sys), extra, opts.backend, opts.budget};
  return eliminate(task);
}

PolySystem shadow_boundary_system(const Polynomial& caster_cone, const Hypersurface& receiver) {
  if (!(caster_cone.space() == receiver.poly.space())) {
    throw StructuralError("cone and receiver live in different spaces");
  }
  return PolySystem{{caster_cone, receiver.poly}};
}

VariableSpace image_space(const VariableSpace& space) {
  space.require(kDepthVariable);
  return space.without(kDepthVariable);
}

Point perspective_point(const Point& p, const VariableSpace& space, const PerspectiveCamera& cam) {
  if (p.size() != space.dimension()) throw StructuralError("point dimension mismatch");
  const std::size_t zi = space.require(kDepthVariable);
  const Rational denom = cam.d - p[zi];
  if (denom == 0) throw ImproperPointError("the image of a point with z = d is improper");
  const Rational scale = cam.d / denom;
  Point out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i != zi) out.push_back(p[i] * scale);
  }
  return out;
}

std::vector<double> perspective_point(std::span<const double> p, const VariableSpace& space,
                                      const PerspectiveCamera& cam) {
  if (p.size() != space.dimension()) throw StructuralError("point dimension mismatch");
  const std::size_t zi = space.require(kDepthVariable);
  const double d = cam.d.get_d();
  const double denom = d - p[zi];
  if (denom == 0.0) throw ImproperPointError("the image of a point with z = d is improper");
  std::vector<double> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i != zi) out.push_back(p[i] * d / denom);
  }
  return out;
}

EliminationResult perspective_eliminant(const Polynomial& a, const Polynomial& b,
                                        const PerspectiveCamera& cam, const SolveOptions& opts) {
  if (!(a.space() == b.space())) throw StructuralError("perspective inputs in different spaces");
  const VariableSpace& space = a.space();
  const std::size_t zi = space.require(kDepthVariable);
  VariableSpace img = image_space(space);
  std::vector<std::string> qnames;
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    qnames.push_back(fresh_name(space, "q_" + space.name(i)));
  }
  VariableSpace big = img.extended(qnames);
  // Rename into Q before embedding so the depth variable never needs a slot in `big`.
  VariableSpace with_q = space.extended(qnames);
  auto lift = [&](const Polynomial& p) {
    std::map<std::string, Polynomial> sub;
    for (std::size_t i = 0; i < space.dimension(); ++i) {
      sub.emplace(space.name(i), Polynomial::variable(with_q, qnames[i]));
    }
    return embed(substitute(embed(p, with_q), sub), big);
  };
  PolySystem sys;
  sys.polys.push_back(lift(a));
  sys.polys.push_back(lift(b));
  const Polynomial qz = Polynomial::variable(big, qnames[zi]);
  const Polynomial dd = Polynomial::constant(big, cam.d);
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    if (i == zi) continue;
    sys.polys.push_back(Polynomial::variable(big, space.name(i)) * (dd - qz) -
                        Polynomial::variable(big, qnames[i]) * cam.d);
  }
  EliminationTask task{std::move(sys), qnames, opts.backend, opts.budget};
  return eliminate(task);
}

EliminationResult perspective_image(const Hypersurface& s, const PerspectiveCamera& cam,
                                    const SolveOptions& opts) {
  Hypersurface polar = first_polar(s, cam.center(s.poly.space()));
  return perspective_eliminant(s.poly, polar.poly, cam, opts);
}

EliminationResult perspective_terminator(const Hypersurface& s, const LightSource& l,
                                         const PerspectiveCamera& cam, const SolveOptions& opts) {
  Hypersurface polar = first_polar(s, l);
  return perspective_eliminant(s.poly, polar.poly, cam, opts);
}

EliminationResult perspective_shadow(const Polynomial& caster_cone, const Hypersurface& receiver,
                                     const PerspectiveCamera& cam, const SolveOptions& opts) {
  return perspective_eliminant(receiver.poly, caster_cone, cam, opts);
}

std::vector<FrameEdge> hypercube_frame(const PerspectiveCamera& cam) {
  const VariableSpace space{"x", "y", "z", "w"};
  auto vertex = [&](unsigned bits) {
    std::array<double, 4> p;
    for (unsigned k = 0; k < 4; ++k) p[k] = (bits >> k) & 1u ? 1.0 : -1.0;
    auto img = perspective_point(std::span<const double>(p), space, cam);
    return std::array<double, 3>{img[0], img[1], img[2]};
  };
  std::vector<FrameEdge> edges;
  for (unsigned v = 0; v < 16; ++v) {
    for (unsigned k = 0; k < 4; ++k) {
      if ((v >> k) & 1u) continue;
      edges.push_back({vertex(v), vertex(v | (1u << k)), static_cast<Axis>(k)});
    }
  }
  return edges;
}

}  // namespace shadow4d
