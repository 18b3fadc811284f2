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


#include "shadow4d/visibility.hpp"

#include <cmath>

#include "shadow4d/error.hpp"

namespace shadow4d {

std::string_view to_string(Illumination c) {
  switch (c) {
    case Illumination::Illuminated:
      return "illuminated";
    case Illumination::PolarExcluded:
      return "polar-excluded";
    case Illumination::Occluded:
      return "occluded";
    case Illumination::ReceiverShadow:
      return "receiver-shadow";
    case Illumination::ReceiverLit:
      return "receiver-lit";
  }
  return "?";
}

namespace {

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Rational eval(const UPoly& p, const Rational& t) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim(d);
  return d;
}

// Returns {quotient, remainder} of a / b, b nonzero.
std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  UPoly q(a.size() - b.size() + 1);
  const Rational& lead = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    Rational f = a.back() / lead;
    q[shift] = f;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
    a.pop_back();
    trim(a);
  }
  return {q, a};
}

UPoly upoly_gcd(UPoly a, UPoly b) {
  while (!b.empty()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

int variations(const std::vector<UPoly>& chain, const Rational& t, std::size_t from) {
  int count = 0, last = 0;
  for (std::size_t i = from; i < chain.size(); ++i) {
    int s = sign(eval(chain[i], t));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

Rational norm_squared_gradient(const Polynomial& p, const Point& x) {
  Rational acc = 0;
  for (const auto& g : gradient(p)) {
    Rational v = evaluate(g, x);
    acc += v * v;
  }
  return acc;
}

}  // namespace

std::size_t sturm_count(const UPoly& input, const Rational& a, const Rational& b) {
  UPoly p = input;
  trim(p);
  if (p.empty()) throw DomainError("sturm_count of the zero polynomial");
  if (!(a < b)) throw DomainError("sturm_count needs a < b");
  if (p.size() == 1) return 0;
  UPoly g = upoly_gcd(p, derivative(p));
  UPoly sf = g.size() > 1 ? divmod(p, g).first : p;
  std::vector<UPoly> chain{sf, derivative(sf)};
  while (chain.back().size() > 1) {
    UPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  // At a root of the square-free part, sf and sf' agree in sign just to
  // the right, so the first pair contributes no variation.
  int va = eval(sf, a) == 0 ? variations(chain, a, 1) : variations(chain, a, 0);
  int vb = variations(chain, b, 0);
  return static_cast<std::size_t>(va - vb);
}

std::size_t sturm_count(const Polynomial& p, const Rational& a, const Rational& b) {
  auto used = used_variables(p);
  if (used.size() > 1) throw StructuralError("sturm_count needs a univariate polynomial");
  if (used.empty()) return sturm_count(UPoly{p.constant_term()}, a, b);
  auto coeffs = coefficients_in(p, used.front());
  UPoly u;
  for (const auto& c : coeffs) u.push_back(c.constant_term());
  return sturm_count(u, a, b);
}

UPoly restrict_to_line(const Polynomial& p, const Point& origin, const Point& direction) {
  const std::size_t n = p.space().dimension();
  if (origin.size() != n || direction.size() != n) throw StructuralError("line dimension mismatch");
  // powers[i][e] = (origin_i + t direction_i)^e
  std::vector<std::vector<UPoly>> powers(n);
  for (const auto& term : p.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(UPoly{1});
      while (pw.size() <= term.mono.exp[i]) {
        const UPoly& prev = pw.back();
        UPoly next(prev.size() + 1);
        for (std::size_t k = 0; k < prev.size(); ++k) {
          next[k] += prev[k] * origin[i];
          next[k + 1] += prev[k] * direction[i];
        }
        pw.push_back(std::move(next));
      }
    }
  }
  UPoly out;
  for (const auto& term : p.terms()) {
    UPoly acc{term.coeff};
    for (std::size_t i = 0; i < n; ++i) {
      if (term.mono.exp[i] == 0) continue;
      const UPoly& f = powers[i][term.mono.exp[i]];
      UPoly next(acc.size() + f.size() - 1);
      for (std::size_t j = 0; j < acc.size(); ++j) {
        for (std::size_t k = 0; k < f.size(); ++k) next[j + k] += acc[j] * f[k];
      }
      acc = std::move(next);
    }
    if (out.size() < acc.size()) out.resize(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) out[k] += acc[k];
  }
  trim(out);
  return out;
}

PolarSide polar_side(const Hypersurface& s, const LightSource& l, const Point& x) {
  Hypersurface polar = first_polar(s, l);
  const int ls = sign(evaluate(polar.poly, l.affine_point()));
  if (ls == 0) throw DegeneratePolarError("light lies on the first polar of '" + s.name + "'");
  const int xs = sign(evaluate(polar.poly, x));
  if (xs == 0) return PolarSide::On;
  return xs == ls ? PolarSide::Same : PolarSide::Opposite;
}

Classifier::Classifier(const SceneDescription& scene, std::size_t light_index) : scene_(&scene) {
  scene.validate();
  if (light_index >= scene.lights.size()) throw StructuralError("light index out of range");
  const LightSource& l = scene.lights[light_index];
  light_ = l.affine_point();
  for (const auto& f : scene.factors) {
    FactorData fd;
    fd.sigma = f.poly;
    fd.polar = first_polar(f, l).poly;
    fd.light_side = sign(evaluate(fd.polar, light_));
    if (fd.light_side == 0) {
      throw DegeneratePolarError("light lies on the first polar of '" + f.name + "'");
    }
    if (evaluate(f.poly, light_) == 0) throw TangencyDegeneracyError("light lies on '" + f.name + "'");
    factors_.push_back(std::move(fd));
  }
}

PolarSide Classifier::polar_side(std::size_t factor, const Point& x) const {
  const FactorData& fd = factors_.at(factor);
  const int xs = sign(evaluate(fd.polar, x));
  if (xs == 0) return PolarSide::On;
  return xs == fd.light_side ? PolarSide::Same : PolarSide::Opposite;
}

bool Classifier::segment_occluded(const Point& x, std::optional<std::size_t> own) const {
  Point dir(x.size());
  bool degenerate = true;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dir[i] = light_[i] - x[i];
    degenerate = degenerate && dir[i] == 0;
  }
  if (degenerate) throw DomainError("sample coincides with the light");
  static const Rational kEps = rational_from_double(kSegmentEpsilon);
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    UPoly g = restrict_to_line(factors_[j].sigma, x, dir);
    if (g.empty()) return true;  // the whole segment lies on factor j
    Rational lo = 0;
    if (own && *own == j) {
      if (g.front() == 0) {
        while (!g.empty() && g.front() == 0) g.erase(g.begin());
      } else {
        lo = kEps;
      }
    }
    if (g.size() <= 1) continue;
    std::size_t roots = sturm_count(g, lo, Rational(1));
    if (eval(g, Rational(1)) == 0) --roots;
    if (roots > 0) return true;
  }
  return false;
}

ClassifiedSample Classifier::classify(const Sample& s) const {
  ClassifiedSample out{s.point, s.surface, Illumination::Illuminated};
  const bool receiver = s.surface.role == SurfaceRef::Role::Receiver;
  const auto& list = receiver ? scene_->receivers : scene_->factors;
  if (s.surface.index >= list.size()) throw StructuralError("surface index out of range");
  const Polynomial& sigma = list[s.surface.index].poly;
  const Rational value = evaluate(sigma, s.point);
  if (value != 0) {
    const double residual = std::abs(value.get_d()) /
                            std::sqrt(norm_squared_gradient(sigma, s.point).get_d());
    if (!(residual <= kOnSurfaceTolerance)) {
      throw DomainError("sample is not on surface '" + list[s.surface.index].name + "'");
    }
  }
  if (receiver) {
    out.cls = segment_occluded(s.point, std::nullopt) ? Illumination::ReceiverShadow
                                                      : Illumination::ReceiverLit;
    return out;
  }
  // Up to one common nonzero factor, sigma_L(x) = grad sigma(x) . (L - x) on
  // the surface and sigma_L(L) = deg(sigma) sigma(L). Opposite therefore means
  // the segment to L crosses the factor again, whichever side L is on.
  const PolarSide side = polar_side(s.surface.index, s.point);
  if (side == PolarSide::Opposite) {
    out.cls = Illumination::PolarExcluded;
  } else if (segment_occluded(s.point, s.surface.index)) {
    out.cls = Illumination::Occluded;
  }
  return out;
}

bool segment_occlusion(const SceneDescription& scene, const Point& x, std::size_t factor,
                       std::size_t light_index) {
  return Classifier(scene, light_index).segment_occluded(x, factor);
}

ClassifiedSample classify_sample(const SceneDescription& scene, const Sample& sample,
                                 std::size_t light_index) {
  return Classifier(scene, light_index).classify(sample);
}

}  // namespace shadow4d
