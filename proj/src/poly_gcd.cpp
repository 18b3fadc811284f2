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

// Recursive primitive-PRS gcd. Only used to find the common factor of two
// small polynomials (leading coefficients, restrictions at a root), so no
// attempt is made at modular or heuristic speedups.

#include <algorithm>

#include "shadow4d/error.hpp"
#include "shadow4d/poly.hpp"

namespace shadow4d {

namespace {

Polynomial one(const VariableSpace& s) { return Polynomial::constant(s, 1); }

Polynomial content_in(const Polynomial& p, std::size_t var) {
  Polynomial c(p.space());
  for (const auto& coeff : coefficients_in(p, var)) {
    if (coeff.is_zero()) continue;
    c = gcd(c, coeff);
    if (c.is_constant()) return one(p.space());
  }
  return c;
}

Polynomial primitive_part_in(const Polynomial& p, std::size_t var) {
  if (p.is_zero()) return p;
  Polynomial c = content_in(p, var);
  if (c.is_constant()) return p;
  return *divide_exact(p, c);
}

Polynomial pseudo_remainder(Polynomial f, const Polynomial& g, std::size_t var) {
  const unsigned n = degree_in(g, var);
  const Polynomial lc = coefficients_in(g, var).back();
  while (!f.is_zero()) {
    unsigned m = degree_in(f, var);
    if (m < n) break;
    Polynomial lf = coefficients_in(f, var).back();
    Monomial shift;
    shift.exp[var] = static_cast<std::uint16_t>(m - n);
    f = lc * f - (lf * g).scaled(shift, 1);
  }
  return f;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (!(a.space() == b.space())) throw StructuralError("gcd of polynomials in different spaces");
  if (a.is_zero() && b.is_zero()) return a;
  if (a.is_zero()) return normalize_primitive(b);
  if (b.is_zero()) return normalize_primitive(a);
  if (a.is_constant() || b.is_constant()) return one(a.space());

  std::size_t var = 0;
  while (!involves(a, var) && !involves(b, var)) ++var;
  if (!involves(b, var)) return gcd(content_in(a, var), b);
  if (!involves(a, var)) return gcd(a, content_in(b, var));

  Polynomial ca = content_in(a, var);
  Polynomial cb = content_in(b, var);
  Polynomial c = gcd(ca, cb);
  Polynomial f = normalize_primitive(ca.is_constant() ? a : *divide_exact(a, ca));
  Polynomial g = normalize_primitive(cb.is_constant() ? b : *divide_exact(b, cb));
  if (degree_in(f, var) < degree_in(g, var)) std::swap(f, g);
  while (true) {
    Polynomial r = pseudo_remainder(f, g, var);
    if (r.is_zero()) break;
    if (degree_in(r, var) == 0) {
      g = one(a.space());
      break;
    }
    f = std::move(g);
    // Dropping the numeric content as well keeps coefficient growth polynomial.
    g = normalize_primitive(primitive_part_in(r, var));
  }
  return normalize_primitive(c * primitive_part_in(g, var));
}

}  // namespace shadow4d
