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

#include <utility>

#include "shadow4d/elim.hpp"

namespace shadow4d {

namespace {

// Coefficient k multiplies var^k; the top entry is nonzero.
using Coeffs = std::vector<Polynomial>;

unsigned deg(const Coeffs& c) { return static_cast<unsigned>(c.size() - 1); }

void trim(Coeffs& c) {
  while (c.size() > 1 && c.back().is_zero()) c.pop_back();
}

Polynomial power(const Polynomial& p, unsigned k) {
  return k == 0 ? Polynomial::constant(p.space(), 1) : pow(p, k);
}

Polynomial exact_quotient(const Polynomial& num, const Polynomial& den) {
  if (den.is_constant()) return num * Rational(1 / den.constant_term());
  auto q = divide_exact(num, den);
  if (!q) throw Error("internal: inexact subresultant division");
  return std::move(*q);
}

// lc(b)^(deg a - deg b + 1) * a mod b, the full pseudo-remainder.
Coeffs pseudo_remainder(Coeffs a, const Coeffs& b, BudgetGuard& guard) {
  const unsigned n = deg(b);
  const Polynomial& lb = b.back();
  unsigned left = deg(a) - n + 1;
  while (!(a.size() == 1 && a[0].is_zero()) && deg(a) >= n) {
    const Polynomial la = a.back();
    const unsigned shift = deg(a) - n;
    for (auto& c : a) c *= lb;
    for (unsigned j = 0; j <= n; ++j) {
      guard.tick();
      a[j + shift] -= la * b[j];
    }
    a.pop_back();
    if (a.empty()) a.push_back(Polynomial(lb.space()));
    trim(a);
    --left;
  }
  if (left > 0) {
    const Polynomial scale = power(lb, left);
    for (auto& c : a) c *= scale;
  }
  return a;
}

bool is_zero(const Coeffs& c) { return c.size() == 1 && c[0].is_zero(); }

// Subresultant PRS. The result equals the determinant of the Sylvester
// matrix with the rows of `a` first.
Polynomial subresultant(Coeffs a, Coeffs b, BudgetGuard& guard) {
  const VariableSpace& space = a.front().space();
  bool negate = false;
  if (deg(a) < deg(b)) {
    std::swap(a, b);
    negate = deg(a) % 2 == 1 && deg(b) % 2 == 1;
  }
  Polynomial g = Polynomial::constant(space, 1);
  Polynomial h = Polynomial::constant(space, 1);
  while (deg(b) > 0) {
    const unsigned delta = deg(a) - deg(b);
    if (deg(a) % 2 == 1 && deg(b) % 2 == 1) negate = !negate;
    Coeffs r = pseudo_remainder(a, b, guard);
    if (is_zero(r)) return Polynomial(space);
    const Polynomial den = g * power(h, delta);
    for (auto& c : r) c = exact_quotient(c, den);
    a = std::move(b);
    b = std::move(r);
    g = a.back();
    // h <- g^delta / h^(delta - 1), unchanged for delta = 0
    if (delta > 0) h = exact_quotient(power(g, delta), power(h, delta - 1));
    guard.tick();
  }
  // deg(b) == 0: res = lc(b)^deg(a) / h^(deg(a) - 1)
  const unsigned da = deg(a);
  Polynomial res = da == 0 ? Polynomial::constant(space, 1)
                           : exact_quotient(power(b[0], da), power(h, da - 1));
  return negate ? -res : res;
}

}  // namespace

Polynomial bareiss_determinant(PolyMatrix m, BudgetGuard& guard) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw StructuralError("determinant of a non-square matrix");
  }
  if (n == 0) throw StructuralError("determinant of an empty matrix");
  const VariableSpace& space = m[0][0].space();
  bool negate = false;
  Polynomial prev = Polynomial::constant(space, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return Polynomial(space);
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        guard.tick();
        Polynomial num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        if (prev.is_constant()) {
          num *= Rational(1 / prev.constant_term());
          m[i][j] = std::move(num);
        } else {
          auto q = divide_exact(num, prev);
          if (!q) throw Error("internal: inexact Bareiss division");
          m[i][j] = std::move(*q);
        }
      }
      m[i][k] = Polynomial(space);
    }
    prev = m[k][k];
  }
  Polynomial det = m[n - 1][n - 1];
  return negate ? -det : det;
}

Polynomial bareiss_determinant(PolyMatrix m, const Budget& budget) {
  BudgetGuard guard(budget, nullptr);
  return bareiss_determinant(std::move(m), guard);
}

PolyMatrix sylvester_matrix(const Polynomial& p, const Polynomial& q, std::size_t var) {
  auto pc = coefficients_in(p, var);
  auto qc = coefficients_in(q, var);
  const std::size_t m = pc.size() - 1;
  const std::size_t n = qc.size() - 1;
  if (p.is_zero() || q.is_zero() || m == 0 || n == 0) {
    throw StructuralError("sylvester resultant needs positive degree in '" +
                          p.space().name(var) + "'");
  }
  const std::size_t size = m + n;
  PolyMatrix s(size, std::vector<Polynomial>(size, Polynomial(p.space())));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = pc[m - k];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = qc[n - k];
  }
  return s;
}

Polynomial sylvester_resultant(const Polynomial& p, const Polynomial& q, std::size_t var,
                               BudgetGuard& guard) {
  if (!(p.space() == q.space())) throw StructuralError("resultant of polynomials in different spaces");
  Coeffs pc = coefficients_in(p, var);
  Coeffs qc = coefficients_in(q, var);
  if (p.is_zero() || q.is_zero() || deg(pc) == 0 || deg(qc) == 0) {
    throw StructuralError("sylvester resultant needs positive degree in '" + p.space().name(var) + "'");
  }
  return subresultant(std::move(pc), std::move(qc), guard);
}

Polynomial sylvester_resultant(const Polynomial& p, const Polynomial& q, std::string_view var,
                               const Budget& budget) {
  BudgetGuard guard(budget, nullptr);
  return sylvester_resultant(p, q, p.space().require(var), guard);
}

}  // namespace shadow4d
