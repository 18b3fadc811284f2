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

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "shadow4d/elim.hpp"
#include "shadow4d/error.hpp"
#include "shadow4d/scene.hpp"
#include "test_support.hpp"

namespace {

using namespace shadow4d;
using testsupport::P;

EliminationTask task_of(std::vector<Polynomial> polys, std::vector<std::string> elim,
                        Backend backend = Backend::Auto) {
  EliminationTask t;
  t.system.polys = std::move(polys);
  t.eliminate = std::move(elim);
  t.backend = backend;
  return t;
}

bool divides(const Polynomial& a, const Polynomial& b) { return divide_exact(b, a).has_value(); }

TEST(NormalForm, Examples) {
  const VariableSpace s{"x", "y"};
  const auto lex = MonomialOrder::lex();
  const std::vector<Polynomial> bx{P("x", s)};
  EXPECT_TRUE(normal_form(P("x^2", s), bx, lex).is_zero());
  EXPECT_EQ(normal_form(P("x^2 + y", s), bx, lex), P("y", s));
  const std::vector<Polynomial> bxy{P("x + y", s)};
  EXPECT_EQ(normal_form(P("x*y + 1", s), bxy, lex), P("-y^2 + 1", s));
}

TEST(Buchberger, AlreadyABasis) {
  const VariableSpace s{"x", "y"};
  const auto g = buchberger(PolySystem{{P("x", s)}}, MonomialOrder::lex());
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0], P("x", s));
}

bool contains_up_to_scale(const std::vector<Polynomial>& basis, const Polynomial& p) {
  return std::any_of(basis.begin(), basis.end(),
                     [&](const Polynomial& g) { return normalize_primitive(g) == p; });
}

TEST(Buchberger, HandExamples) {
  const VariableSpace s{"x", "y"};
  const auto lex = MonomialOrder::lex();
  EXPECT_TRUE(contains_up_to_scale(
      buchberger(PolySystem{{P("x^2 + y^2 - 1", s), P("x - y", s)}}, lex), P("2*y^2 - 1", s)));
  EXPECT_TRUE(contains_up_to_scale(buchberger(PolySystem{{P("x*y - 1", s), P("x + y - 2", s)}}, lex),
                                   P("y^2 - 2*y + 1", s)));
}

// Every S-polynomial of the output reduces to zero, and the output is reduced.
void expect_reduced_groebner(const std::vector<Polynomial>& g, const MonomialOrder& order) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_EQ(leading_term(g[i], order).coeff, Rational(1));
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      EXPECT_FALSE(leading_term(g[j], order).mono.divides(leading_term(g[i], order).mono));
      if (j > i) EXPECT_TRUE(normal_form(s_polynomial(g[i], g[j], order), g, order).is_zero());
    }
  }
}

TEST(Buchberger, OutputIsReducedGroebnerBasis) {
  const VariableSpace s{"x", "y", "z"};
  std::mt19937 rng(11);
  for (const auto& order : {MonomialOrder::lex(), MonomialOrder::grevlex(), MonomialOrder::block(1)}) {
    for (int i = 0; i < 6; ++i) {
      PolySystem sys{{testsupport::random_polynomial(rng, s, 2, 3, 4),
                      testsupport::random_polynomial(rng, s, 2, 3, 4)}};
      const auto g = buchberger(sys, order);
      expect_reduced_groebner(g, order);
      // The generators lie in the ideal of the basis.
      for (const auto& p : sys.polys) EXPECT_TRUE(normal_form(p, g, order).is_zero());
    }
  }
}

TEST(Buchberger, BudgetExceededCarriesPartialStats) {
  const VariableSpace s{"x", "y", "z"};
  PolySystem sys{{P("x^3 + y^2*z - 2", s), P("y^3 - x*z + 1", s), P("z^3 + x*y - 3", s)}};
  Budget tiny;
  tiny.step_limit = 5;
  try {
    buchberger(sys, MonomialOrder::lex(), tiny);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_GE(e.partial().steps, 5u);
  }
}

TEST(EliminateGroebner, Examples) {
  const VariableSpace s{"x", "y"};
  auto r = eliminate_groebner(task_of({P("x^2 + y^2 - 1", s), P("x - y", s)}, {"x"}));
  ASSERT_EQ(r.status, EliminationStatus::Eliminant);
  EXPECT_EQ(r.eliminant, P("2*y^2 - 1", r.eliminant.space()));
}

// Tangent cone of the unit sphere from L = (0, 0, 2) as an explicit system.
EliminationTask sphere_cone_task(Backend backend) {
  const VariableSpace s{"x", "y", "z", "q1", "q2", "q3", "a"};
  return task_of({P("q1^2 + q2^2 + q3^2 - 1", s), P("2*q3 - 1", s),
                  P("(1 - a)*q1 - x", s), P("(1 - a)*q2 - y", s), P("2*a + (1 - a)*q3 - z", s)},
                 {"q1", "q2", "q3", "a"}, backend);
}

TEST(EliminateGroebner, SphereConeMatchesQuadricIdentity) {
  // For a quadric the cone from L is 4 sigma(X) sigma(L) - sigma_L(X)^2.
  // Here sigma(L) = 3 and sigma_L = 2(2z - 1).
  const VariableSpace k{"x", "y", "z"};
  const Polynomial sigma = P("x^2 + y^2 + z^2 - 1", k);
  const Polynomial polar = P("2*z - 1", k);
  const Polynomial oracle = normalize_primitive(sigma * Rational(3) - polar * polar);
  EXPECT_EQ(oracle, P("3*x^2 + 3*y^2 - (z - 2)^2", k));
  for (Backend b : {Backend::Groebner, Backend::Dixon, Backend::Sylvester, Backend::Auto}) {
    auto r = eliminate(sphere_cone_task(b));
    ASSERT_EQ(r.status, EliminationStatus::Eliminant) << to_string(b);
    EXPECT_EQ(r.eliminant, oracle) << to_string(b);
  }
}

TEST(Dixon, Examples) {
  const VariableSpace s{"x", "y"};
  auto r = dixon_resultant(task_of({P("x^2 + y^2 - 1", s), P("x - y", s)}, {"x"}));
  ASSERT_EQ(r.status, EliminationStatus::Eliminant);
  EXPECT_TRUE(divides(P("2*y^2 - 1", r.eliminant.space()), r.eliminant));

  const VariableSpace q{"q", "s", "t"};
  auto r2 = dixon_resultant(task_of({P("q^2 - t", q), P("q - s", q)}, {"q"}));
  EXPECT_EQ(r2.eliminant, P("s^2 - t", r2.eliminant.space()));
}

TEST(Dixon, NonlinearSystemUsesDixonMatrix) {
  // Nothing is linear in the eliminated variables, so presubstitution
  // leaves the system to the Dixon matrix.
  const VariableSpace s{"u", "v", "x", "y"};
  auto t = task_of({P("u^2 + v^2 - x", s), P("u^2 - v^2 - y", s), P("u^2*v^2 - 1", s)},
                   {"u", "v"}, Backend::Dixon);
  auto r = eliminate(t);
  ASSERT_EQ(r.status, EliminationStatus::Eliminant);
  EXPECT_GT(r.stats.matrix_rows, 0u);
  // x^2 - y^2 = 4 u^2 v^2 = 4 on the variety.
  auto g = eliminate(task_of(t.system.polys, t.eliminate, Backend::Groebner));
  EXPECT_EQ(g.eliminant, P("x^2 - y^2 - 4", g.eliminant.space()));
  EXPECT_TRUE(divides(g.eliminant, r.eliminant));
}

TEST(Sylvester, Examples) {
  const VariableSpace s{"x", "a", "b"};
  const Polynomial r = sylvester_resultant(P("x - a", s), P("x - b", s), "x");
  EXPECT_TRUE(r == P("b - a", s) || r == P("a - b", s));
  const VariableSpace s2{"x", "s", "t"};
  const Polynomial r2 = sylvester_resultant(P("x^2 - t", s2), P("x - s", s2), "x");
  EXPECT_TRUE(r2 == P("s^2 - t", s2) || r2 == P("t - s^2", s2));
  EXPECT_THROW(sylvester_resultant(P("s", s2), P("x - s", s2), "x"), StructuralError);
}

TEST(Sylvester, RandomCubicsMatchCofactorOracle) {
  const VariableSpace s{"x", "c"};
  std::mt19937 rng(5);
  for (int i = 0; i < 10; ++i) {
    const Polynomial p = testsupport::random_polynomial(rng, s, 3, 5, 6) + P("x^3", s);
    const Polynomial q = testsupport::random_polynomial(rng, s, 3, 5, 6) + P("2*x^3", s);
    if (degree_in(p, 0) == 0 || degree_in(q, 0) == 0) continue;
    const PolyMatrix m = sylvester_matrix(p, q, 0);
    EXPECT_EQ(sylvester_resultant(p, q, "x"), testsupport::cofactor_determinant(m));
  }
}

// Unequal degrees and both argument orders exercise the sign bookkeeping.
TEST(Sylvester, MatchesDeterminantOfSylvesterMatrix) {
  const VariableSpace s{"x", "y", "z"};
  std::mt19937 rng(13);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    const unsigned dp = 1 + i % 4, dq = 1 + (i / 4) % 5;
    const Polynomial p = testsupport::random_polynomial(rng, s, dp, 6, 7);
    const Polynomial q = testsupport::random_polynomial(rng, s, dq, 6, 7);
    if (degree_in(p, 0) == 0 || degree_in(q, 0) == 0) continue;
    EXPECT_EQ(sylvester_resultant(p, q, "x"), bareiss_determinant(sylvester_matrix(p, q, 0)));
    EXPECT_EQ(sylvester_resultant(q, p, "x"), bareiss_determinant(sylvester_matrix(q, p, 0)));
    ++checked;
  }
  EXPECT_GE(checked, 20);
}

TEST(Sylvester, ZeroExactlyWithPlantedCommonFactor) {
  const VariableSpace s{"x", "y"};
  std::mt19937 rng(9);
  for (int i = 0; i < 10; ++i) {
    const Polynomial common = P("x", s) + testsupport::random_polynomial(rng, s, 1, 2, 5);
    if (degree_in(common, 0) == 0) continue;
    const Polynomial a = testsupport::random_polynomial(rng, s, 2, 3, 5) + P("x^2", s);
    const Polynomial b = testsupport::random_polynomial(rng, s, 2, 3, 5) + P("3*x^2", s);
    if (degree_in(a, 0) == 0 || degree_in(b, 0) == 0) continue;
    EXPECT_TRUE(sylvester_resultant(common * a, common * b, "x").is_zero());
    if (gcd(a, b).is_constant()) EXPECT_FALSE(sylvester_resultant(a, b, "x").is_zero());
  }
}

TEST(Bareiss, Examples) {
  const VariableSpace s{"x"};
  PolyMatrix id(3, std::vector<Polynomial>(3, Polynomial(s)));
  for (int i = 0; i < 3; ++i) id[i][i] = Polynomial::constant(s, 1);
  EXPECT_EQ(bareiss_determinant(id), Polynomial::constant(s, 1));
  PolyMatrix m{{P("x", s), P("1", s)}, {P("1", s), P("x", s)}};
  EXPECT_EQ(bareiss_determinant(m), P("x^2 - 1", s));
}

TEST(Bareiss, RandomLinearEntriesMatchCofactorOracle) {
  const VariableSpace s{"x", "y", "z"};
  std::mt19937 rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    PolyMatrix m(4, std::vector<Polynomial>(4, Polynomial(s)));
    for (auto& row : m) {
      for (auto& e : row) e = testsupport::random_polynomial(rng, s, 1, 3, 5);
    }
    EXPECT_EQ(bareiss_determinant(m), testsupport::cofactor_determinant(m));
  }
  // A zero leading pivot forces a row swap.
  PolyMatrix z{{Polynomial(s), P("x", s), P("1", s)},
               {P("y", s), P("z", s), P("2", s)},
               {P("1", s), P("x + y", s), P("z", s)}};
  EXPECT_EQ(bareiss_determinant(z), testsupport::cofactor_determinant(z));
}

TEST(Presubstitution, TangentConeLeavesTwoPolynomialsInA) {
  const VariableSpace q{"q1", "q2", "q3"};
  const Hypersurface torus(
      "S2", P("((q1 - 1)^2 + (q2 - 1)^2 + (q3 - 2)^2 + 3)^2 - 16*(q1 - 1)^2 - 16*(q2 - 1)^2", q));
  const Polynomial polar = first_polar(torus, LightSource::affine({-1, -2, 10})).poly;
  const VariableSpace s{"x", "y", "z", "q1", "q2", "q3", "a"};
  auto t = task_of({embed(torus.poly, s), embed(polar, s), P("-a + (1 - a)*q1 - x", s),
                    P("-2*a + (1 - a)*q2 - y", s), P("10*a + (1 - a)*q3 - z", s)},
                   {"q1", "q2", "q3", "a"});
  auto ps = linear_presubstitution(t);
  EXPECT_FALSE(ps.fallback);
  std::vector<std::string> solved = ps.solved;
  std::sort(solved.begin(), solved.end());
  EXPECT_EQ(solved, (std::vector<std::string>{"q1", "q2", "q3"}));
  EXPECT_EQ(ps.task.eliminate, std::vector<std::string>{"a"});
  EXPECT_EQ(ps.task.system.polys.size(), 2u);
}

TEST(Presubstitution, PerspectiveLeavesQz) {
  const VariableSpace q{"qx", "qy", "qz", "qw"};
  const Hypersurface ring("S", P("(qx - 1)^2 + ((qw - 2)^2 + qy^2 - 4)^2 + qz^2 - 1", q));
  const Polynomial polar = first_polar(ring, LightSource({0, 0, -6, 0, 1})).poly;
  const VariableSpace s{"x", "y", "w", "qx", "qy", "qz", "qw"};
  auto t = task_of({embed(ring.poly, s), embed(polar, s), P("x*(-6 - qz) + 6*qx", s),
                    P("y*(-6 - qz) + 6*qy", s), P("w*(-6 - qz) + 6*qw", s)},
                   {"qx", "qy", "qz", "qw"});
  auto ps = linear_presubstitution(t);
  EXPECT_FALSE(ps.fallback);
  std::vector<std::string> solved = ps.solved;
  std::sort(solved.begin(), solved.end());
  EXPECT_EQ(solved, (std::vector<std::string>{"qw", "qx", "qy"}));
  EXPECT_EQ(ps.task.eliminate, std::vector<std::string>{"qz"});
  EXPECT_EQ(ps.task.system.polys.size(), 2u);
}

TEST(Presubstitution, NoLinearEquationsUnchanged) {
  const VariableSpace s{"u", "x"};
  auto t = task_of({P("u^2 - x", s), P("u^3 + x", s)}, {"u"});
  auto ps = linear_presubstitution(t);
  EXPECT_TRUE(ps.solved.empty());
  EXPECT_EQ(ps.task.system.polys, t.system.polys);
  EXPECT_EQ(ps.task.eliminate, t.eliminate);
}

TEST(Eliminate, NoRelationWhenProjectionIsDense) {
  const VariableSpace s{"u", "x", "y"};
  auto r = eliminate_groebner(task_of({P("u - x", s)}, {"u"}));
  EXPECT_EQ(r.status, EliminationStatus::NoRelation);
  EXPECT_TRUE(r.eliminant.is_zero());
}

TEST(Eliminate, UnknownVariableRejected) {
  const VariableSpace s{"u", "x"};
  EXPECT_THROW(eliminate(task_of({P("u - x", s)}, {"v"})), StructuralError);
}

TEST(Eliminate, InvariantUnderReordering) {
  auto base = sphere_cone_task(Backend::Groebner);
  auto reference = eliminate(base).eliminant;
  std::mt19937 rng(21);
  for (int i = 0; i < 4; ++i) {
    auto t = base;
    std::shuffle(t.system.polys.begin(), t.system.polys.end(), rng);
    for (Backend b : {Backend::Groebner, Backend::Auto}) {
      t.backend = b;
      EXPECT_EQ(eliminate(t).eliminant, reference);
    }
  }
}

TEST(Eliminate, StatsRecordIsOneLine) {
  auto r = eliminate(sphere_cone_task(Backend::Groebner));
  const std::string rec = to_record(r.stats);
  EXPECT_EQ(rec.find('\n'), std::string::npos);
  EXPECT_NE(rec.find("backend=groebner"), std::string::npos);
  EXPECT_NE(rec.find("degree=2"), std::string::npos);
}

// The eliminant vanishes exactly on generator lines of the cone through
// exact rational terminator points. L = (0, 0, 5/3) puts the terminator on
// the circle z = 3/5, radius 4/5, which has dense rational points.
TEST(Membership, SphereConeVanishesOnRationalGenerators) {
  const VariableSpace s{"x", "y", "z"};
  const Hypersurface sphere("S", P("x^2 + y^2 + z^2 - 1", s));
  const LightSource light = LightSource::affine({0, 0, Rational(5, 3)});
  auto cone = tangent_cone(sphere, light);
  ASSERT_EQ(cone.status, EliminationStatus::Eliminant);
  const Polynomial polar = first_polar(sphere, light).poly;
  std::mt19937 rng(17);
  for (int i = 0; i < 20; ++i) {
    const Rational t = testsupport::random_rational(rng, 20, 9);
    const Rational c = (1 - t * t) / (1 + t * t), sn = 2 * t / (1 + t * t);
    const Point q{Rational(4, 5) * c, Rational(4, 5) * sn, Rational(3, 5)};
    ASSERT_EQ(evaluate(sphere.poly, q), 0);
    ASSERT_EQ(evaluate(polar, q), 0);
    for (int k = 0; k < 3; ++k) {
      const Rational a = testsupport::random_rational(rng, 9, 5);
      Point x(3);
      for (int j = 0; j < 3; ++j) x[j] = a * light.homogeneous()[j] + (1 - a) * q[j];
      EXPECT_EQ(evaluate(cone.eliminant, x), 0);
    }
  }
}

TEST(Membership, TorusConeVanishesOnGenerators) {
  const VariableSpace s{"x", "y", "z"};
  const Hypersurface torus(
      "S2", P("((x - 1)^2 + (y - 1)^2 + (z - 2)^2 + 3)^2 - 16*(x - 1)^2 - 16*(y - 1)^2", s));
  const LightSource light = LightSource::affine({-1, -2, 10});
  auto cone = tangent_cone(torus, light);
  ASSERT_EQ(degree(cone.eliminant), 8u);
  const Polynomial polar = first_polar(torus, light).poly;
  const std::vector<double> l{-1, -2, 10};
  auto on_torus = [](double u, double v) {
    return std::vector<double>{1 + (2 + std::cos(v)) * std::cos(u), 1 + (2 + std::cos(v)) * std::sin(u),
                               2 + std::sin(v)};
  };
  auto polar_at = [&](double u, double v) {
    auto q = on_torus(u, v);
    return evaluate(polar, std::span<const double>(q));
  };
  // Magnitude scale of the eliminant at x, for a relative residual.
  auto scale = [&](const std::vector<double>& x) {
    double sum = 0;
    for (const auto& t : cone.eliminant.terms()) {
      double m = std::abs(t.coeff.get_d());
      for (int j = 0; j < 3; ++j) m *= std::pow(std::abs(x[j]), t.mono.exp[j]);
      sum += m;
    }
    return sum;
  };
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> ang(0, 2 * M_PI);
  int checked = 0;
  while (checked < 20) {
    const double u = ang(rng);
    // Bracket a zero of the polar along the tube circle at angle u.
    double v0 = 0, f0 = polar_at(u, 0);
    bool found = false;
    for (int k = 1; k <= 64 && !found; ++k) {
      const double v1 = 2 * M_PI * k / 64, f1 = polar_at(u, v1);
      if ((f0 < 0) != (f1 < 0)) {
        double lo = v0, hi = v1;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          if ((polar_at(u, mid) < 0) == (f0 < 0)) lo = mid; else hi = mid;
        }
        v0 = 0.5 * (lo + hi);
        found = true;
      } else {
        v0 = v1;
        f0 = f1;
      }
    }
    if (!found) continue;
    const auto q = on_torus(u, v0);
    for (double a : {-0.5, 0.25, 0.6}) {
      std::vector<double> x(3);
      for (int j = 0; j < 3; ++j) x[j] = a * l[j] + (1 - a) * q[j];
      EXPECT_LT(std::abs(evaluate(cone.eliminant, std::span<const double>(x))) / scale(x), 1e-9);
    }
    ++checked;
  }
}

}  // namespace
