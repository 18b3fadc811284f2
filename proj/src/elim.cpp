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

#include "shadow4d/elim.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace shadow4d {

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Auto:
      return "sylvester-auto";
    case Backend::Groebner:
      return "groebner";
    case Backend::Dixon:
      return "dixon";
    case Backend::Sylvester:
      return "sylvester";
  }
  return "?";
}

Backend parse_backend(std::string_view name) {
  if (name == "auto" || name == "sylvester-auto") return Backend::Auto;
  if (name == "groebner") return Backend::Groebner;
  if (name == "dixon") return Backend::Dixon;
  if (name == "sylvester") return Backend::Sylvester;
  throw StructuralError("unknown backend '" + std::string(name) + "'");
}

std::string to_record(const EliminationStats& s) {
  std::ostringstream out;
  out << "backend=" << to_string(s.backend) << " elapsed_ms=" << s.elapsed_ms
      << " basis_size=" << s.basis_size << " matrix=" << s.matrix_rows << "x" << s.matrix_cols
      << " degree=" << s.eliminant_degree << " terms=" << s.eliminant_terms
      << " steps=" << s.steps << " presubstituted=" << s.presubstituted;
  if (s.pairs_reduced + s.pairs_skipped > 0) {
    out << " pairs_reduced=" << s.pairs_reduced << " pairs_skipped=" << s.pairs_skipped;
  }
  if (s.dixon_square) out << " dixon=square";
  if (s.dixon_maximal_minor) out << " dixon=maximal-minor";
  if (s.multiple_generators) out << " multiple_generators=1";
  if (s.presubstitution_fallback) out << " presubstitution_fallback=1";
  return out.str();
}

BudgetGuard::BudgetGuard(const Budget& budget, EliminationStats* stats)
    : budget_(budget), stats_(stats), start_(std::chrono::steady_clock::now()) {}

void BudgetGuard::tick(std::uint64_t n) {
  steps_ += n;
  if (stats_) stats_->steps = steps_;
  bool over = budget_.step_limit != 0 && steps_ > budget_.step_limit;
  if (!over && budget_.time_limit.count() > 0) {
    over = std::chrono::steady_clock::now() - start_ > budget_.time_limit;
  }
  if (over) {
    EliminationStats partial = stats_ ? *stats_ : EliminationStats{};
    partial.elapsed_ms = elapsed_ms();
    partial.steps = steps_;
    throw BudgetExceeded("elimination budget exceeded", partial);
  }
}

double BudgetGuard::elapsed_ms() const {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
}

const VariableSpace& PolySystem::space() const {
  if (polys.empty()) throw StructuralError("empty polynomial system");
  for (const auto& p : polys) {
    if (!(p.space() == polys.front().space())) {
      throw StructuralError("system polynomials live in different spaces");
    }
  }
  return polys.front().space();
}

std::vector<std::string> EliminationTask::keep() const {
  std::vector<std::string> out;
  for (const auto& n : system.space().names()) {
    if (std::find(eliminate.begin(), eliminate.end(), n) == eliminate.end()) out.push_back(n);
  }
  return out;
}

void EliminationTask::validate() const {
  const auto& space = system.space();
  std::set<std::string> seen;
  for (const auto& n : eliminate) {
    space.require(n);
    if (!seen.insert(n).second) throw StructuralError("variable '" + n + "' eliminated twice");
  }
}

namespace {

VariableSpace kept_space(const EliminationTask& task) { return VariableSpace(task.keep()); }

std::vector<std::size_t> eliminated_indices(const EliminationTask& task) {
  std::vector<std::size_t> out;
  for (const auto& n : task.eliminate) out.push_back(task.system.space().require(n));
  std::sort(out.begin(), out.end());
  return out;
}

bool involves_any(const Polynomial& p, const std::vector<std::size_t>& vars) {
  return std::any_of(vars.begin(), vars.end(), [&](std::size_t v) { return involves(p, v); });
}

void add_unique(std::vector<Polynomial>& list, const Polynomial& p) {
  if (std::find(list.begin(), list.end(), p) == list.end()) list.push_back(p);
}

// Shared tail of every backend: strip kept-variable denominators,
// normalize, fill in the summary stats.
EliminationResult finish(Polynomial raw, const Presubstitution& ps, const EliminationTask& original,
                         Backend backend, EliminationStats stats, std::vector<Polynomial> stripped,
                         const BudgetGuard& guard) {
  EliminationResult result;
  result.backend_used = backend;
  stats.backend = backend;
  VariableSpace keep = kept_space(original);
  if (raw.is_zero()) {
    result.status = EliminationStatus::NoRelation;
    result.eliminant = Polynomial(keep);
  } else {
    Polynomial e = embed(raw, keep);
    for (const auto& den : ps.denominators) {
      if (involves_any(den, eliminated_indices(ps.task))) continue;
      Polynomial d = embed(den, keep);
      if (strip_factor(e, d) > 0) add_unique(stripped, normalize_primitive(d));
    }
    if (e.is_constant()) {
      result.status = EliminationStatus::NoRelation;
      result.eliminant = Polynomial(keep);
    } else {
      result.eliminant = normalize_primitive(e);
      stats.eliminant_degree = degree(result.eliminant);
      stats.eliminant_terms = term_count(result.eliminant);
    }
  }
  result.extraneous_cleared = std::move(stripped);
  stats.presubstituted = ps.solved.size();
  stats.presubstitution_fallback = ps.fallback;
  stats.elapsed_ms = guard.elapsed_ms();
  result.stats = stats;
  return result;
}

// Strips the components introduced by clearing denominators from a
// two-polynomial resultant in `var`: common zeros of the leading
// coefficients, and common zeros at the root of a cleared denominator.
std::vector<Polynomial> strip_univariate_extraneous(Polynomial& r, const Polynomial& f,
                                                    const Polynomial& g, std::size_t var,
                                                    const std::vector<Polynomial>& dens) {
  std::vector<Polynomial> stripped;
  if (r.is_zero()) return stripped;
  const VariableSpace& space = f.space();
  std::vector<Polynomial> candidates;
  candidates.push_back(gcd(coefficients_in(f, var).back(), coefficients_in(g, var).back()));
  for (const auto& den : dens) {
    if (degree_in(den, var) != 1) continue;
    auto dc = coefficients_in(den, var);
    if (!dc[1].is_constant()) continue;
    Polynomial root = dc[0] * Rational(-1 / dc[1].constant_term());
    std::map<std::string, Polynomial> at_root{{space.name(var), root}};
    candidates.push_back(gcd(substitute(f, at_root), substitute(g, at_root)));
  }
  for (const auto& h : candidates) {
    if (h.is_constant()) continue;
    Polynomial hk = embed(h, r.space());
    if (strip_factor(r, hk) > 0) add_unique(stripped, normalize_primitive(hk));
  }
  return stripped;
}

Polynomial direct_relation(const std::vector<Polynomial>& polys, EliminationStats& stats) {
  Polynomial out = Polynomial::constant(polys.front().space(), 1);
  std::size_t used = 0;
  for (const auto& p : polys) {
    if (p.is_zero() || p.is_constant()) continue;
    out = out * p;
    ++used;
  }
  if (used == 0) return Polynomial(polys.front().space());
  stats.multiple_generators = used > 1;
  return out;
}

EliminationResult sylvester_core(const Presubstitution& ps, const EliminationTask& original) {
  EliminationStats stats;
  BudgetGuard guard(original.budget, &stats);
  const auto& polys = ps.task.system.polys;
  auto elim = eliminated_indices(ps.task);
  if (elim.empty()) {
    return finish(direct_relation(polys, stats), ps, original, Backend::Sylvester, stats, {}, guard);
  }
  if (elim.size() != 1 || polys.size() != 2) {
    throw StructuralError("sylvester path needs two polynomials in one eliminated variable");
  }
  const std::size_t v = elim.front();
  stats.matrix_rows = stats.matrix_cols = degree_in(polys[0], v) + degree_in(polys[1], v);
  Polynomial r = sylvester_resultant(polys[0], polys[1], v, guard);
  auto stripped = strip_univariate_extraneous(r, polys[0], polys[1], v, ps.denominators);
  return finish(std::move(r), ps, original, Backend::Sylvester, stats, std::move(stripped), guard);
}

EliminationResult groebner_core(const Presubstitution& ps, const EliminationTask& original) {
  EliminationStats stats;
  BudgetGuard guard(original.budget, &stats);
  const auto& space = ps.task.system.space();
  auto elim = eliminated_indices(ps.task);

  std::vector<std::string> order_names;
  for (auto v : elim) order_names.push_back(space.name(v));
  std::vector<Polynomial> saturating;
  for (const auto& den : ps.denominators) {
    if (involves_any(den, elim)) saturating.push_back(den);
  }
  std::vector<std::string> sat_names;
  for (std::size_t k = 0; k < saturating.size(); ++k) {
    std::string name = "_sat" + std::to_string(k);
    while (space.contains(name)) name += "_";
    sat_names.push_back(name);
    order_names.push_back(name);
  }
  const std::size_t split = order_names.size();
  for (std::size_t v = 0; v < space.dimension(); ++v) {
    if (std::find(elim.begin(), elim.end(), v) == elim.end()) order_names.push_back(space.name(v));
  }
  VariableSpace ordered(order_names);
  PolySystem sys;
  for (const auto& p : ps.task.system.polys) sys.polys.push_back(embed(p, ordered));
  for (std::size_t k = 0; k < saturating.size(); ++k) {
    sys.polys.push_back(embed(saturating[k], ordered) * Polynomial::variable(ordered, sat_names[k]) -
                        Polynomial::constant(ordered, 1));
  }

  auto basis = buchberger(sys, MonomialOrder::block(split), guard, stats);
  std::vector<Polynomial> relations;
  for (const auto& g : basis) {
    bool free = true;
    for (std::size_t v = 0; v < split && free; ++v) free = !involves(g, v);
    if (!free) continue;
    if (g.is_constant()) throw DegenerateSystemError("system is inconsistent (basis contains 1)");
    relations.push_back(g);
  }
  Polynomial raw = relations.empty() ? Polynomial(ordered) : direct_relation(relations, stats);
  return finish(std::move(raw), ps, original, Backend::Groebner, stats, {}, guard);
}

// Dixon polynomial coefficients arranged by (v-monomial, w-monomial).
EliminationResult dixon_core(const Presubstitution& ps, const EliminationTask& original) {
  EliminationStats stats;
  BudgetGuard guard(original.budget, &stats);
  const auto& polys = ps.task.system.polys;
  const auto& space = ps.task.system.space();
  auto elim = eliminated_indices(ps.task);
  const std::size_t m = elim.size();
  if (m == 0) {
    return finish(direct_relation(polys, stats), ps, original, Backend::Dixon, stats, {}, guard);
  }
  if (polys.size() != m + 1) {
    throw StructuralError("dixon resultant needs " + std::to_string(m + 1) + " polynomials, got " +
                          std::to_string(polys.size()));
  }
  std::vector<std::string> wnames;
  for (auto v : elim) {
    std::string name = "_dx_" + space.name(v);
    while (space.contains(name)) name += "_";
    wnames.push_back(name);
  }
  VariableSpace ds = space.extended(wnames);
  std::vector<Polynomial> f;
  for (const auto& p : polys) f.push_back(embed(p, ds));

  PolyMatrix cancel(m + 1, std::vector<Polynomial>(m + 1, Polynomial(ds)));
  for (std::size_t i = 0; i <= m; ++i) {
    std::map<std::string, Polynomial> sub;
    for (std::size_t k = 0; k < i; ++k) sub.emplace(space.name(elim[k]), Polynomial::variable(ds, wnames[k]));
    for (std::size_t j = 0; j <= m; ++j) cancel[i][j] = i == 0 ? f[j] : substitute(f[j], sub);
  }
  Polynomial delta = bareiss_determinant(std::move(cancel), guard);
  for (std::size_t k = 0; k < m; ++k) {
    Polynomial diff = Polynomial::variable(ds, space.name(elim[k])) - Polynomial::variable(ds, wnames[k]);
    auto q = divide_exact(delta, diff);
    if (!q) throw Error("internal: Dixon cancellation determinant not divisible");
    delta = std::move(*q);
  }
  if (delta.is_zero()) throw DegenerateSystemError("Dixon polynomial vanishes identically");

  // Split each term into v-part, w-part and kept part.
  VariableSpace keep = kept_space(ps.task);
  std::vector<std::size_t> vidx, widx;
  for (std::size_t k = 0; k < m; ++k) {
    vidx.push_back(elim[k]);
    widx.push_back(space.dimension() + k);
  }
  std::map<Monomial, std::size_t> rows, cols;
  struct Entry {
    Monomial row, col;
    Term kept;
  };
  std::vector<Entry> entries;
  for (const auto& t : delta.terms()) {
    Monomial r, c, rest = t.mono;
    for (std::size_t k = 0; k < m; ++k) {
      r.exp[k] = t.mono.exp[vidx[k]];
      c.exp[k] = t.mono.exp[widx[k]];
      rest.exp[vidx[k]] = 0;
      rest.exp[widx[k]] = 0;
    }
    rows.emplace(r, 0);
    cols.emplace(c, 0);
    entries.push_back({r, c, {rest, t.coeff}});
  }
  std::size_t idx = 0;
  for (auto& [k, v] : rows) v = idx++;
  idx = 0;
  for (auto& [k, v] : cols) v = idx++;
  std::vector<std::vector<std::vector<Term>>> cells(rows.size(), std::vector<std::vector<Term>>(cols.size()));
  for (auto& e : entries) cells[rows[e.row]][cols[e.col]].push_back(std::move(e.kept));
  PolyMatrix dm(rows.size(), std::vector<Polynomial>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      dm[i][j] = embed(Polynomial(ds, std::move(cells[i][j])), keep);
    }
  }
  stats.matrix_rows = rows.size();
  stats.matrix_cols = cols.size();

  Polynomial det(keep);
  if (rows.size() == cols.size()) {
    det = bareiss_determinant(dm, guard);
    stats.dixon_square = !det.is_zero();
  }
  if (det.is_zero()) {
    // Maximal-rank minor, located by exact rank computation at random points.
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> dist(-97, 97);
    std::vector<std::size_t> best_rows, best_cols;
    for (int attempt = 0; attempt < 3; ++attempt) {
      std::vector<Rational> point(keep.dimension());
      for (auto& x : point) x = dist(rng);
      std::vector<std::vector<Rational>> a(rows.size(), std::vector<Rational>(cols.size()));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) a[i][j] = evaluate(dm[i][j], point);
      }
      std::vector<std::size_t> prow, pcol;
      std::vector<bool> used_row(rows.size(), false);
      for (std::size_t j = 0; j < cols.size(); ++j) {
        std::size_t piv = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (!used_row[i] && a[i][j] != 0) {
            piv = i;
            break;
          }
        }
        if (piv == rows.size()) continue;
        used_row[piv] = true;
        prow.push_back(piv);
        pcol.push_back(j);
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (i == piv || a[i][j] == 0) continue;
          Rational factor = a[i][j] / a[piv][j];
          for (std::size_t k = j; k < cols.size(); ++k) a[i][k] -= factor * a[piv][k];
        }
        guard.tick();
      }
      if (prow.size() > best_rows.size()) {
        best_rows = prow;
        best_cols = pcol;
      }
    }
    if (best_rows.empty()) throw DegenerateSystemError("Dixon matrix is identically zero");
    std::sort(best_rows.begin(), best_rows.end());
    PolyMatrix sub(best_rows.size(), std::vector<Polynomial>(best_cols.size()));
    for (std::size_t i = 0; i < best_rows.size(); ++i) {
      for (std::size_t j = 0; j < best_cols.size(); ++j) sub[i][j] = dm[best_rows[i]][best_cols[j]];
    }
    det = bareiss_determinant(std::move(sub), guard);
    if (det.is_zero()) throw DegenerateSystemError("no rank-revealing Dixon submatrix found");
    stats.dixon_maximal_minor = true;
  }
  std::vector<Polynomial> stripped;
  if (m == 1) {
    Polynomial r = embed(det, space);
    stripped = strip_univariate_extraneous(r, polys[0], polys[1], elim[0], ps.denominators);
    det = embed(r, keep);
  }
  return finish(embed(det, space), ps, original, Backend::Dixon, stats, std::move(stripped), guard);
}

}  // namespace

Presubstitution linear_presubstitution(const EliminationTask& task) {
  task.validate();
  Presubstitution out;
  out.task = task;
  const auto& space = task.system.space();
  std::vector<Polynomial> polys = task.system.polys;
  std::vector<std::size_t> remaining = eliminated_indices(task);
  std::vector<Polynomial> dens;
  std::vector<std::string> solved;

  auto fall_back = [&]() {
    Presubstitution fb;
    fb.task = task;
    fb.fallback = true;
    return fb;
  };

  // Degrees are ranked on the input system so that solving one variable
  // does not promote another that merely picked up degree from it.
  std::map<std::size_t, unsigned> input_degree;
  for (auto v : remaining) {
    for (const auto& p : polys) input_degree[v] = std::max(input_degree[v], degree_in(p, v));
  }

  while (true) {
    using Key = std::tuple<int, unsigned, int, std::size_t, std::size_t>;
    std::optional<Key> best;
    std::size_t best_eq = 0, best_var = 0;
    for (std::size_t e = 0; e < polys.size(); ++e) {
      for (auto v : remaining) {
        if (degree_in(polys[e], v) != 1) continue;
        auto c = coefficients_in(polys[e], v);
        int coeff_elim = involves_any(c[1], remaining) ? 1 : 0;
        unsigned coeff_deg = c[1].is_constant() ? 0 : degree(c[1]);
        Key key{coeff_elim, coeff_deg, -static_cast<int>(input_degree[v]), v, e};
        if (!best || key < *best) {
          best = key;
          best_eq = e;
          best_var = v;
        }
      }
    }
    if (!best) break;
    auto c = coefficients_in(polys[best_eq], best_var);
    Binding b{-c[0], c[1]};
    const std::string name = space.name(best_var);
    Polynomial den_norm = c[1].is_constant() ? Polynomial() : normalize_primitive(c[1]);
    std::vector<Polynomial> next;
    for (std::size_t e = 0; e < polys.size(); ++e) {
      if (e == best_eq) continue;
      Polynomial p = polys[e];
      if (involves(p, best_var)) {
        p = substitute(p, std::map<std::string, Binding>{{name, b}}).value;
        if (!c[1].is_constant()) strip_factor(p, den_norm);
        if (p.is_zero() || p.is_constant()) return fall_back();
      }
      next.push_back(std::move(p));
    }
    if (next.empty()) return fall_back();
    // Recorded denominators are kept in current coordinates.
    std::vector<Polynomial> carried;
    for (auto& d : dens) {
      if (involves(d, best_var)) {
        Polynomial nd = substitute(d, std::map<std::string, Binding>{{name, b}}).value;
        if (!c[1].is_constant()) strip_factor(nd, den_norm);
        if (nd.is_constant()) continue;
        d = normalize_primitive(nd);
      }
      carried.push_back(d);
    }
    dens = std::move(carried);
    if (!c[1].is_constant()) add_unique(dens, den_norm);
    polys = std::move(next);
    solved.push_back(name);
    remaining.erase(std::find(remaining.begin(), remaining.end(), best_var));
  }
  std::vector<std::string> elim_names;
  for (auto v : remaining) {
    bool present = std::any_of(polys.begin(), polys.end(), [&](const Polynomial& p) { return involves(p, v); });
    if (present) elim_names.push_back(space.name(v));
  }
  out.task.system.polys = std::move(polys);
  out.task.eliminate = std::move(elim_names);
  out.denominators = std::move(dens);
  out.solved = std::move(solved);
  return out;
}

EliminationResult eliminate_groebner(const EliminationTask& task) {
  return groebner_core(linear_presubstitution(task), task);
}

EliminationResult dixon_resultant(const EliminationTask& task) {
  return dixon_core(linear_presubstitution(task), task);
}

EliminationResult eliminate(const EliminationTask& task) {
  switch (task.backend) {
    case Backend::Groebner:
      return eliminate_groebner(task);
    case Backend::Dixon:
      return dixon_resultant(task);
    case Backend::Sylvester:
      return sylvester_core(linear_presubstitution(task), task);
    case Backend::Auto:
      break;
  }
  Presubstitution ps = linear_presubstitution(task);
  const auto& polys = ps.task.system.polys;
  const std::size_t left = ps.task.eliminate.size();
  if (left == 0 || (left == 1 && polys.size() == 2)) return sylvester_core(ps, task);
  return groebner_core(ps, task);
}

}  // namespace shadow4d
