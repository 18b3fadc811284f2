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

#include <algorithm>
#include <limits>

#include "shadow4d/elim.hpp"

namespace shadow4d {

namespace {

using Terms = std::vector<Term>;

struct OrderCmp {
  MonomialOrder order;
  std::size_t dim;
  bool greater(const Monomial& a, const Monomial& b) const { return order.compare(a, b, dim) > 0; }
};

Terms sorted_terms(const Polynomial& p, const OrderCmp& cmp) {
  Terms t = p.terms();
  std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return cmp.greater(a.mono, b.mono); });
  return t;
}

// Returns a*w[from..] - b*(m*g), all sorted by cmp.
Terms combine(const Terms& w, std::size_t from, const Rational& a, const Terms& g,
              std::size_t gfrom, const Monomial& m, const Rational& b, const OrderCmp& cmp) {
  Terms out;
  out.reserve(w.size() - from + g.size() - gfrom);
  std::size_t i = from, j = gfrom;
  Rational tmp;
  const bool unit_a = a == 1;
  while (i < w.size() || j < g.size()) {
    if (j < g.size()) {
      Monomial gm = g[j].mono * m;
      if (i < w.size() && cmp.greater(w[i].mono, gm)) {
        out.push_back(w[i++]);
        if (!unit_a) out.back().coeff *= a;
        continue;
      }
      mpq_mul(tmp.get_mpq_t(), b.get_mpq_t(), g[j].coeff.get_mpq_t());
      if (i < w.size() && w[i].mono == gm) {
        Rational c = unit_a ? Rational(w[i].coeff) : Rational(w[i].coeff * a);
        c -= tmp;
        if (c != 0) out.push_back({gm, std::move(c)});
        ++i;
      } else {
        out.push_back({gm, -tmp});
      }
      ++j;
    } else {
      out.push_back(w[i++]);
      if (!unit_a) out.back().coeff *= a;
    }
  }
  return out;
}

// Integer content of integral terms.
Integer content(const Terms& a, std::size_t from, const Terms& b) {
  Integer g = 0;
  for (std::size_t i = from; i < a.size(); ++i) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a[i].coeff.get_num_mpz_t());
    if (g == 1) return g;
  }
  for (const auto& t : b) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
    if (g == 1) return g;
  }
  return g;
}

void make_primitive(Terms& t) {
  if (t.empty()) return;
  Integer l = 1;
  for (const auto& x : t) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.coeff.get_den_mpz_t());
  if (l != 1) {
    for (auto& x : t) x.coeff *= l;
  }
  Integer g = content(t, 0, {});
  if (t.front().coeff < 0) g = -g;
  if (g != 1) {
    Rational inv(1, g);
    inv.canonicalize();
    for (auto& x : t) x.coeff *= inv;
  }
}

struct GPoly {
  Terms terms;
  unsigned sugar = 0;
  bool active = true;
  const Monomial& lm() const { return terms.front().mono; }
  const Rational& lc() const { return terms.front().coeff; }
};

enum class ReduceMode { Exact, FractionFree };

// Full reduction of w by the active polynomials in `basis` (excluding `skip`).
Terms reduce(Terms w, const std::vector<GPoly>& basis, const OrderCmp& cmp, ReduceMode mode,
             BudgetGuard* guard, std::size_t skip = std::numeric_limits<std::size_t>::max()) {
  Terms done;
  std::size_t head = 0;
  unsigned since_content = 0;
  while (head < w.size()) {
    const Term& lt = w[head];
    const GPoly* red = nullptr;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (k == skip || !basis[k].active) continue;
      if (basis[k].lm().divides(lt.mono)) {
        red = &basis[k];
        break;
      }
    }
    if (red == nullptr) {
      done.push_back(std::move(w[head]));
      ++head;
      continue;
    }
    if (guard) guard->tick();
    Monomial m = quotient(lt.mono, red->lm());
    if (mode == ReduceMode::Exact) {
      Rational b = lt.coeff / red->lc();
      w = combine(w, head + 1, Rational(1), red->terms, 1, m, b, cmp);
    } else {
      Integer g;
      mpz_gcd(g.get_mpz_t(), lt.coeff.get_num_mpz_t(), red->lc().get_num_mpz_t());
      Rational a(red->lc().get_num() / g);
      Rational b(lt.coeff.get_num() / g);
      w = combine(w, head + 1, a, red->terms, 1, m, b, cmp);
      if (a != 1) {
        for (auto& t : done) t.coeff *= a;
      }
      if (++since_content >= 8) {
        since_content = 0;
        Integer c = content(w, 0, done);
        if (c > 1) {
          Rational inv(1, c);
          inv.canonicalize();
          for (auto& t : w) t.coeff *= inv;
          for (auto& t : done) t.coeff *= inv;
        }
      }
    }
    head = 0;
  }
  return done;
}

Polynomial to_polynomial(const VariableSpace& space, Terms t) {
  return Polynomial(space, std::move(t));
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
  unsigned sugar;
};

class Buchberger {
 public:
  Buchberger(const VariableSpace& space, MonomialOrder order, BudgetGuard& guard,
             EliminationStats& stats)
      : space_(space), cmp_{order, space.dimension()}, guard_(guard), stats_(stats) {}

  void add_input(const Polynomial& p) {
    Terms t = sorted_terms(p, cmp_);
    make_primitive(t);
    t = reduce(std::move(t), basis_, cmp_, ReduceMode::FractionFree, &guard_);
    if (t.empty()) return;
    make_primitive(t);
    unsigned sugar = 0;
    for (const auto& x : t) sugar = std::max(sugar, x.mono.total_degree());
    update({std::move(t), sugar, true});
  }

  void run() {
    while (!pairs_.empty()) {
      guard_.tick();
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        return cmp_.greater(b.lcm, a.lcm);
      });
      Pair p = *best;
      *best = pairs_.back();
      pairs_.pop_back();
      Terms s = spoly(basis_[p.i], basis_[p.j], p.lcm);
      ++stats_.pairs_reduced;
      s = reduce(std::move(s), basis_, cmp_, ReduceMode::FractionFree, &guard_);
      if (s.empty()) continue;
      make_primitive(s);
      update({std::move(s), p.sugar, true});
    }
  }

  std::vector<Polynomial> reduced_basis() {
    // Minimal basis: active elements already have pairwise non-dividing
    // leading monomials except for duplicates.
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (!basis_[k].active) continue;
      bool redundant = false;
      for (std::size_t o = 0; o < basis_.size() && !redundant; ++o) {
        if (o == k || !basis_[o].active) continue;
        if (basis_[o].lm().divides(basis_[k].lm()) &&
            (basis_[o].lm() != basis_[k].lm() || o < k)) {
          redundant = true;
        }
      }
      if (redundant) {
        basis_[k].active = false;
      } else {
        keep.push_back(k);
      }
    }
    for (auto k : keep) {
      Terms tail(basis_[k].terms.begin() + 1, basis_[k].terms.end());
      Terms head{basis_[k].terms.front()};
      Terms reduced_tail = reduce(std::move(tail), basis_, cmp_, ReduceMode::Exact, &guard_, k);
      head.insert(head.end(), std::make_move_iterator(reduced_tail.begin()),
                  std::make_move_iterator(reduced_tail.end()));
      basis_[k].terms = std::move(head);
    }
    std::vector<Polynomial> out;
    for (auto k : keep) {
      Terms t = basis_[k].terms;
      Rational inv = 1 / t.front().coeff;
      for (auto& x : t) x.coeff *= inv;
      out.push_back(to_polynomial(space_, std::move(t)));
    }
    std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
      return cmp_.greater(leading_term(b, cmp_.order).mono, leading_term(a, cmp_.order).mono);
    });
    stats_.basis_size = out.size();
    return out;
  }

 private:
  Terms spoly(const GPoly& f, const GPoly& g, const Monomial& l) const {
    Integer c;
    mpz_gcd(c.get_mpz_t(), f.lc().get_num_mpz_t(), g.lc().get_num_mpz_t());
    Rational a(g.lc().get_num() / c);
    Rational b(f.lc().get_num() / c);
    Terms fs;
    Monomial mf = quotient(l, f.lm());
    fs.reserve(f.terms.size() - 1);
    for (std::size_t k = 1; k < f.terms.size(); ++k) {
      fs.push_back({f.terms[k].mono * mf, f.terms[k].coeff * a});
    }
    return combine(fs, 0, Rational(1), g.terms, 1, quotient(l, g.lm()), b, cmp_);
  }

  // Gebauer-Moeller installation of a new basis element.
  void update(GPoly h) {
    const std::size_t hi = basis_.size();
    basis_.push_back(std::move(h));
    const GPoly& hp = basis_[hi];

    struct Cand {
      std::size_t g;
      Monomial lcm;
      bool coprime;
      bool dead = false;
    };
    std::vector<Cand> c;
    for (std::size_t g = 0; g < hi; ++g) {
      if (!basis_[g].active) continue;
      c.push_back({g, lcm(hp.lm(), basis_[g].lm()), coprime(hp.lm(), basis_[g].lm())});
    }
    // Chain criterion among new pairs: drop (h,g1) if another (h,g2) has a
    // strictly dividing lcm; among equal lcms keep one, preferring coprime.
    std::vector<Cand> d;
    for (std::size_t a = 0; a < c.size(); ++a) {
      bool drop = false;
      for (std::size_t b = 0; b < c.size() && !drop; ++b) {
        if (a == b) continue;
        if (c[b].lcm.divides(c[a].lcm)) {
          if (c[b].lcm != c[a].lcm) {
            drop = true;
          } else if (!c[a].coprime && (c[b].coprime || b < a)) {
            drop = true;
          } else if (c[a].coprime && c[b].coprime && b < a) {
            drop = true;
          }
        }
      }
      if (!drop) d.push_back(c[a]);
    }
    // Old pairs made redundant by h.
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (const auto& p : pairs_) {
      if (hp.lm().divides(p.lcm) && lcm(basis_[p.i].lm(), hp.lm()) != p.lcm &&
          lcm(basis_[p.j].lm(), hp.lm()) != p.lcm) {
        ++stats_.pairs_skipped;
        continue;
      }
      kept.push_back(p);
    }
    pairs_ = std::move(kept);
    stats_.pairs_skipped += c.size() - d.size();
    for (const auto& x : d) {
      if (x.coprime) {
        ++stats_.pairs_skipped;  // product criterion
        continue;
      }
      const GPoly& g = basis_[x.g];
      unsigned ldeg = x.lcm.total_degree();
      unsigned sugar = std::max(hp.sugar + ldeg - hp.lm().total_degree(),
                                g.sugar + ldeg - g.lm().total_degree());
      pairs_.push_back({x.g, hi, x.lcm, sugar});
    }
    for (std::size_t g = 0; g < hi; ++g) {
      if (basis_[g].active && hp.lm().divides(basis_[g].lm())) basis_[g].active = false;
    }
  }

  VariableSpace space_;
  OrderCmp cmp_;
  BudgetGuard& guard_;
  EliminationStats& stats_;
  std::vector<GPoly> basis_;
  std::vector<Pair> pairs_;
};

}  // namespace

const Term& leading_term(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) throw DomainError("leading term of the zero polynomial");
  const std::size_t dim = p.space().dimension();
  const Term* best = &p.terms().front();
  for (const auto& t : p.terms()) {
    if (order.compare(t.mono, best->mono, dim) > 0) best = &t;
  }
  return *best;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  const Term& lf = leading_term(f, order);
  const Term& lg = leading_term(g, order);
  Monomial l = lcm(lf.mono, lg.mono);
  return f.scaled(quotient(l, lf.mono), 1 / lf.coeff) - g.scaled(quotient(l, lg.mono), 1 / lg.coeff);
}

Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> basis,
                       const MonomialOrder& order) {
  OrderCmp cmp{order, p.space().dimension()};
  std::vector<GPoly> b;
  for (const auto& g : basis) {
    if (g.is_zero()) throw DomainError("zero polynomial in reduction basis");
    if (!(g.space() == p.space())) throw StructuralError("basis in a different space");
    b.push_back({sorted_terms(g, cmp), 0, true});
  }
  return to_polynomial(p.space(), reduce(sorted_terms(p, cmp), b, cmp, ReduceMode::Exact, nullptr));
}

std::vector<Polynomial> buchberger(const PolySystem& system, const MonomialOrder& order,
                                   BudgetGuard& guard, EliminationStats& stats) {
  Buchberger bb(system.space(), order, guard, stats);
  for (const auto& p : system.polys) {
    if (!p.is_zero()) bb.add_input(p);
  }
  bb.run();
  return bb.reduced_basis();
}

std::vector<Polynomial> buchberger(const PolySystem& system, const MonomialOrder& order,
                                   const Budget& budget, EliminationStats* stats) {
  EliminationStats local;
  EliminationStats& st = stats ? *stats : local;
  BudgetGuard guard(budget, &st);
  return buchberger(system, order, guard, st);
}

}  // namespace shadow4d
