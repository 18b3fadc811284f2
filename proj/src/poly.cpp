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

#include "shadow4d/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "shadow4d/error.hpp"

namespace shadow4d {

// ---------------------------------------------------------------------------
// VariableSpace

VariableSpace::VariableSpace() : names_(std::make_shared<const std::vector<std::string>>()) {}

VariableSpace::VariableSpace(std::vector<std::string> names) {
  if (names.size() > kMaxVariables) {
    throw StructuralError("variable space exceeds " + std::to_string(kMaxVariables) + " variables");
  }
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw StructuralError("empty variable name");
    if (!seen.insert(n).second) throw StructuralError("duplicate variable '" + n + "'");
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> VariableSpace::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i) {
    if ((*names_)[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t VariableSpace::require(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw StructuralError("unknown variable '" + std::string(name) + "'");
  return *i;
}

VariableSpace VariableSpace::extended(const std::vector<std::string>& extra) const {
  std::vector<std::string> all(names_->begin(), names_->end());
  all.insert(all.end(), extra.begin(), extra.end());
  return VariableSpace(std::move(all));
}

VariableSpace VariableSpace::without(std::string_view name) const {
  std::vector<std::string> all;
  for (const auto& n : *names_) {
    if (n != name) all.push_back(n);
  }
  return VariableSpace(std::move(all));
}

bool VariableSpace::operator==(const VariableSpace& other) const {
  return names_ == other.names_ || *names_ == *other.names_;
}

// ---------------------------------------------------------------------------
// Monomial

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (auto e : exp) d += e;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exp.begin(), exp.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (exp[i] > other.exp[i]) return false;
  }
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) r.exp[i] = a.exp[i] + b.exp[i];
  return r;
}

Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) r.exp[i] = b.exp[i] - a.exp[i];
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) r.exp[i] = std::max(a.exp[i], b.exp[i]);
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (a.exp[i] != 0 && b.exp[i] != 0) return false;
  }
  return true;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto e : m.exp) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------------------
// MonomialOrder

namespace {

std::strong_ordering grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo,
                                   std::size_t hi) {
  unsigned da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a.exp[i];
    db += b.exp[i];
  }
  if (da != db) return da <=> db;
  for (std::size_t i = hi; i-- > lo;) {
    if (a.exp[i] != b.exp[i]) return b.exp[i] <=> a.exp[i];
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b,
                                            std::size_t dim) const {
  switch (kind) {
    case Kind::Lex:
      return a <=> b;
    case Kind::Grevlex:
      return grevlex_range(a, b, 0, dim);
    case Kind::Block: {
      auto c = grevlex_range(a, b, 0, split);
      if (c != 0) return c;
      return grevlex_range(a, b, split, dim);
    }
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Polynomial

namespace {

void check_same_space(const Polynomial& p, const Polynomial& q) {
  if (!(p.space() == q.space())) {
    throw StructuralError("polynomials live in different variable spaces");
  }
}

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Rational c = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

void check_dimension(const VariableSpace& space, const Monomial& m) {
  for (std::size_t i = space.dimension(); i < kMaxVariables; ++i) {
    if (m.exp[i] != 0) throw StructuralError("monomial uses a variable outside its space");
  }
}

}  // namespace

Polynomial::Polynomial(VariableSpace space, std::vector<Term> terms) : space_(std::move(space)) {
  for (const auto& t : terms) check_dimension(space_, t.mono);
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.mono > b.mono; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coeff += t.coeff;
      if (terms_.back().coeff == 0) terms_.pop_back();
    } else if (t.coeff != 0) {
      terms_.push_back(std::move(t));
    }
  }
}

Polynomial Polynomial::constant(VariableSpace space, const Rational& c) {
  Polynomial p(std::move(space));
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::variable(VariableSpace space, std::string_view name) {
  auto i = space.require(name);
  return variable(std::move(space), i);
}

Polynomial Polynomial::variable(VariableSpace space, std::size_t index) {
  if (index >= space.dimension()) throw StructuralError("variable index out of range");
  Polynomial p(std::move(space));
  Monomial m;
  m.exp[index] = 1;
  p.terms_.push_back({m, Rational(1)});
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return Rational(0);
}

Polynomial& Polynomial::operator+=(const Polynomial& q) {
  check_same_space(*this, q);
  terms_ = merge(terms_, q.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q) {
  check_same_space(*this, q);
  terms_ = merge(terms_, q.terms_, true);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& q) {
  *this = *this * q;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

Polynomial operator-(Polynomial p) {
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial Polynomial::scaled(const Monomial& m, const Rational& c) const {
  Polynomial r(space_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  check_same_space(p, q);
  if (p.is_zero() || q.is_zero()) return Polynomial(p.space());
  if (p.size() == 1) return q.scaled(p.terms_[0].mono, p.terms_[0].coeff);
  if (q.size() == 1) return p.scaled(q.terms_[0].mono, q.terms_[0].coeff);
  const Polynomial& outer = p.size() <= q.size() ? p : q;
  const Polynomial& inner = p.size() <= q.size() ? q : p;
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(std::min<std::size_t>(outer.size() * inner.size(), 1u << 22));
  Rational prod;
  for (const auto& a : outer.terms_) {
    for (const auto& b : inner.terms_) {
      mpq_mul(prod.get_mpq_t(), a.coeff.get_mpq_t(), b.coeff.get_mpq_t());
      auto [it, inserted] = acc.try_emplace(a.mono * b.mono);
      if (inserted) {
        it->second = prod;
      } else {
        it->second += prod;
      }
    }
  }
  Polynomial r(p.space());
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) r.terms_.push_back({m, std::move(c)});
  }
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Term& a, const Term& b) { return a.mono > b.mono; });
  return r;
}

bool operator==(const Polynomial& p, const Polynomial& q) {
  if (!(p.space() == q.space()) || p.size() != q.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.terms_[i].mono != q.terms_[i].mono || p.terms_[i].coeff != q.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

void PolynomialBuilder::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = acc_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) acc_.erase(it);
  }
}

Polynomial PolynomialBuilder::build() {
  Polynomial p(space_);
  p.terms_.reserve(acc_.size());
  for (auto& [m, c] : acc_) {
    check_dimension(space_, m);
    p.terms_.push_back({m, std::move(c)});
  }
  acc_.clear();
  return p;
}

// ---------------------------------------------------------------------------
// Free functions

Polynomial arithmetic(const Polynomial& p, const Polynomial& q, ArithmeticOp op) {
  switch (op) {
    case ArithmeticOp::Add:
      return p + q;
    case ArithmeticOp::Sub:
      return p - q;
    case ArithmeticOp::Mul:
      return p * q;
  }
  return p;
}

Polynomial pow(const Polynomial& p, unsigned k) {
  Polynomial result = Polynomial::constant(p.space(), 1);
  Polynomial base = p;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Polynomial partial(const Polynomial& p, std::size_t var) {
  if (var >= p.space().dimension()) throw StructuralError("variable index out of range");
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    auto e = t.mono.exp[var];
    if (e == 0) continue;
    Term d{t.mono, t.coeff * e};
    d.mono.exp[var] = e - 1;
    terms.push_back(std::move(d));
  }
  return Polynomial(p.space(), std::move(terms));
}

std::vector<Polynomial> gradient(const Polynomial& p) {
  std::vector<Polynomial> g;
  g.reserve(p.space().dimension());
  for (std::size_t i = 0; i < p.space().dimension(); ++i) g.push_back(partial(p, i));
  return g;
}

namespace {

class PowerCache {
 public:
  explicit PowerCache(Polynomial base) : powers_{Polynomial::constant(base.space(), 1), base} {}
  const Polynomial& get(unsigned k) {
    while (powers_.size() <= k) powers_.push_back(powers_.back() * powers_[1]);
    return powers_[k];
  }

 private:
  std::vector<Polynomial> powers_;
};

}  // namespace

Substituted substitute(const Polynomial& p, const std::map<std::string, Binding>& bindings) {
  const auto& space = p.space();
  const std::size_t dim = space.dimension();

  struct Group {
    Polynomial den;
    std::vector<std::size_t> vars;
  };
  std::vector<Group> groups;
  std::vector<int> group_of(dim, -1);
  std::vector<std::optional<PowerCache>> num_pow(dim);

  for (const auto& [name, b] : bindings) {
    auto v = space.index_of(name);
    if (!v) throw StructuralError("binding targets unknown variable '" + name + "'");
    if (!(b.num.space() == space) || !(b.den.space() == space)) {
      throw StructuralError("binding for '" + name + "' lives in a different space");
    }
    if (b.den.is_zero()) throw DomainError("zero denominator in binding for '" + name + "'");
    Polynomial num = b.num;
    Polynomial den = b.den;
    if (den.is_constant()) {
      num *= Rational(1 / den.constant_term());
      den = Polynomial::constant(space, 1);
    }
    num_pow[*v].emplace(num);
    if (den.is_constant()) continue;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) { return g.den == den; });
    if (it == groups.end()) {
      groups.push_back({den, {}});
      it = std::prev(groups.end());
    }
    it->vars.push_back(*v);
    group_of[*v] = static_cast<int>(it - groups.begin());
  }

  std::vector<unsigned> clear_power(groups.size(), 0);
  for (const auto& t : p.terms()) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      unsigned e = 0;
      for (auto v : groups[g].vars) e += t.mono.exp[v];
      clear_power[g] = std::max(clear_power[g], e);
    }
  }
  std::vector<PowerCache> den_pow;
  for (const auto& g : groups) den_pow.emplace_back(g.den);

  Polynomial result(space);
  std::vector<Term> plain;
  for (const auto& t : p.terms()) {
    Monomial rest = t.mono;
    Polynomial factor = Polynomial::constant(space, t.coeff);
    std::vector<unsigned> used(groups.size(), 0);
    for (std::size_t v = 0; v < dim; ++v) {
      if (!num_pow[v] || t.mono.exp[v] == 0) continue;
      factor = factor * num_pow[v]->get(t.mono.exp[v]);
      if (group_of[v] >= 0) used[group_of[v]] += t.mono.exp[v];
      rest.exp[v] = 0;
    }
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (clear_power[g] > used[g]) factor = factor * den_pow[g].get(clear_power[g] - used[g]);
    }
    result += factor.scaled(rest, 1);
  }
  Substituted out{std::move(result), {}};
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (clear_power[g] > 0) out.cleared.emplace_back(groups[g].den, clear_power[g]);
  }
  return out;
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings) {
  std::map<std::string, Binding> b;
  for (const auto& [name, value] : bindings) {
    b.emplace(name, Binding{value, Polynomial::constant(p.space(), 1)});
  }
  return substitute(p, b).value;
}

Polynomial homogenize(const Polynomial& p, std::string_view new_var) {
  VariableSpace space = p.space();
  auto idx = space.index_of(new_var);
  if (!idx) {
    space = space.extended({std::string(new_var)});
    idx = space.dimension() - 1;
  }
  if (p.is_zero()) return Polynomial(space);
  unsigned d = degree(p);
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    Term h = t;
    h.mono.exp[*idx] += d - t.mono.total_degree();
    terms.push_back(std::move(h));
  }
  return Polynomial(space, std::move(terms));
}

Polynomial dehomogenize(const Polynomial& p, std::string_view var) {
  auto idx = p.space().require(var);
  VariableSpace space = p.space().without(var);
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    Term r{Monomial{}, t.coeff};
    std::size_t j = 0;
    for (std::size_t i = 0; i < p.space().dimension(); ++i) {
      if (i == idx) continue;
      r.mono.exp[j++] = t.mono.exp[i];
    }
    terms.push_back(std::move(r));
  }
  return Polynomial(space, std::move(terms));
}

bool is_homogeneous(const Polynomial& p) {
  if (p.is_zero()) return true;
  auto d = p.terms().front().mono.total_degree();
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [d](const Term& t) { return t.mono.total_degree() == d; });
}

Polynomial normalize_primitive(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("normalize_primitive of the zero polynomial");
  Integer l = 1;
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  Integer g = 0;
  for (const auto& t : p.terms()) {
    Integer n = t.coeff.get_num() * (l / t.coeff.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational scale(l, g);
  scale.canonicalize();
  if (p.leading_term().coeff < 0) scale = -scale;
  return p * scale;
}

unsigned degree(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("degree of the zero polynomial");
  unsigned d = 0;
  for (const auto& t : p.terms()) d = std::max(d, t.mono.total_degree());
  return d;
}

std::size_t term_count(const Polynomial& p) { return p.size(); }

unsigned degree_in(const Polynomial& p, std::size_t var) {
  unsigned d = 0;
  for (const auto& t : p.terms()) d = std::max<unsigned>(d, t.mono.exp[var]);
  return d;
}

std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var) {
  if (var >= p.space().dimension()) throw StructuralError("variable index out of range");
  std::vector<std::vector<Term>> buckets(degree_in(p, var) + 1);
  for (const auto& t : p.terms()) {
    Term c = t;
    c.mono.exp[var] = 0;
    buckets[t.mono.exp[var]].push_back(std::move(c));
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.emplace_back(p.space(), std::move(b));
  return out;
}

std::vector<std::size_t> used_variables(const Polynomial& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.space().dimension(); ++i) {
    if (involves(p, i)) out.push_back(i);
  }
  return out;
}

bool involves(const Polynomial& p, std::size_t var) {
  return std::any_of(p.terms().begin(), p.terms().end(),
                     [var](const Term& t) { return t.mono.exp[var] != 0; });
}

Polynomial embed(const Polynomial& p, const VariableSpace& target) {
  if (p.space() == target) return p;
  const std::size_t dim = p.space().dimension();
  std::vector<std::optional<std::size_t>> map(dim);
  for (std::size_t i = 0; i < dim; ++i) map[i] = target.index_of(p.space().name(i));
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) {
    Term r{Monomial{}, t.coeff};
    for (std::size_t i = 0; i < dim; ++i) {
      if (t.mono.exp[i] == 0) continue;
      if (!map[i]) {
        throw StructuralError("variable '" + p.space().name(i) + "' missing from target space");
      }
      r.mono.exp[*map[i]] = t.mono.exp[i];
    }
    terms.push_back(std::move(r));
  }
  return Polynomial(target, std::move(terms));
}

namespace {

template <typename T>
T evaluate_impl(const Polynomial& p, std::span<const T> point) {
  const std::size_t dim = p.space().dimension();
  if (point.size() != dim) throw StructuralError("point dimension does not match space");
  std::vector<std::vector<T>> powers(dim);
  for (std::size_t i = 0; i < dim; ++i) powers[i].push_back(T(1));
  T sum(0);
  for (const auto& t : p.terms()) {
    T value;
    if constexpr (std::is_same_v<T, double>) {
      value = t.coeff.get_d();
    } else {
      value = t.coeff;
    }
    for (std::size_t i = 0; i < dim; ++i) {
      auto e = t.mono.exp[i];
      if (e == 0) continue;
      auto& pw = powers[i];
      while (pw.size() <= e) pw.push_back(T(pw.back() * point[i]));
      value *= pw[e];
    }
    sum += value;
  }
  return sum;
}

}  // namespace

Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
  return evaluate_impl<Rational>(p, point);
}

double evaluate(const Polynomial& p, std::span<const double> point) {
  return evaluate_impl<double>(p, point);
}

std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& q) {
  check_same_space(p, q);
  if (q.is_zero()) throw DomainError("division by the zero polynomial");
  if (p.is_zero()) return Polynomial(p.space());
  const Term& lead = q.leading_term();
  if (q.size() == 1) {
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
      if (!lead.mono.divides(t.mono)) return std::nullopt;
      terms.push_back({quotient(t.mono, lead.mono), t.coeff / lead.coeff});
    }
    return Polynomial(p.space(), std::move(terms));
  }
  std::map<Monomial, Rational, std::greater<>> rem;
  for (const auto& t : p.terms()) rem.emplace_hint(rem.end(), t.mono, t.coeff);
  std::vector<Term> quo;
  Rational prod;
  while (!rem.empty()) {
    auto it = rem.begin();
    if (!lead.mono.divides(it->first)) return std::nullopt;
    Monomial qm = quotient(it->first, lead.mono);
    Rational qc = it->second / lead.coeff;
    rem.erase(it);
    for (std::size_t k = 1; k < q.size(); ++k) {
      const auto& t = q.terms()[k];
      mpq_mul(prod.get_mpq_t(), qc.get_mpq_t(), t.coeff.get_mpq_t());
      auto [jt, inserted] = rem.try_emplace(qm * t.mono);
      if (inserted) {
        jt->second = -prod;
      } else {
        jt->second -= prod;
        if (jt->second == 0) rem.erase(jt);
      }
    }
    quo.push_back({qm, std::move(qc)});
  }
  Polynomial r(p.space());
  r = Polynomial(p.space(), std::move(quo));
  return r;
}

unsigned strip_factor(Polynomial& p, const Polynomial& factor) {
  if (factor.is_constant() || p.is_zero()) return 0;
  unsigned count = 0;
  while (auto q = divide_exact(p, factor)) {
    p = std::move(*q);
    ++count;
  }
  return count;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational mag = abs(t.coeff);
    bool negative = t.coeff < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool one = t.mono.is_one();
    bool need_star = false;
    if (one || mag != 1) {
      out << mag.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < p.space().dimension(); ++i) {
      auto e = t.mono.exp[i];
      if (e == 0) continue;
      if (need_star) out << '*';
      out << p.space().name(i);
      if (e > 1) out << '^' << e;
      need_star = true;
    }
  }
  return out.str();
}

}  // namespace shadow4d
