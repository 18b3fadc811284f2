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

// Exact sparse multivariate polynomials over the rationals.

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shadow4d/rational.hpp"

namespace shadow4d {

inline constexpr std::size_t kMaxVariables = 16;

/// Ordered, immutable list of variable names. Copies share storage;
/// equality compares names.
class VariableSpace {
 public:
  VariableSpace();
  explicit VariableSpace(std::vector<std::string> names);
  VariableSpace(std::initializer_list<std::string> names)
      : VariableSpace(std::vector<std::string>(names)) {}

  std::size_t dimension() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  std::span<const std::string> names() const { return *names_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Like index_of but throws StructuralError for unknown names.
  std::size_t require(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  /// New space with `extra` appended. Names must stay unique.
  VariableSpace extended(const std::vector<std::string>& extra) const;
  /// New space with `name` removed.
  VariableSpace without(std::string_view name) const;

  bool operator==(const VariableSpace& other) const;

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// Exponent vector. Entries beyond the owning space's dimension stay zero.
struct Monomial {
  std::array<std::uint16_t, kMaxVariables> exp{};

  unsigned total_degree() const;
  bool is_one() const;
  /// True if this monomial divides `other`.
  bool divides(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Requires a.divides(b); returns b / a.
  friend Monomial quotient(const Monomial& b, const Monomial& a);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool coprime(const Monomial& a, const Monomial& b);

  /// Lexicographic with variable 0 most significant.
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Total monomial order. The block kind compares the first `split`
/// variables (the eliminated block) by grevlex, then the rest by grevlex.
struct MonomialOrder {
  enum class Kind { Lex, Grevlex, Block };
  Kind kind = Kind::Lex;
  std::size_t split = 0;

  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder grevlex() { return {Kind::Grevlex, 0}; }
  static MonomialOrder block(std::size_t split) { return {Kind::Block, split}; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b, std::size_t dim) const;
};

/// Sparse polynomial. Terms are kept sorted by descending lex order with no
/// zero coefficients; the zero polynomial has no terms.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(VariableSpace space) : space_(std::move(space)) {}
  /// Builds from arbitrary terms; sorts, merges duplicates and drops zeros.
  Polynomial(VariableSpace space, std::vector<Term> terms);

  static Polynomial constant(VariableSpace space, const Rational& c);
  static Polynomial variable(VariableSpace space, std::string_view name);
  static Polynomial variable(VariableSpace space, std::size_t index);

  const VariableSpace& space() const { return space_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant coefficient (zero if absent).
  Rational constant_term() const;
  /// Lex-leading term; requires a nonzero polynomial.
  const Term& leading_term() const { return terms_.front(); }

  Polynomial& operator+=(const Polynomial& q);
  Polynomial& operator-=(const Polynomial& q);
  Polynomial& operator*=(const Polynomial& q);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }
  friend Polynomial operator-(Polynomial p);

  /// Value equality; spaces must match by names.
  friend bool operator==(const Polynomial& p, const Polynomial& q);

  /// Multiplies by a monomial times a scalar.
  Polynomial scaled(const Monomial& m, const Rational& c) const;

 private:
  friend class PolynomialBuilder;
  VariableSpace space_;
  std::vector<Term> terms_;
};

/// Accumulates terms in any order and produces a canonical Polynomial.
class PolynomialBuilder {
 public:
  explicit PolynomialBuilder(VariableSpace space) : space_(std::move(space)) {}
  void add(const Monomial& m, const Rational& c);
  Polynomial build();

 private:
  VariableSpace space_;
  std::map<Monomial, Rational, std::greater<>> acc_;
};

enum class ArithmeticOp { Add, Sub, Mul };

/// Checked binary arithmetic (throws StructuralError on mismatched spaces).
Polynomial arithmetic(const Polynomial& p, const Polynomial& q, ArithmeticOp op);
Polynomial pow(const Polynomial& p, unsigned k);

Polynomial partial(const Polynomial& p, std::size_t var);
std::vector<Polynomial> gradient(const Polynomial& p);

/// A rational-function binding num/den for one variable.
struct Binding {
  Polynomial num;
  Polynomial den;
};

/// Result of substitution with cleared denominators: `value` equals the
/// substituted polynomial times the product of den^power over `cleared`.
struct Substituted {
  Polynomial value;
  std::vector<std::pair<Polynomial, unsigned>> cleared;
};

/// Substitutes var -> num/den for each binding. Bindings that share an equal
/// denominator are cleared together with the least sufficient power.
Substituted substitute(const Polynomial& p, const std::map<std::string, Binding>& bindings);
/// Polynomial substitution (no denominators).
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings);

/// Homogenizes with `new_var`, appending it to the space when absent.
Polynomial homogenize(const Polynomial& p, std::string_view new_var);
/// Sets `var` to 1 and removes it from the space.
Polynomial dehomogenize(const Polynomial& p, std::string_view var);
bool is_homogeneous(const Polynomial& p);

/// Integer coefficients with content 1 and positive lex-leading coefficient.
Polynomial normalize_primitive(const Polynomial& p);

/// Total degree; throws DomainError for the zero polynomial.
unsigned degree(const Polynomial& p);
std::size_t term_count(const Polynomial& p);
/// Degree in one variable (0 for the zero polynomial).
unsigned degree_in(const Polynomial& p, std::size_t var);
/// Coefficients c_k with p = sum c_k * var^k; c_k free of var.
std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var);
/// Set of variable indices that occur in p.
std::vector<std::size_t> used_variables(const Polynomial& p);
bool involves(const Polynomial& p, std::size_t var);

/// Re-expresses p in `target`, matching variables by name. Every variable
/// used by p must exist in target.
Polynomial embed(const Polynomial& p, const VariableSpace& target);

Rational evaluate(const Polynomial& p, std::span<const Rational> point);
double evaluate(const Polynomial& p, std::span<const double> point);

/// Exact quotient p / q, or nullopt when q does not divide p.
std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& q);
/// Strips every power of `factor` dividing p; returns the count removed.
unsigned strip_factor(Polynomial& p, const Polynomial& factor);

/// Greatest common divisor over Q, normalized primitive. gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& p, const Polynomial& q);

/// Canonical text: descending lex, explicit `*` and `^`.
std::string to_string(const Polynomial& p);

}  // namespace shadow4d
