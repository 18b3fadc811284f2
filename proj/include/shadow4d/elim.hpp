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

// Elimination of auxiliary variables from polynomial systems: Buchberger
// with a block order, the Dixon resultant, and a Sylvester fast path after
// solving the linear part of the system.

#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shadow4d/error.hpp"
#include "shadow4d/poly.hpp"

namespace shadow4d {

enum class Backend { Auto, Groebner, Dixon, Sylvester };

std::string_view to_string(Backend b);
/// Accepts "auto", "sylvester-auto", "groebner", "dixon", "sylvester".
Backend parse_backend(std::string_view name);

/// Zero means unlimited.
struct Budget {
  std::chrono::milliseconds time_limit{0};
  std::uint64_t step_limit = 0;

  static Budget seconds(double s) {
    return {std::chrono::milliseconds(static_cast<std::int64_t>(s * 1000.0)), 0};
  }
};

struct EliminationStats {
  Backend backend = Backend::Auto;
  double elapsed_ms = 0.0;
  std::uint64_t steps = 0;
  std::size_t basis_size = 0;
  std::size_t pairs_reduced = 0;
  std::size_t pairs_skipped = 0;
  std::size_t matrix_rows = 0;
  std::size_t matrix_cols = 0;
  std::size_t presubstituted = 0;
  bool presubstitution_fallback = false;
  bool dixon_square = false;
  bool dixon_maximal_minor = false;
  bool multiple_generators = false;
  unsigned eliminant_degree = 0;
  std::size_t eliminant_terms = 0;
};

/// One-line `key=value` record (the bench row format).
std::string to_record(const EliminationStats& s);

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, EliminationStats partial)
      : Error(what), partial_(partial) {}
  const EliminationStats& partial() const { return partial_; }

 private:
  EliminationStats partial_;
};

/// Tracks time and step consumption of one elimination.
class BudgetGuard {
 public:
  BudgetGuard(const Budget& budget, EliminationStats* stats);
  void tick(std::uint64_t n = 1);
  double elapsed_ms() const;

 private:
  Budget budget_;
  EliminationStats* stats_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t steps_ = 0;
};

struct PolySystem {
  std::vector<Polynomial> polys;

  /// Throws StructuralError if empty or spaces differ.
  const VariableSpace& space() const;
};

struct EliminationTask {
  PolySystem system;
  std::vector<std::string> eliminate;
  Backend backend = Backend::Auto;
  Budget budget;

  /// Variables of the system space not eliminated, in space order.
  std::vector<std::string> keep() const;
  /// Throws StructuralError when eliminated names are unknown or repeated.
  void validate() const;
};

enum class EliminationStatus { Eliminant, NoRelation };

struct EliminationResult {
  EliminationStatus status = EliminationStatus::Eliminant;
  /// Normalized primitive, in the space of kept variables. Zero on NoRelation.
  Polynomial eliminant;
  Backend backend_used = Backend::Auto;
  /// Factors stripped from the raw eliminant (denominator components).
  std::vector<Polynomial> extraneous_cleared;
  EliminationStats stats;
};

/// Fully reduces p modulo basis (exact rational division steps).
Polynomial normal_form(const Polynomial& p, std::span<const Polynomial> basis,
                       const MonomialOrder& order);

/// Reduced Groebner basis (monic) using the product and chain criteria.
std::vector<Polynomial> buchberger(const PolySystem& system, const MonomialOrder& order,
                                   const Budget& budget = {}, EliminationStats* stats = nullptr);
std::vector<Polynomial> buchberger(const PolySystem& system, const MonomialOrder& order,
                                   BudgetGuard& guard, EliminationStats& stats);

/// Leading term of p under `order`.
const Term& leading_term(const Polynomial& p, const MonomialOrder& order);

/// S-polynomial of f and g under `order`.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);

struct Presubstitution {
  EliminationTask task;
  /// Non-constant denominators cleared while substituting.
  std::vector<Polynomial> denominators;
  std::vector<std::string> solved;
  bool fallback = false;
};

/// Solves equations that are linear in an eliminated variable and
/// substitutes the solution into the rest of the system.
Presubstitution linear_presubstitution(const EliminationTask& task);

EliminationResult eliminate_groebner(const EliminationTask& task);
EliminationResult dixon_resultant(const EliminationTask& task);
/// Dispatches on task.backend; Auto is the presubstitution + Sylvester policy.
EliminationResult eliminate(const EliminationTask& task);

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Fraction-free determinant. Entries must share one space.
Polynomial bareiss_determinant(PolyMatrix m, const Budget& budget = {});
Polynomial bareiss_determinant(PolyMatrix m, BudgetGuard& guard);

PolyMatrix sylvester_matrix(const Polynomial& p, const Polynomial& q, std::size_t var);
/// Resultant of p and q with respect to `var`: the determinant of
/// sylvester_matrix(p, q, var), computed fraction-free by the subresultant
/// PRS. Both must have positive degree in `var`.
Polynomial sylvester_resultant(const Polynomial& p, const Polynomial& q, std::string_view var,
                               const Budget& budget = {});
Polynomial sylvester_resultant(const Polynomial& p, const Polynomial& q, std::size_t var,
                               BudgetGuard& guard);

}  // namespace shadow4d
