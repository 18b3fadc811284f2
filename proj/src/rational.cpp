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

#include "shadow4d/rational.hpp"

#include <cctype>
#include <cmath>

#include "shadow4d/error.hpp"

namespace shadow4d {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw DomainError("malformed rational '" + std::string(text) + "'");
    }
    Integer d{std::string(den)};
    if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer(std::string(num)), d);
    value.canonicalize();
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw DomainError("malformed decimal '" + std::string(text) + "'");
    }
    Integer num(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    value = Rational(num, den);
    value.canonicalize();
  } else {
    if (!all_digits(s)) throw DomainError("malformed number '" + std::string(text) + "'");
    value = Rational(Integer(std::string(s)));
  }
  return negative ? Rational(-value) : value;
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite coordinate");
  Rational r(v);  // exact: mpq_set_d is exact for finite doubles
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace shadow4d
