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

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace shadow4d {

using Rational = mpq_class;
using Integer = mpz_class;

/// Exact point with rational coordinates.
using Point = std::vector<Rational>;

/// Parses "7", "-3/4", "1.5", "-0.125" exactly. Throws DomainError.
Rational parse_rational(std::string_view text);

/// Exact conversion of a finite double (every double is a dyadic rational).
Rational rational_from_double(double v);

inline int sign(const Rational& r) { return sgn(r); }

std::string to_string(const Rational& r);

}  // namespace shadow4d
