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


// Polynomial expression parser for scene files and command-line input.
//
// Grammar, loosest binding first:
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' integer)?
//   atom    := number | identifier | '(' sum ')'
// The right operand of '/' must evaluate to a nonzero constant.

#pragma once

#include <string_view>

#include "shadow4d/poly.hpp"

namespace shadow4d {

/// Parses `text` over `space`. Throws ParseError with a 1-based line and
/// column on malformed input or unknown identifiers.
Polynomial parse_expression(std::string_view text, const VariableSpace& space);

}  // namespace shadow4d
