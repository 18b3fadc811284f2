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


#include "shadow4d/expr.hpp"

#include <cctype>
#include <string>

#include "shadow4d/error.hpp"

namespace shadow4d {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VariableSpace& space) : text_(text), space_(space) {}

  Polynomial parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    Polynomial p = sum();
    skip_space();
    if (!at_end()) fail(peek() == ')' ? "unbalanced ')'" : "unexpected character");
    return p;
  }

 private:
  Polynomial sum() {
    Polynomial acc = product();
    while (true) {
      skip_space();
      if (accept('+')) {
        acc += product();
      } else if (accept_minus()) {
        acc -= product();
      } else {
        return acc;
      }
    }
  }

  Polynomial product() {
    Polynomial acc = unary();
    while (true) {
      skip_space();
      if (accept('*')) {
        acc *= unary();
      } else if (peek() == '/') {
        auto [line, col] = location();
        ++pos_;
        Polynomial den = unary();
        if (!den.is_constant() || den.is_zero()) {
          throw ParseError("division only by a nonzero constant", line, col);
        }
        acc *= Rational(1 / den.constant_term());
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    skip_space();
    if (accept_minus()) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    skip_space();
    if (!accept('^')) return base;
    skip_space();
    auto [line, col] = location();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("exponent must be a non-negative integer", line, col);
    if (!at_end() && peek() == '.') {
      throw ParseError("exponent must be a non-negative integer", line, col);
    }
    std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 4) throw ParseError("exponent too large", line, col);
    return pow(base, static_cast<unsigned>(std::stoul(digits)));
  }

  Polynomial atom() {
    skip_space();
    if (at_end()) fail("unexpected end of expression");
    char c = peek();
    if (c == '(') {
      auto [line, col] = location();
      ++pos_;
      Polynomial inner = sum();
      skip_space();
      if (!accept(')')) throw ParseError("unbalanced '('", line, col);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      auto [line, col] = location();
      std::size_t start = pos_;
      while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) ++pos_;
      try {
        return Polynomial::constant(space_, parse_rational(text_.substr(start, pos_ - start)));
      } catch (const DomainError&) {
        throw ParseError("malformed number", line, col);
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      auto [line, col] = location();
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      if (!space_.contains(name)) {
        throw ParseError("unknown identifier '" + std::string(name) + "'", line, col);
      }
      return Polynomial::variable(space_, name);
    }
    fail("unexpected character");
  }

  // U+2212 MINUS SIGN is accepted so equations can be pasted from typeset text.
  bool accept_minus() {
    if (accept('-')) return true;
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return true;
    }
    return false;
  }

  bool accept(char c) {
    if (at_end() || peek() != c) return false;
    ++pos_;
    return true;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::pair<int, int> location() const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_; ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void fail(const std::string& what) const {
    auto [line, col] = location();
    throw ParseError(what, line, col);
  }

  std::string_view text_;
  const VariableSpace& space_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_expression(std::string_view text, const VariableSpace& space) {
  return Parser(text, space).parse();
}

}  // namespace shadow4d
