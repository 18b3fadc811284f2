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

#include <stdexcept>
#include <string>

namespace shadow4d {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched variable spaces, unknown variables, malformed tasks.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Operation undefined for the given value (degree of zero, etc.).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DegeneratePolarError : public Error {
 public:
  using Error::Error;
};

class TangencyDegeneracyError : public Error {
 public:
  using Error::Error;
};

class ImproperPointError : public Error {
 public:
  using Error::Error;
};

class DegenerateSystemError : public Error {
 public:
  using Error::Error;
};

class PrecisionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        message_(what),
        line_(line),
        column_(column) {}

  /// The message without the location prefix.
  const std::string& message() const { return message_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

}  // namespace shadow4d
