// Copyright 2026 The permvqe Authors
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

namespace permvqe {

/// Malformed text input (Pauli files, FCIDUMP, configs). Carries the
/// offending line number when one is known (0 otherwise).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  /// Prefixes `context` (typically a path) and keeps the line number.
  ParseError(const std::string& context, const ParseError& inner)
      : std::runtime_error(context + ": " + inner.what()), line_(inner.line()) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Operands whose qubit counts or sizes disagree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request beyond a configured size cap (dense matrices, brute force).
class LimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace permvqe
