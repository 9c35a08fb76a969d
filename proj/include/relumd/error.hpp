// Copyright 2026 The relumd Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RELUMD_ERROR_HPP_
#define RELUMD_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relumd {

// Base class for every error raised by the library. The C API maps each
// subclass onto a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimension mismatch, invalid configuration, out-of-range parameter.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input violates a mathematical precondition (negative data, zero matrix,
// rank-deficient factor where full rank is a hypothesis).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed file content. line() is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A factorization produced no usable result (e.g. empty range basis).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Raised when an extrapolation candidate is requested from an iterate whose
// residual is already exactly zero.
class AlreadyConverged : public Error {
 public:
  using Error::Error;
};

}  // namespace relumd

#endif  // RELUMD_ERROR_HPP_
