// Copyright 2026 The histnorm Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace histnorm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file (dataset, lexicon, tag map, tagged corpus).
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  explicit FormatError(const std::string& what) : Error(what), line_(0) {}

  /// 1-based line number, or 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Precondition violated by a caller (bad argument, empty input, range).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Tensor shapes incompatible with the requested op.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure during training (NaN/Inf loss or gradient).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace histnorm
