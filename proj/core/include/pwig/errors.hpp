// Copyright 2026 The pwig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace pwig {

// Root of the library's exception hierarchy. The CLI maps each subclass onto
// a fixed exit code, so new error kinds should derive from one of these.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tensor or layer shapes that do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf produced or consumed somewhere it is not allowed.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Malformed model documents, CSV tables, NetPBM files, flag values.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Caller violated an operation's precondition (index out of range, etc).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace pwig
