// Copyright 2026 The icbounds Authors
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

namespace icb {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Incompatible or overflowing dimensions, unknown subsystem labels.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An input violates the invariants of its type (non-Hermitian, non-unitary,
// not PSD, bad trace, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A numerical routine did not reach its target accuracy.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (unreadable file, invalid JSON syntax).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace icb
