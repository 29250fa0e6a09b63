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

#include <string>

namespace icb {

/// Real number extended with +/-infinity and an explicit indeterminate
/// state (the result of inf - inf). Never holds NaN.
class ExtendedReal {
 public:
  enum class Kind { finite, pos_inf, neg_inf, indeterminate };

  constexpr ExtendedReal() = default;
  ExtendedReal(double v);  // NOLINT: implicit from finite doubles and +/-inf

  static constexpr ExtendedReal pos_infinity() { return ExtendedReal(Kind::pos_inf); }
  static constexpr ExtendedReal neg_infinity() { return ExtendedReal(Kind::neg_inf); }
  static constexpr ExtendedReal indeterminate() { return ExtendedReal(Kind::indeterminate); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_indeterminate() const { return kind_ == Kind::indeterminate; }
  /// Finite value; throws std::logic_error otherwise.
  double value() const;
  /// Finite value, +/-inf as IEEE infinities; indeterminate throws.
  double as_double() const;

  ExtendedReal operator-() const;
  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b);
  friend ExtendedReal operator-(ExtendedReal a, ExtendedReal b) { return a + (-b); }

  /// a >= b in the extended order; false whenever either side is indeterminate.
  friend bool at_least(ExtendedReal a, ExtendedReal b);

  std::string to_string() const;
  static ExtendedReal from_string(const std::string& s);

  bool operator==(const ExtendedReal&) const = default;

 private:
  constexpr explicit ExtendedReal(Kind k) : kind_(k) {}
  Kind kind_ = Kind::finite;
  double value_ = 0.0;
};

}  // namespace icb
