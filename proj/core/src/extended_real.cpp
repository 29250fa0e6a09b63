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

#include "icbounds/extended_real.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace icb {

ExtendedReal::ExtendedReal(double v) {
  if (std::isnan(v)) {
    kind_ = Kind::indeterminate;
  } else if (std::isinf(v)) {
    kind_ = v > 0 ? Kind::pos_inf : Kind::neg_inf;
  } else {
    value_ = v;
  }
}

double ExtendedReal::value() const {
  if (kind_ != Kind::finite) throw std::logic_error("ExtendedReal::value on non-finite " + to_string());
  return value_;
}

double ExtendedReal::as_double() const {
  switch (kind_) {
    case Kind::finite: return value_;
    case Kind::pos_inf: return std::numeric_limits<double>::infinity();
    case Kind::neg_inf: return -std::numeric_limits<double>::infinity();
    case Kind::indeterminate: break;
  }
  throw std::logic_error("ExtendedReal::as_double on indeterminate");
}

ExtendedReal ExtendedReal::operator-() const {
  switch (kind_) {
    case Kind::finite: return ExtendedReal(-value_);
    case Kind::pos_inf: return neg_infinity();
    case Kind::neg_inf: return pos_infinity();
    case Kind::indeterminate: break;
  }
  return indeterminate();
}

ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
  using K = ExtendedReal::Kind;
  if (a.kind_ == K::indeterminate || b.kind_ == K::indeterminate) return ExtendedReal::indeterminate();
  if ((a.kind_ == K::pos_inf && b.kind_ == K::neg_inf) || (a.kind_ == K::neg_inf && b.kind_ == K::pos_inf))
    return ExtendedReal::indeterminate();
  if (a.kind_ != K::finite) return a;
  if (b.kind_ != K::finite) return b;
  return ExtendedReal(a.value_ + b.value_);
}

bool at_least(ExtendedReal a, ExtendedReal b) {
  if (a.is_indeterminate() || b.is_indeterminate()) return false;
  return a.as_double() >= b.as_double();
}

std::string ExtendedReal::to_string() const {
  switch (kind_) {
    case Kind::pos_inf: return "inf";
    case Kind::neg_inf: return "-inf";
    case Kind::indeterminate: return "indeterminate";
    case Kind::finite: break;
  }
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

ExtendedReal ExtendedReal::from_string(const std::string& s) {
  if (s == "inf" || s == "+inf") return pos_infinity();
  if (s == "-inf") return neg_infinity();
  if (s == "indeterminate") return indeterminate();
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("ExtendedReal: cannot parse '" + s + "'");
  return ExtendedReal(v);
}

}  // namespace icb
