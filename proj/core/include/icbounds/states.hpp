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

#include <span>
#include <string>

#include "icbounds/extended_real.hpp"
#include "icbounds/matkernel.hpp"
#include "icbounds/tolerances.hpp"

namespace icb {

/// Hermitian, positive-semidefinite, unit-trace matrix on a labeled tensor
/// factor structure. Validated on construction; immutable afterwards.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix mat, DimShape shape, const Tolerances& tol = {});
  /// Single-factor state labeled "S".
  explicit DensityMatrix(ComplexMatrix mat, const Tolerances& tol = {});

  static DensityMatrix maximally_mixed(const DimShape& shape);
  static DensityMatrix pure(const ComplexVector& psi, const DimShape& shape, const Tolerances& tol = {});
  /// |k><k| in dimension d.
  static DensityMatrix basis_state(std::size_t d, std::size_t k, const std::string& label = "S");

  const ComplexMatrix& matrix() const { return mat_; }
  const DimShape& shape() const { return shape_; }
  std::size_t dim() const { return shape_.dim(); }

  /// Same matrix, new labels/factors (product must agree).
  DensityMatrix relabeled(DimShape shape) const;
  DensityMatrix marginal(std::span<const std::string> keep) const;
  DensityMatrix marginal(std::initializer_list<std::string> keep) const;
  DensityMatrix reordered(std::span<const std::string> order) const;

  /// Eigenvalues (descending) with kernel clamped to zero.
  RealVector spectrum(const Tolerances& tol = {}) const;

 private:
  struct Trusted {};
  DensityMatrix(Trusted, ComplexMatrix mat, DimShape shape) : mat_(std::move(mat)), shape_(std::move(shape)) {}
  friend DensityMatrix tensor(const DensityMatrix&, const DensityMatrix&);

  ComplexMatrix mat_;
  DimShape shape_;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// -tr[rho log rho] in nats.
double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol = {});
/// Entropy of a probability vector (zeros contribute nothing).
double shannon_entropy(const RealVector& p, const Tolerances& tol = {});

/// tr[a log b]: -inf when `a` carries more than support_tol weight on the
/// kernel of `b`, otherwise the finite value computed on supp(b).
ExtendedReal log_trace(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol = {});

/// D[a||b] = tr[a log a] - tr[a log b]; +inf on support mismatch.
ExtendedReal relative_entropy(const DensityMatrix& a, const DensityMatrix& b, const Tolerances& tol = {});

/// S(rho_P) + S(rho_Q) - S(rho) with Q the complement of `part_p`.
double mutual_information(const DensityMatrix& rho, std::span<const std::string> part_p,
                          const Tolerances& tol = {});
double mutual_information(const DensityMatrix& rho, std::initializer_list<std::string> part_p,
                          const Tolerances& tol = {});

/// Validation helper used at API boundaries: throws ValidationError with
/// `what` in the message when `m` is not a density matrix.
void require_density(const ComplexMatrix& m, const std::string& what, const Tolerances& tol = {});

}  // namespace icb
