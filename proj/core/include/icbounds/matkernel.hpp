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

// Dense complex-matrix kernel.
//
// Index convention used throughout the library: a matrix acting on a tensor
// product A (x) B (x) ... stores basis index (a, b, ...) at row
// a * dim(B) * ... + b * ... , i.e. the leftmost subsystem is the slowest
// varying index.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "icbounds/tolerances.hpp"

namespace icb {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Ordered, labeled tensor-factor structure of a square matrix.
class DimShape {
 public:
  DimShape() = default;
  DimShape(std::vector<std::size_t> factors, std::vector<std::string> labels);

  /// Single-factor shape.
  static DimShape single(std::size_t dim, std::string label);

  const std::vector<std::size_t>& factors() const { return factors_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t rank() const { return factors_.size(); }
  std::size_t dim() const;

  bool contains(const std::string& label) const;
  std::size_t position(const std::string& label) const;
  std::size_t factor(const std::string& label) const { return factors_[position(label)]; }

  /// Sub-shape with the given labels, in this shape's order.
  DimShape restricted_to(std::span<const std::string> keep) const;
  /// Shape reordered to `order` (must be a permutation of labels()).
  DimShape reordered(std::span<const std::string> order) const;
  /// Concatenation: this shape's factors followed by `rhs`'s.
  DimShape concat(const DimShape& rhs) const;
  /// Copy with every label suffixed.
  DimShape suffixed(const std::string& suffix) const;

  bool operator==(const DimShape&) const = default;

 private:
  std::vector<std::size_t> factors_;
  std::vector<std::string> labels_;
};

/// Kronecker product, left operand is the slow index.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product of a list, left to right.
ComplexMatrix tensor_all(std::span<const ComplexMatrix> factors);

/// Trace over every subsystem not named in `keep`. Kept subsystems retain
/// their order in `shape`.
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimShape& shape,
                            std::span<const std::string> keep);

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimShape& shape,
                            std::initializer_list<std::string> keep);

/// Reorders the tensor factors of a square operator: returns P m P^dagger
/// where P maps the basis of `shape` to the basis of `shape.reordered(new_order)`.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const DimShape& shape,
                                 std::span<const std::string> new_order);

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const DimShape& shape,
                                 std::initializer_list<std::string> new_order);

/// Same reordering applied to a state vector.
ComplexVector permute_subsystems(const ComplexVector& v, const DimShape& shape,
                                 std::span<const std::string> new_order);

struct HermEig {
  RealVector values;      // descending
  ComplexMatrix vectors;  // column k belongs to values[k]
};

/// Eigendecomposition of a Hermitian matrix. Throws ValidationError when
/// max|m - m^dagger| exceeds tol.herm_tol.
HermEig herm_eig(const ComplexMatrix& m, const Tolerances& tol = {});

enum class KernelPolicy {
  zero,    // eigenvalues within psd_floor of 0 are clamped to 0; a non-finite f(0) maps to 0
  reject,  // any kernel eigenvalue is an error
};

/// V diag(f(lambda)) V^dagger for Hermitian m.
ComplexMatrix herm_fn(const ComplexMatrix& m, const std::function<double(double)>& f,
                      KernelPolicy policy = KernelPolicy::zero, const Tolerances& tol = {});

/// Eigenvalues with |lambda| < psd_floor set to exactly 0.
RealVector clamp_spectrum(RealVector values, const Tolerances& tol = {});

// -- small helpers ----------------------------------------------------------

double max_abs(const ComplexMatrix& m);
double hermiticity_error(const ComplexMatrix& m);
ComplexMatrix hermitian_part(const ComplexMatrix& m);
double unitarity_error(const ComplexMatrix& u);
bool all_finite(const ComplexMatrix& m);
/// Sum of absolute eigenvalues of the Hermitian part.
double trace_norm(const ComplexMatrix& m);
/// Row-major vectorization: vec(m)[i * cols + j] = m(i, j).
ComplexVector vec_row_major(const ComplexMatrix& m);
ComplexMatrix unvec_row_major(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols);
ComplexMatrix identity(std::size_t d);
/// |i><j| in dimension d.
ComplexMatrix matrix_unit(std::size_t d, std::size_t i, std::size_t j);
/// Sum_i |ii> (unnormalized), dimension d * d.
ComplexVector omega_vector(std::size_t d);
/// Swap operator on C^a (x) C^b -> C^b (x) C^a.
ComplexMatrix swap_operator(std::size_t a, std::size_t b);

}  // namespace icb
