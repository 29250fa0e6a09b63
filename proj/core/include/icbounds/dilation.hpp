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

#include "icbounds/bounds.hpp"
#include "icbounds/channels.hpp"
#include "icbounds/states.hpp"
#include "icbounds/superchannel.hpp"

namespace icb {

enum class Completion {
  gram_schmidt,  // canonical basis vectors orthogonalized in index order
  householder,   // trailing columns of a Householder QR of the isometry
};

/// Unitary dilation of a trace-preserving square operation with Kraus
/// operators K_0 .. K_{r-1}. The ancilla a is the slow factor: rows of the
/// isometry are indexed (k, o) and V = sum_k |k>_a (x) K_k.
struct StinespringForm {
  ComplexMatrix isometry;  // (r d) x d
  ComplexMatrix unitary;   // (r d) x (r d), columns (0, i) equal isometry column i
  std::size_t ancilla_dim = 0;
  std::size_t system_dim = 0;
  /// (U_ab (x) I_c)(|0>_a (x) |beta>_bc) on a (x) b (x) c.
  ComplexVector psi_abc;

  DimShape abc_shape() const;
};

/// Completes the orthonormal columns of `v` to a unitary; the first
/// v.cols() columns are kept as they are.
ComplexMatrix complete_to_unitary(const ComplexMatrix& v, Completion method = Completion::gram_schmidt);

StinespringForm stinespring(const QuantumOperation& op, Completion method = Completion::gram_schmidt,
                            const Tolerances& tol = {});

/// tr_a |psi><psi|, labeled (S_out, S_in) to match QuantumOperation::choi_shape.
DensityMatrix choi_from_dilation(const StinespringForm& form, const Tolerances& tol = {});
/// S(tr_bc |psi><psi|), the entropy left in the discarded ancilla.
double ancilla_entropy(const StinespringForm& form, const Tolerances& tol = {});

/// Entropy of the operation's Choi state (choi / tr choi).
double operation_entropy(const QuantumOperation& op, const Tolerances& tol = {});

/// A[sigma] = V (sigma (x) alpha) V^dagger with V unitary on S (x) A.
class IsometricOperation {
 public:
  IsometricOperation(ComplexMatrix v, DensityMatrix alpha, const Tolerances& tol = {});

  const ComplexMatrix& v() const { return v_; }
  const DensityMatrix& alpha() const { return alpha_; }
  std::size_t d_s() const { return d_s_; }
  std::size_t d_a() const { return alpha_.dim(); }

  /// A[sigma] on S (x) A.
  ComplexMatrix apply(const ComplexMatrix& sigma) const;
  /// tr_A o A as an operation on S.
  QuantumOperation reduced_operation(const Tolerances& tol = {}) const;
  /// A itself as an operation S -> S (x) A.
  QuantumOperation as_operation(const Tolerances& tol = {}) const;

 private:
  ComplexMatrix v_;
  DensityMatrix alpha_;
  std::size_t d_s_ = 0;
};

struct MMapResult {
  DensityMatrix upsilon;              // joint S (x) A state after the dynamics
  double delta_s = 0.0;               // S(upsilon) - S(tr_E rho_SE)
  double consistency_residual = 0.0;  // max |tr_A upsilon - M[tr_A o A]|
};

/// Upsilon = tr_E[(U_SE (x) I_A)(V_SA (x) I_E)(rho_SE (x) alpha)(...)^dagger],
/// assembled in the canonical S (x) E (x) A order.
MMapResult mmap(const Superchannel& sc, const IsometricOperation& iso, const Tolerances& tol = {});

/// Report with lhs = consistency_tol and rhs = mmap consistency residual.
BoundReport mmap_consistency_report(const Superchannel& sc, const IsometricOperation& iso,
                                    double consistency_tol = 1e-10, const Tolerances& tol = {});

struct MMapContraction {
  ExtendedReal before;  // D between the Choi states of the two dilated operations
  ExtendedReal after;   // D[Upsilon_1 || Upsilon_2]
};

/// Relative entropies before and after the M-map for two dilated operations.
/// No inequality is asserted.
MMapContraction mmap_contraction(const Superchannel& sc, const IsometricOperation& a, const IsometricOperation& b,
                                 const Tolerances& tol = {});

}  // namespace icb
