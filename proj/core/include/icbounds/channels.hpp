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

#include <optional>
#include <string>
#include <vector>

#include "icbounds/matkernel.hpp"
#include "icbounds/states.hpp"
#include "icbounds/tolerances.hpp"

namespace icb {

/// Completely positive map held in dual form.
///
/// The Choi matrix uses the output (x) input convention,
///   choi = sum_k (K_k (x) I) |Omega><Omega| (K_k (x) I)^dagger,
/// with |Omega> = sum_i |ii> unnormalized, so tr(choi) = d_in for
/// trace-preserving maps and choi / d_in is the Choi state.
class QuantumOperation {
 public:
  static QuantumOperation from_kraus(std::vector<ComplexMatrix> kraus, DimShape in, DimShape out,
                                     const Tolerances& tol = {});
  /// Square operation on a single factor labeled "S".
  static QuantumOperation from_kraus(std::vector<ComplexMatrix> kraus, const Tolerances& tol = {});
  /// Throws ValidationError when choi is not Hermitian PSD (non-CP input).
  static QuantumOperation from_choi(const ComplexMatrix& choi, DimShape in, DimShape out,
                                    const Tolerances& tol = {});
  static QuantumOperation from_choi(const ComplexMatrix& choi, std::size_t d, const Tolerances& tol = {});

  std::size_t d_in() const { return in_.dim(); }
  std::size_t d_out() const { return out_.dim(); }
  const DimShape& in_shape() const { return in_; }
  const DimShape& out_shape() const { return out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  const ComplexMatrix& choi() const { return choi_; }

  /// Labels of the Choi matrix: output labels + "_out", then input labels + "_in".
  DimShape choi_shape() const;
  bool trace_preserving() const { return tp_; }
  /// max |sum_k K_k^dagger K_k - I|.
  double tp_residual() const { return tp_residual_; }
  /// Choi state choi / d_in (requires a trace-preserving operation).
  DensityMatrix normalized_choi(const Tolerances& tol = {}) const;

  /// Same map on relabeled factors.
  QuantumOperation relabeled(DimShape in, DimShape out) const;

 private:
  QuantumOperation() = default;
  void finish(const Tolerances& tol);

  DimShape in_, out_;
  std::vector<ComplexMatrix> kraus_;
  ComplexMatrix choi_;
  bool tp_ = false;
  double tp_residual_ = 0.0;
};

ComplexMatrix choi_from_kraus(const std::vector<ComplexMatrix>& kraus);
/// Kraus operators sqrt(lambda_k) * unvec(v_k) for Choi eigenpairs above psd_floor.
std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi, std::size_t d_out, std::size_t d_in,
                                           const Tolerances& tol = {});

/// Phi(rho) for a trace-preserving operation.
DensityMatrix apply(const QuantumOperation& op, const DensityMatrix& rho, const Tolerances& tol = {});
/// Sum_k K_k X K_k^dagger for any operator X (no normalization, no TP requirement).
ComplexMatrix apply_map(const QuantumOperation& op, const ComplexMatrix& x);
/// tr_in[choi (I (x) X^T)]: the linear map with the given Choi matrix applied to X.
ComplexMatrix apply_choi(const ComplexMatrix& choi, std::size_t d_out, std::size_t d_in, const ComplexMatrix& x);

/// Matrix S with vec(Phi(X)) = S vec(X) in row-major vectorization.
ComplexMatrix superoperator(const QuantumOperation& op);

QuantumOperation identity_channel(std::size_t d, const std::string& label = "S");
QuantumOperation unitary_channel(const ComplexMatrix& u, const Tolerances& tol = {});
/// X -> tr(X) target.
QuantumOperation replace_channel(const DensityMatrix& target, std::size_t d_in, const Tolerances& tol = {});
/// X -> tr(X) I/d.
QuantumOperation completely_depolarizing(std::size_t d);

/// sigma -> tr_E[U (sigma (x) tau) U^dagger] for U on S (x) E, with Kraus
/// operators sqrt(p_j) (I (x) <i|) U (I (x) |t_j>) from tau = sum_j p_j |t_j><t_j|.
QuantumOperation channel_from_dilation(const ComplexMatrix& u, const DensityMatrix& tau, const Tolerances& tol = {});

/// a after b.
QuantumOperation compose(const QuantumOperation& a, const QuantumOperation& b, const Tolerances& tol = {});
/// a (x) b on concatenated shapes.
QuantumOperation tensor(const QuantumOperation& a, const QuantumOperation& b, const Tolerances& tol = {});

/// Marginal of a multipartite operation: Choi traced over the discarded
/// (out, in) label pairs and divided by the discarded input dimension, i.e.
/// X -> tr_discarded[op(X (x) I/d_discarded)]. Input and output shapes must
/// carry the same labels.
QuantumOperation marginal_operation(const QuantumOperation& op, std::span<const std::string> keep,
                                    const Tolerances& tol = {});
QuantumOperation marginal_operation(const QuantumOperation& op, std::initializer_list<std::string> keep,
                                    const Tolerances& tol = {});

enum class FixedPointMethod { eigen, cesaro };

struct NessResult {
  DensityMatrix state;
  double residual = 0.0;  // ||Phi(state) - state||_1
  FixedPointMethod method = FixedPointMethod::eigen;
  std::size_t fixed_space_dim = 0;
};

/// Steady state of a square trace-preserving operation.
///
/// Counts superoperator eigenvalues within fp_degeneracy of 1. With a single
/// such eigenvalue the null vector of S - I is used directly; otherwise (or
/// if that vector cannot be repaired to a state) the Cesaro limit
/// lim (1/N) sum_{n<N} Phi^n(I/d) is evaluated exactly as the spectral
/// projection of I/d onto the fixed space along the range of S - I.
NessResult fixed_point(const QuantumOperation& op, const Tolerances& tol = {});

const char* to_string(FixedPointMethod m);

}  // namespace icb
