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

#include <vector>

#include "icbounds/channels.hpp"
#include "icbounds/matkernel.hpp"
#include "icbounds/states.hpp"

namespace icb {

/// Discard-and-replace operation built from the steady state of the reduced
/// dynamics: its Choi matrix is ness (x) I, so its Choi state is ness (x) I/d.
struct Neso {
  DensityMatrix ness;           // fixed point of sigma -> tr_E[U (sigma (x) tau) U^dagger]
  DensityMatrix env_marginal;   // tau = tr_S rho_SE
  QuantumOperation op;          // X -> tr(X) ness
  NessResult fixed_point;       // diagnostics of the steady-state solve

  /// Choi state of `op`.
  DensityMatrix normalized(const Tolerances& tol = {}) const { return op.normalized_choi(tol); }
};

/// Map from operations on S to later states of S, for a joint unitary U on
/// S (x) E and a (possibly correlated) initial state rho_SE:
///
///   M[A] = tr_E[ U (A (x) id_E)(rho_SE) U^dagger ].
///
/// Besides this operational form the object carries the six-index tensor
///
///   M_{abc;pqr} = sum_{x,y,z} U_{ax;by} rho_{cy;rz} conj(U_{px;qz}),
///
/// whose contraction with an operation's Choi matrix reproduces M:
///   M[A]_{ap} = sum_{bcqr} M_{abc;pqr} choi_{(b,c),(q,r)},
/// where (b, c) = (output, input) of the operation, x runs over the final
/// environment and y, z over the initial environment.
///
/// The trace-normalized map M#[X] = d M[X] acts on Choi states X = choi/d.
/// It preserves trace on Choi states of trace-preserving operations
/// (tr_out X = I/d); for a general unit-trace X the output trace is
/// d tr[tr_out(X) sigma^T], so M# is trace preserving on every input only
/// when sigma = tr_E rho_SE is maximally mixed.
class Superchannel {
 public:
  /// rho_se is read as S (x) E with d_S = U.rows() / d_E; its two factors
  /// are relabeled "S", "E".
  static Superchannel build(const ComplexMatrix& u, const DensityMatrix& rho_se, const Tolerances& tol = {});

  std::size_t d_s() const { return d_s_; }
  std::size_t d_e() const { return d_e_; }
  const ComplexMatrix& unitary() const { return u_; }
  const DensityMatrix& rho_se() const { return rho_se_; }
  /// sigma = tr_E rho_SE
  const DensityMatrix& system_marginal() const { return sigma_; }
  /// tau = tr_S rho_SE
  const DensityMatrix& env_marginal() const { return tau_; }
  /// Phi: sigma -> tr_E[U (sigma (x) tau) U^dagger]
  const QuantumOperation& reduced_channel() const { return phi_; }

  Complex index_tensor(std::size_t a, std::size_t b, std::size_t c, std::size_t p, std::size_t q,
                       std::size_t r) const;

  /// sigma' = M[op] from the operational formula (Kraus form).
  DensityMatrix act(const QuantumOperation& op, const Tolerances& tol = {}) const;
  /// M[op] by contracting the index tensor with op's Choi matrix.
  ComplexMatrix act_index(const QuantumOperation& op) const;
  /// Linear extension of the operational formula to any operator on
  /// out (x) in treated as an (unnormalized) Choi matrix.
  ComplexMatrix act_operator(const ComplexMatrix& choi_like) const;

  /// M#[X] for a unit-trace PSD operator on out (x) in. Throws
  /// ValidationError if the image is not a state (X outside the set on
  /// which M# preserves trace).
  DensityMatrix act_normalized(const DensityMatrix& op_state, const Tolerances& tol = {}) const;
  /// M#[X] without validation.
  ComplexMatrix msharp_apply(const ComplexMatrix& x) const;
  /// Matrix T of M# with vec(M#[X]) = T vec(X), row-major, size d^2 x d^4.
  const ComplexMatrix& msharp_matrix() const { return msharp_; }
  /// Choi matrix of M#: (output S) (x) (operation out (x) operation in), size d^3.
  ComplexMatrix choi_of_msharp() const;
  DimShape msharp_choi_shape() const;

  /// Non-equilibrium steady operation.
  Neso neso(const Tolerances& tol = {}) const;

 private:
  Superchannel() = default;
  std::size_t flat(std::size_t a, std::size_t b, std::size_t c, std::size_t p, std::size_t q, std::size_t r) const;

  std::size_t d_s_ = 0, d_e_ = 0;
  ComplexMatrix u_;
  DensityMatrix rho_se_{ComplexMatrix::Identity(1, 1)};
  DensityMatrix sigma_{ComplexMatrix::Identity(1, 1)};
  DensityMatrix tau_{ComplexMatrix::Identity(1, 1)};
  QuantumOperation phi_ = identity_channel(1);
  std::vector<Complex> tensor_;
  ComplexMatrix msharp_;
};

/// Trace-preservation residual of M# Choi: max |tr_out J - I|.
double msharp_tp_residual(const Superchannel& sc);
/// Trace-preservation residual of M# on Choi states of trace-preserving
/// operations. With W = tr_out J over (b, c) = (operation out, operation in),
/// trace is preserved on {X : tr_b X = I/d} iff W = I_b (x) Y with tr(Y) = d;
/// returns max(max |W - I_b (x) Y|, |tr(Y)/d - 1|) for Y = tr_b(W)/d.
double msharp_restricted_tp_residual(const Superchannel& sc);

}  // namespace icb
