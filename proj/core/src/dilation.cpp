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

#include "icbounds/dilation.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/QR>

#include "icbounds/errors.hpp"

namespace icb {

DimShape StinespringForm::abc_shape() const {
  return DimShape({ancilla_dim, system_dim, system_dim}, {"a", "b", "c"});
}

ComplexMatrix complete_to_unitary(const ComplexMatrix& v, Completion method) {
  const Eigen::Index n = v.rows();
  const Eigen::Index k = v.cols();
  if (k > n) throw DimensionError("complete_to_unitary: more columns than rows");
  ComplexMatrix u(n, n);
  u.leftCols(k) = v;
  if (method == Completion::householder) {
    Eigen::HouseholderQR<ComplexMatrix> qr(v);
    const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    u.rightCols(n - k) = q.rightCols(n - k);
    return u;
  }
  Eigen::Index filled = k;
  for (Eigen::Index j = 0; j < n && filled < n; ++j) {
    ComplexVector w = ComplexVector::Zero(n);
    w(j) = 1.0;
    for (int pass = 0; pass < 2; ++pass) w -= u.leftCols(filled) * (u.leftCols(filled).adjoint() * w);
    const double norm = w.norm();
    if (norm < 1e-8) continue;
    u.col(filled++) = w / norm;
  }
  if (filled != n) throw NumericalError("complete_to_unitary: basis completion failed");
  return u;
}

StinespringForm stinespring(const QuantumOperation& op, Completion method, const Tolerances& tol) {
  if (op.d_in() != op.d_out()) throw DimensionError("stinespring: operation is not square");
  if (!op.trace_preserving()) throw ValidationError("stinespring: operation is not trace preserving");
  const auto d = static_cast<Eigen::Index>(op.d_in());
  const auto r = static_cast<Eigen::Index>(op.kraus().size());

  StinespringForm form;
  form.ancilla_dim = static_cast<std::size_t>(r);
  form.system_dim = static_cast<std::size_t>(d);
  form.isometry = ComplexMatrix(r * d, d);
  for (Eigen::Index k = 0; k < r; ++k) form.isometry.block(k * d, 0, d, d) = op.kraus()[static_cast<std::size_t>(k)];
  const double iso_err = max_abs(form.isometry.adjoint() * form.isometry - ComplexMatrix::Identity(d, d));
  if (iso_err > tol.cptp_tol) throw NumericalError("stinespring: Kraus stack is not an isometry");
  form.unitary = complete_to_unitary(form.isometry, method);

  // psi[(k, o, c)] = sum_i U[(k, o), (0, i)] beta[(i, c)] = V[(k, o), c] / sqrt(d)
  form.psi_abc = ComplexVector(r * d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index row = 0; row < r * d; ++row)
    for (Eigen::Index c = 0; c < d; ++c) form.psi_abc(row * d + c) = amp * form.unitary(row, c);
  return form;
}

DensityMatrix choi_from_dilation(const StinespringForm& form, const Tolerances& tol) {
  const ComplexMatrix full = form.psi_abc * form.psi_abc.adjoint();
  const ComplexMatrix bc = partial_trace(full, form.abc_shape(), {"b", "c"});
  return DensityMatrix(hermitian_part(bc), DimShape({form.system_dim, form.system_dim}, {"S_out", "S_in"}), tol);
}

double ancilla_entropy(const StinespringForm& form, const Tolerances& tol) {
  const ComplexMatrix full = form.psi_abc * form.psi_abc.adjoint();
  const ComplexMatrix a = partial_trace(full, form.abc_shape(), {"a"});
  return von_neumann_entropy(DensityMatrix(hermitian_part(a), DimShape::single(form.ancilla_dim, "a"), tol), tol);
}

double operation_entropy(const QuantumOperation& op, const Tolerances& tol) {
  const double tr = op.choi().trace().real();
  if (!(tr > 0.0)) throw ValidationError("operation_entropy: zero operation");
  return von_neumann_entropy(DensityMatrix(op.choi() / tr, op.choi_shape(), tol), tol);
}

// -- M-map --------------------------------------------------------------------

IsometricOperation::IsometricOperation(ComplexMatrix v, DensityMatrix alpha, const Tolerances& tol)
    : v_(std::move(v)), alpha_(std::move(alpha)) {
  const auto da = static_cast<Eigen::Index>(alpha_.dim());
  if (v_.rows() != v_.cols() || v_.rows() % da != 0)
    throw DimensionError("isometric operation: V dimension is not a multiple of the ancilla dimension");
  const double uerr = unitarity_error(v_);
  if (uerr > tol.unitary_tol) {
    std::ostringstream os;
    os << "isometric operation: V is not unitary (max |V^dagger V - I| = " << uerr << ")";
    throw ValidationError(os.str());
  }
  d_s_ = static_cast<std::size_t>(v_.rows() / da);
  alpha_ = alpha_.relabeled(DimShape::single(alpha_.dim(), "A"));
}

ComplexMatrix IsometricOperation::apply(const ComplexMatrix& sigma) const {
  return v_ * tensor(sigma, alpha_.matrix()) * v_.adjoint();
}

QuantumOperation IsometricOperation::reduced_operation(const Tolerances& tol) const {
  return channel_from_dilation(v_, alpha_, tol);
}

QuantumOperation IsometricOperation::as_operation(const Tolerances& tol) const {
  const HermEig eig = herm_eig(alpha_.matrix(), tol);
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    if (eig.values(j) < tol.psd_floor) continue;
    // K_j = sqrt(a_j) V (I (x) |a_j>)
    const ComplexMatrix embed = tensor(identity(d_s_), ComplexMatrix(eig.vectors.col(j)));
    kraus.push_back(std::sqrt(eig.values(j)) * v_ * embed);
  }
  return QuantumOperation::from_kraus(std::move(kraus), DimShape::single(d_s_, "S"),
                                      DimShape({d_s_, d_a()}, {"S", "A"}), tol);
}

MMapResult mmap(const Superchannel& sc, const IsometricOperation& iso, const Tolerances& tol) {
  if (iso.d_s() != sc.d_s()) throw DimensionError("mmap: isometric operation does not act on S");
  const std::size_t ds = sc.d_s();
  const std::size_t de = sc.d_e();
  const std::size_t da = iso.d_a();
  const DimShape sea({ds, de, da}, {"S", "E", "A"});
  const DimShape sae({ds, da, de}, {"S", "A", "E"});

  const ComplexMatrix joint = tensor(sc.rho_se().matrix(), iso.alpha().matrix());
  const ComplexMatrix v_sae = tensor(iso.v(), identity(de));
  const ComplexMatrix v_sea = permute_subsystems(v_sae, sae, {"S", "E", "A"});
  const ComplexMatrix u_sea = tensor(sc.unitary(), identity(da));
  const ComplexMatrix step = u_sea * v_sea;
  const ComplexMatrix final_state = step * joint * step.adjoint();
  const ComplexMatrix ups = partial_trace(final_state, sea, {"S", "A"});

  MMapResult res{DensityMatrix(hermitian_part(ups), DimShape({ds, da}, {"S", "A"}), tol), 0.0, 0.0};
  res.delta_s = von_neumann_entropy(res.upsilon, tol) - von_neumann_entropy(sc.system_marginal(), tol);
  const ComplexMatrix marginal = partial_trace(res.upsilon.matrix(), res.upsilon.shape(), {"S"});
  const DensityMatrix via_superchannel = sc.act(iso.reduced_operation(tol), tol);
  res.consistency_residual = max_abs(marginal - via_superchannel.matrix());
  return res;
}

BoundReport mmap_consistency_report(const Superchannel& sc, const IsometricOperation& iso, double consistency_tol,
                                    const Tolerances& tol) {
  const MMapResult res = mmap(sc, iso, tol);
  BoundReport r = make_report(BoundKind::mmap_consistency, consistency_tol, res.consistency_residual, 0.0);
  r.values["consistency_residual"] = res.consistency_residual;
  r.values["delta_S"] = res.delta_s;
  r.values["S_upsilon"] = von_neumann_entropy(res.upsilon, tol);
  r.values["S_sigma"] = von_neumann_entropy(sc.system_marginal(), tol);
  r.series["upsilon_eigenvalues"] = [&] {
    const RealVector s = res.upsilon.spectrum(tol);
    return std::vector<double>(s.data(), s.data() + s.size());
  }();
  return r;
}

MMapContraction mmap_contraction(const Superchannel& sc, const IsometricOperation& a, const IsometricOperation& b,
                                 const Tolerances& tol) {
  const DensityMatrix choi_a = a.as_operation(tol).normalized_choi(tol);
  const DensityMatrix choi_b = b.as_operation(tol).normalized_choi(tol);
  const MMapResult ra = mmap(sc, a, tol);
  const MMapResult rb = mmap(sc, b, tol);
  return {relative_entropy(choi_a, choi_b, tol), relative_entropy(ra.upsilon, rb.upsilon, tol)};
}

}  // namespace icb
