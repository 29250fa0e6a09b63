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

#include "icbounds/channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "icbounds/errors.hpp"

namespace icb {

namespace {

void require_kraus_shapes(const std::vector<ComplexMatrix>& kraus, std::size_t d_in, std::size_t d_out) {
  if (kraus.empty()) throw ValidationError("operation: empty Kraus list");
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    if (static_cast<std::size_t>(kraus[k].rows()) != d_out || static_cast<std::size_t>(kraus[k].cols()) != d_in) {
      std::ostringstream os;
      os << "operation: Kraus operator " << k << " is " << kraus[k].rows() << "x" << kraus[k].cols()
         << ", expected " << d_out << "x" << d_in;
      throw DimensionError(os.str());
    }
    if (!all_finite(kraus[k])) throw ValidationError("operation: non-finite Kraus entries");
  }
}

// Clamp tiny negative eigenvalues, renormalize. Empty optional if the
// matrix is not a state up to psd_floor.
std::optional<ComplexMatrix> repair_state(const ComplexMatrix& x, const Tolerances& tol) {
  ComplexMatrix h = hermitian_part(x);
  const Complex tr = h.trace();
  if (!(std::abs(tr) > tol.psd_floor)) return std::nullopt;
  h /= tr.real();
  const HermEig eig = herm_eig(h, tol);
  if (eig.values.minCoeff() < -tol.psd_floor) return std::nullopt;
  RealVector lam = eig.values.cwiseMax(0.0);
  lam /= lam.sum();
  return ComplexMatrix(eig.vectors * lam.cast<Complex>().asDiagonal() * eig.vectors.adjoint());
}

}  // namespace

// -- QuantumOperation -------------------------------------------------------

QuantumOperation QuantumOperation::from_kraus(std::vector<ComplexMatrix> kraus, DimShape in, DimShape out,
                                              const Tolerances& tol) {
  require_kraus_shapes(kraus, in.dim(), out.dim());
  QuantumOperation op;
  op.in_ = std::move(in);
  op.out_ = std::move(out);
  op.kraus_ = std::move(kraus);
  op.choi_ = choi_from_kraus(op.kraus_);
  op.finish(tol);
  return op;
}

QuantumOperation QuantumOperation::from_kraus(std::vector<ComplexMatrix> kraus, const Tolerances& tol) {
  if (kraus.empty()) throw ValidationError("operation: empty Kraus list");
  const auto d_out = static_cast<std::size_t>(kraus.front().rows());
  const auto d_in = static_cast<std::size_t>(kraus.front().cols());
  if (d_in != d_out) throw DimensionError("operation: Kraus operators are not square; give explicit shapes");
  return from_kraus(std::move(kraus), DimShape::single(d_in, "S"), DimShape::single(d_out, "S"), tol);
}

QuantumOperation QuantumOperation::from_choi(const ComplexMatrix& choi, DimShape in, DimShape out,
                                             const Tolerances& tol) {
  const std::size_t n = in.dim() * out.dim();
  if (static_cast<std::size_t>(choi.rows()) != n || choi.rows() != choi.cols()) {
    std::ostringstream os;
    os << "operation: Choi matrix is " << choi.rows() << "x" << choi.cols() << ", expected " << n << "x" << n;
    throw DimensionError(os.str());
  }
  if (!all_finite(choi)) throw ValidationError("operation: non-finite Choi entries");
  if (hermiticity_error(choi) > tol.herm_tol) throw ValidationError("operation: Choi matrix is not Hermitian");
  QuantumOperation op;
  op.kraus_ = kraus_from_choi(choi, out.dim(), in.dim(), tol);
  op.in_ = std::move(in);
  op.out_ = std::move(out);
  op.choi_ = hermitian_part(choi);
  op.finish(tol);
  return op;
}

QuantumOperation QuantumOperation::from_choi(const ComplexMatrix& choi, std::size_t d, const Tolerances& tol) {
  return from_choi(choi, DimShape::single(d, "S"), DimShape::single(d, "S"), tol);
}

void QuantumOperation::finish(const Tolerances& tol) {
  ComplexMatrix s = ComplexMatrix::Zero(static_cast<Eigen::Index>(d_in()), static_cast<Eigen::Index>(d_in()));
  for (const auto& k : kraus_) s += k.adjoint() * k;
  tp_residual_ = max_abs(s - identity(d_in()));
  tp_ = tp_residual_ <= tol.cptp_tol;
}

DimShape QuantumOperation::choi_shape() const { return out_.suffixed("_out").concat(in_.suffixed("_in")); }

DensityMatrix QuantumOperation::normalized_choi(const Tolerances& tol) const {
  if (!tp_) throw ValidationError("normalized_choi: operation is not trace preserving");
  return DensityMatrix(choi_ / static_cast<double>(d_in()), choi_shape(), tol);
}

QuantumOperation QuantumOperation::relabeled(DimShape in, DimShape out) const {
  if (in.dim() != d_in() || out.dim() != d_out()) throw DimensionError("relabeled: dimension mismatch");
  QuantumOperation op = *this;
  op.in_ = std::move(in);
  op.out_ = std::move(out);
  return op;
}

// -- representations --------------------------------------------------------

ComplexMatrix choi_from_kraus(const std::vector<ComplexMatrix>& kraus) {
  if (kraus.empty()) throw ValidationError("choi_from_kraus: empty Kraus list");
  const Eigen::Index n = kraus.front().size();
  ComplexMatrix choi = ComplexMatrix::Zero(n, n);
  for (const auto& k : kraus) {
    const ComplexVector v = vec_row_major(k);
    choi.noalias() += v * v.adjoint();
  }
  return choi;
}

std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi, std::size_t d_out, std::size_t d_in,
                                           const Tolerances& tol) {
  const HermEig eig = herm_eig(choi, tol);
  const double min_eig = eig.values.minCoeff();
  if (min_eig < -tol.cptp_tol) {
    std::ostringstream os;
    os << "operation: Choi matrix is not positive semidefinite (min eigenvalue " << min_eig
       << "); the map is not completely positive";
    throw ValidationError(os.str());
  }
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) < tol.psd_floor) continue;
    kraus.push_back(std::sqrt(eig.values(k)) *
                    unvec_row_major(eig.vectors.col(k), static_cast<Eigen::Index>(d_out),
                                    static_cast<Eigen::Index>(d_in)));
  }
  if (kraus.empty())
    kraus.push_back(ComplexMatrix::Zero(static_cast<Eigen::Index>(d_out), static_cast<Eigen::Index>(d_in)));
  return kraus;
}

// -- application ------------------------------------------------------------

ComplexMatrix apply_map(const QuantumOperation& op, const ComplexMatrix& x) {
  if (static_cast<std::size_t>(x.rows()) != op.d_in() || x.rows() != x.cols())
    throw DimensionError("apply: operand dimension does not match operation input");
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(op.d_out()), static_cast<Eigen::Index>(op.d_out()));
  for (const auto& k : op.kraus()) out.noalias() += k * x * k.adjoint();
  return out;
}

DensityMatrix apply(const QuantumOperation& op, const DensityMatrix& rho, const Tolerances& tol) {
  if (!op.trace_preserving())
    throw ValidationError("apply: operation is not trace preserving; use apply_map for unnormalized output");
  if (rho.dim() != op.d_in()) throw DimensionError("apply: state dimension does not match operation input");
  return DensityMatrix(hermitian_part(apply_map(op, rho.matrix())), op.out_shape(), tol);
}

ComplexMatrix apply_choi(const ComplexMatrix& choi, std::size_t d_out, std::size_t d_in, const ComplexMatrix& x) {
  const auto dout = static_cast<Eigen::Index>(d_out);
  const auto din = static_cast<Eigen::Index>(d_in);
  if (choi.rows() != dout * din || x.rows() != din) throw DimensionError("apply_choi: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(dout, dout);
  for (Eigen::Index o = 0; o < dout; ++o)
    for (Eigen::Index op = 0; op < dout; ++op) {
      Complex s = 0.0;
      for (Eigen::Index i = 0; i < din; ++i)
        for (Eigen::Index ip = 0; ip < din; ++ip) s += choi(o * din + i, op * din + ip) * x(i, ip);
      out(o, op) = s;
    }
  return out;
}

ComplexMatrix superoperator(const QuantumOperation& op) {
  const auto n_out = static_cast<Eigen::Index>(op.d_out() * op.d_out());
  const auto n_in = static_cast<Eigen::Index>(op.d_in() * op.d_in());
  ComplexMatrix s = ComplexMatrix::Zero(n_out, n_in);
  for (const auto& k : op.kraus()) s += tensor(k, k.conjugate());
  return s;
}

// -- standard operations ----------------------------------------------------

QuantumOperation identity_channel(std::size_t d, const std::string& label) {
  const auto shape = DimShape::single(d, label);
  return QuantumOperation::from_kraus({identity(d)}, shape, shape);
}

QuantumOperation unitary_channel(const ComplexMatrix& u, const Tolerances& tol) {
  if (unitarity_error(u) > tol.unitary_tol) throw ValidationError("unitary_channel: matrix is not unitary");
  return QuantumOperation::from_kraus({u}, tol);
}

QuantumOperation replace_channel(const DensityMatrix& target, std::size_t d_in, const Tolerances& tol) {
  // Choi = target (x) I
  const ComplexMatrix choi = tensor(target.matrix(), identity(d_in));
  return QuantumOperation::from_choi(choi, DimShape::single(d_in, "S"), DimShape::single(target.dim(), "S"), tol);
}

QuantumOperation completely_depolarizing(std::size_t d) {
  std::vector<ComplexMatrix> kraus;
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) kraus.push_back(w * matrix_unit(d, i, j));
  return QuantumOperation::from_kraus(std::move(kraus));
}

QuantumOperation channel_from_dilation(const ComplexMatrix& u, const DensityMatrix& tau, const Tolerances& tol) {
  const auto d_e = static_cast<Eigen::Index>(tau.dim());
  if (u.rows() != u.cols() || u.rows() % d_e != 0)
    throw DimensionError("channel_from_dilation: unitary dimension is not a multiple of the environment dimension");
  const double uerr = unitarity_error(u);
  if (uerr > tol.unitary_tol) {
    std::ostringstream os;
    os << "channel_from_dilation: U is not unitary (max |U^dagger U - I| = " << uerr << ")";
    throw ValidationError(os.str());
  }
  const Eigen::Index d_s = u.rows() / d_e;
  const HermEig eig = herm_eig(tau.matrix(), tol);
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    if (eig.values(j) < tol.psd_floor) continue;
    const double amp = std::sqrt(eig.values(j));
    const auto t = eig.vectors.col(j);
    for (Eigen::Index i = 0; i < d_e; ++i) {
      ComplexMatrix k = ComplexMatrix::Zero(d_s, d_s);
      for (Eigen::Index a = 0; a < d_s; ++a)
        for (Eigen::Index b = 0; b < d_s; ++b) {
          Complex s = 0.0;
          for (Eigen::Index e = 0; e < d_e; ++e) s += u(a * d_e + i, b * d_e + e) * t(e);
          k(a, b) = amp * s;
        }
      kraus.push_back(std::move(k));
    }
  }
  return QuantumOperation::from_kraus(std::move(kraus), tol);
}

QuantumOperation compose(const QuantumOperation& a, const QuantumOperation& b, const Tolerances& tol) {
  if (a.d_in() != b.d_out()) throw DimensionError("compose: inner dimensions differ");
  std::vector<ComplexMatrix> kraus;
  for (const auto& ka : a.kraus())
    for (const auto& kb : b.kraus()) kraus.push_back(ka * kb);
  return QuantumOperation::from_kraus(std::move(kraus), b.in_shape(), a.out_shape(), tol);
}

QuantumOperation tensor(const QuantumOperation& a, const QuantumOperation& b, const Tolerances& tol) {
  std::vector<ComplexMatrix> kraus;
  for (const auto& ka : a.kraus())
    for (const auto& kb : b.kraus()) kraus.push_back(tensor(ka, kb));
  return QuantumOperation::from_kraus(std::move(kraus), a.in_shape().concat(b.in_shape()),
                                      a.out_shape().concat(b.out_shape()), tol);
}

QuantumOperation marginal_operation(const QuantumOperation& op, std::span<const std::string> keep,
                                    const Tolerances& tol) {
  if (op.in_shape().labels() != op.out_shape().labels() || op.in_shape().rank() < 2)
    throw DimensionError("marginal_operation: operation lacks a shared multipartite structure");
  const DimShape in_kept = op.in_shape().restricted_to(keep);
  const DimShape out_kept = op.out_shape().restricted_to(keep);
  if (in_kept.rank() == op.in_shape().rank())
    throw DimensionError("marginal_operation: nothing to discard");

  std::vector<std::string> choi_keep;
  for (const auto& l : keep) choi_keep.push_back(l + "_out");
  for (const auto& l : keep) choi_keep.push_back(l + "_in");
  const double d_discarded = static_cast<double>(op.d_in()) / static_cast<double>(in_kept.dim());
  const ComplexMatrix reduced = partial_trace(op.choi(), op.choi_shape(), choi_keep) / d_discarded;
  return QuantumOperation::from_choi(reduced, in_kept, out_kept, tol);
}

QuantumOperation marginal_operation(const QuantumOperation& op, std::initializer_list<std::string> keep,
                                    const Tolerances& tol) {
  return marginal_operation(op, std::span<const std::string>(keep.begin(), keep.size()), tol);
}

// -- steady states ----------------------------------------------------------

const char* to_string(FixedPointMethod m) { return m == FixedPointMethod::eigen ? "eigen" : "cesaro"; }

NessResult fixed_point(const QuantumOperation& op, const Tolerances& tol) {
  if (op.d_in() != op.d_out()) throw DimensionError("fixed_point: operation is not square");
  if (!op.trace_preserving()) throw ValidationError("fixed_point: operation is not trace preserving");
  const std::size_t d = op.d_in();
  const auto n = static_cast<Eigen::Index>(d * d);
  const ComplexMatrix s = superoperator(op);

  Eigen::ComplexEigenSolver<ComplexMatrix> es(s, false);
  if (es.info() != Eigen::Success) throw NumericalError("fixed_point: superoperator eigensolver failed");
  std::size_t fixed_dim = 0;
  for (Eigen::Index k = 0; k < n; ++k)
    if (std::abs(es.eigenvalues()(k) - Complex(1.0)) < tol.fp_degeneracy) ++fixed_dim;

  const ComplexMatrix a = s - ComplexMatrix::Identity(n, n);
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto residual_of = [&](const ComplexMatrix& x) { return trace_norm(apply_map(op, x) - x); };
  const auto d_idx = static_cast<Eigen::Index>(d);

  if (fixed_dim == 1) {
    const ComplexMatrix x = unvec_row_major(svd.matrixV().col(n - 1), d_idx, d_idx);
    if (auto state = repair_state(x, tol)) {
      const double res = residual_of(*state);
      if (res <= tol.fp_tol)
        return NessResult{DensityMatrix(*state, op.in_shape(), tol), res, FixedPointMethod::eigen, fixed_dim};
    }
  }

  // Spectral projection of I/d onto ker(S - I) along ran(S - I). Peripheral
  // eigenvalue 1 of a positive trace-preserving map is semisimple, so L^dagger R
  // is invertible and the projector equals the Cesaro mean limit.
  const Eigen::Index k = static_cast<Eigen::Index>(std::max<std::size_t>(fixed_dim, 1));
  const ComplexMatrix r = svd.matrixV().rightCols(k);
  const ComplexMatrix l = svd.matrixU().rightCols(k);
  const ComplexMatrix gram = l.adjoint() * r;
  Eigen::FullPivLU<ComplexMatrix> lu(gram);
  if (!lu.isInvertible()) throw NumericalError("fixed_point: fixed space is not semisimple");
  const ComplexVector start = vec_row_major(identity(d) / static_cast<double>(d));
  const ComplexVector projected = r * lu.solve(l.adjoint() * start);
  const auto state = repair_state(unvec_row_major(projected, d_idx, d_idx), tol);
  if (!state) throw NumericalError("fixed_point: Cesaro limit is not a valid state");
  const double res = residual_of(*state);
  if (res > tol.fp_tol) {
    std::ostringstream os;
    os << "fixed_point: Cesaro limit residual " << res << " exceeds fp_tol " << tol.fp_tol;
    throw NumericalError(os.str());
  }
  return NessResult{DensityMatrix(*state, op.in_shape(), tol), res, FixedPointMethod::cesaro, fixed_dim};
}

}  // namespace icb
