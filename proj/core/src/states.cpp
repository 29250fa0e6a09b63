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

#include "icbounds/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "icbounds/errors.hpp"

namespace icb {

void require_density(const ComplexMatrix& m, const std::string& what, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw ValidationError(what + ": matrix is not square");
  if (!all_finite(m)) throw ValidationError(what + ": non-finite entries");
  const double herr = hermiticity_error(m);
  if (herr > tol.herm_tol) {
    std::ostringstream os;
    os << what << ": not Hermitian (max |m - m^dagger| = " << herr << ")";
    throw ValidationError(os.str());
  }
  const double tr_err = std::abs(m.trace() - Complex(1.0));
  if (tr_err > tol.trace_tol) {
    std::ostringstream os;
    os << what << ": trace is " << m.trace().real() << ", expected 1";
    throw ValidationError(os.str());
  }
  const double min_eig = herm_eig(m, tol).values.minCoeff();
  if (min_eig < -tol.psd_floor) {
    std::ostringstream os;
    os << what << ": not positive semidefinite (min eigenvalue " << min_eig << ")";
    throw ValidationError(os.str());
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix mat, DimShape shape, const Tolerances& tol)
    : mat_(std::move(mat)), shape_(std::move(shape)) {
  if (static_cast<std::size_t>(mat_.rows()) != shape_.dim() || mat_.rows() != mat_.cols())
    throw DimensionError("DensityMatrix: matrix does not match shape");
  require_density(mat_, "DensityMatrix", tol);
  mat_ = hermitian_part(mat_);
}

DensityMatrix::DensityMatrix(ComplexMatrix mat, const Tolerances& tol)
    : DensityMatrix(mat, DimShape::single(static_cast<std::size_t>(std::max<Eigen::Index>(mat.rows(), 1)), "S"),
                    tol) {}

DensityMatrix DensityMatrix::maximally_mixed(const DimShape& shape) {
  const std::size_t d = shape.dim();
  return DensityMatrix(Trusted{}, identity(d) / static_cast<double>(d), shape);
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi, const DimShape& shape, const Tolerances& tol) {
  const double n = psi.norm();
  if (!(n > 0)) throw ValidationError("pure state: zero vector");
  const ComplexVector u = psi / n;
  return DensityMatrix(u * u.adjoint(), shape, tol);
}

DensityMatrix DensityMatrix::basis_state(std::size_t d, std::size_t k, const std::string& label) {
  if (k >= d) throw DimensionError("basis_state: index out of range");
  return DensityMatrix(Trusted{}, matrix_unit(d, k, k), DimShape::single(d, label));
}

DensityMatrix DensityMatrix::relabeled(DimShape shape) const {
  if (shape.dim() != shape_.dim()) throw DimensionError("relabeled: dimension mismatch");
  return DensityMatrix(Trusted{}, mat_, std::move(shape));
}

DensityMatrix DensityMatrix::marginal(std::span<const std::string> keep) const {
  return DensityMatrix(Trusted{}, hermitian_part(partial_trace(mat_, shape_, keep)), shape_.restricted_to(keep));
}

DensityMatrix DensityMatrix::marginal(std::initializer_list<std::string> keep) const {
  return marginal(std::span<const std::string>(keep.begin(), keep.size()));
}

DensityMatrix DensityMatrix::reordered(std::span<const std::string> order) const {
  return DensityMatrix(Trusted{}, permute_subsystems(mat_, shape_, order), shape_.reordered(order));
}

RealVector DensityMatrix::spectrum(const Tolerances& tol) const {
  return clamp_spectrum(herm_eig(mat_, tol).values, tol);
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(DensityMatrix::Trusted{}, tensor(a.matrix(), b.matrix()), a.shape().concat(b.shape()));
}

double shannon_entropy(const RealVector& p, const Tolerances& tol) {
  double s = 0.0;
  for (double x : p)
    if (x > tol.psd_floor) s -= x * std::log(x);
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol) {
  return shannon_entropy(rho.spectrum(tol), tol);
}

ExtendedReal log_trace(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("log_trace: dimension mismatch");
  const HermEig eig = herm_eig(b, tol);
  const RealVector lam = clamp_spectrum(eig.values, tol);
  double kernel_weight = 0.0;
  double acc = 0.0;
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    const auto v = eig.vectors.col(k);
    const double w = (v.adjoint() * a * v)(0, 0).real();
    if (lam(k) <= 0.0) {
      kernel_weight += w;
    } else {
      acc += w * std::log(lam(k));
    }
  }
  if (kernel_weight > tol.support_tol) return ExtendedReal::neg_infinity();
  return acc;
}

ExtendedReal relative_entropy(const DensityMatrix& a, const DensityMatrix& b, const Tolerances& tol) {
  if (a.dim() != b.dim()) throw DimensionError("relative_entropy: dimension mismatch");
  const ExtendedReal cross = log_trace(a.matrix(), b.matrix(), tol);
  if (!cross.is_finite()) return ExtendedReal::pos_infinity();
  const double d = -von_neumann_entropy(a, tol) - cross.value();
  return std::max(d, 0.0);
}

double mutual_information(const DensityMatrix& rho, std::span<const std::string> part_p, const Tolerances& tol) {
  if (part_p.empty()) throw DimensionError("mutual_information: empty partition");
  std::vector<std::string> part_q;
  for (const auto& l : rho.shape().labels())
    if (std::find(part_p.begin(), part_p.end(), l) == part_p.end()) part_q.push_back(l);
  if (part_q.empty()) throw DimensionError("mutual_information: partition leaves nothing on the other side");
  if (part_q.size() + part_p.size() != rho.shape().rank())
    throw DimensionError("mutual_information: partition has unknown or repeated labels");
  return von_neumann_entropy(rho.marginal(part_p), tol) + von_neumann_entropy(rho.marginal(part_q), tol) -
         von_neumann_entropy(rho, tol);
}

double mutual_information(const DensityMatrix& rho, std::initializer_list<std::string> part_p,
                          const Tolerances& tol) {
  return mutual_information(rho, std::span<const std::string>(part_p.begin(), part_p.size()), tol);
}

}  // namespace icb
