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

#include "icbounds/matkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "icbounds/errors.hpp"

namespace icb {

namespace {

std::string join(const std::vector<std::string>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

Eigen::Index checked_product(Eigen::Index a, Eigen::Index b) {
  if (a != 0 && b > std::numeric_limits<Eigen::Index>::max() / a)
    throw DimensionError("tensor: dimension product overflows");
  return a * b;
}

// old flat index -> new flat index for a factor reordering.
std::vector<Eigen::Index> permutation_map(const DimShape& shape,
                                          std::span<const std::string> new_order) {
  const DimShape target = shape.reordered(new_order);
  const std::size_t n = shape.rank();
  std::vector<std::size_t> src_pos(n);
  for (std::size_t k = 0; k < n; ++k) src_pos[k] = shape.position(new_order[k]);

  // strides of the target layout, expressed per source position
  std::vector<Eigen::Index> stride_for_source(n);
  Eigen::Index stride = 1;
  for (std::size_t k = n; k-- > 0;) {
    stride_for_source[src_pos[k]] = stride;
    stride *= static_cast<Eigen::Index>(target.factors()[k]);
  }

  const auto dim = static_cast<Eigen::Index>(shape.dim());
  std::vector<Eigen::Index> map(static_cast<std::size_t>(dim));
  std::vector<std::size_t> digits(n, 0);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    Eigen::Index out = 0;
    for (std::size_t p = 0; p < n; ++p) out += static_cast<Eigen::Index>(digits[p]) * stride_for_source[p];
    map[static_cast<std::size_t>(idx)] = out;
    for (std::size_t p = n; p-- > 0;) {
      if (++digits[p] < shape.factors()[p]) break;
      digits[p] = 0;
    }
  }
  return map;
}

void require_square_shape(const ComplexMatrix& m, const DimShape& shape, const char* who) {
  if (m.rows() != m.cols())
    throw DimensionError(std::string(who) + ": matrix is not square");
  if (static_cast<std::size_t>(m.rows()) != shape.dim()) {
    std::ostringstream os;
    os << who << ": matrix dimension " << m.rows() << " does not match shape product " << shape.dim();
    throw DimensionError(os.str());
  }
}

}  // namespace

// -- DimShape ---------------------------------------------------------------

DimShape::DimShape(std::vector<std::size_t> factors, std::vector<std::string> labels)
    : factors_(std::move(factors)), labels_(std::move(labels)) {
  if (factors_.size() != labels_.size())
    throw DimensionError("DimShape: factor and label counts differ");
  for (auto f : factors_)
    if (f == 0) throw DimensionError("DimShape: zero-dimensional factor");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size())
    throw DimensionError("DimShape: duplicate labels in {" + join(labels_) + "}");
}

DimShape DimShape::single(std::size_t dim, std::string label) {
  return DimShape({dim}, {std::move(label)});
}

std::size_t DimShape::dim() const {
  std::size_t d = 1;
  for (auto f : factors_) {
    if (f != 0 && d > std::numeric_limits<std::size_t>::max() / f)
      throw DimensionError("DimShape: dimension overflow");
    d *= f;
  }
  return d;
}

bool DimShape::contains(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t DimShape::position(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    throw DimensionError("unknown subsystem label '" + label + "' (have {" + join(labels_) + "})");
  return static_cast<std::size_t>(it - labels_.begin());
}

DimShape DimShape::restricted_to(std::span<const std::string> keep) const {
  for (const auto& k : keep) (void)position(k);
  std::vector<std::size_t> f;
  std::vector<std::string> l;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (std::find(keep.begin(), keep.end(), labels_[i]) != keep.end()) {
      f.push_back(factors_[i]);
      l.push_back(labels_[i]);
    }
  }
  return DimShape(std::move(f), std::move(l));
}

DimShape DimShape::reordered(std::span<const std::string> order) const {
  if (order.size() != labels_.size())
    throw DimensionError("reorder: not a permutation of {" + join(labels_) + "}");
  std::vector<std::size_t> f;
  std::vector<std::string> l;
  std::set<std::string> seen;
  for (const auto& lab : order) {
    if (!seen.insert(lab).second)
      throw DimensionError("reorder: label '" + lab + "' repeated");
    f.push_back(factor(lab));
    l.push_back(lab);
  }
  return DimShape(std::move(f), std::move(l));
}

DimShape DimShape::concat(const DimShape& rhs) const {
  auto f = factors_;
  auto l = labels_;
  f.insert(f.end(), rhs.factors_.begin(), rhs.factors_.end());
  l.insert(l.end(), rhs.labels_.begin(), rhs.labels_.end());
  return DimShape(std::move(f), std::move(l));
}

DimShape DimShape::suffixed(const std::string& suffix) const {
  auto l = labels_;
  for (auto& s : l) s += suffix;
  return DimShape(factors_, std::move(l));
}

// -- tensor algebra ---------------------------------------------------------

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index rows = checked_product(a.rows(), b.rows());
  const Eigen::Index cols = checked_product(a.cols(), b.cols());
  ComplexMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix tensor_all(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) return ComplexMatrix::Identity(1, 1);
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = tensor(out, factors[i]);
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const DimShape& shape,
                                 std::span<const std::string> new_order) {
  require_square_shape(m, shape, "permute_subsystems");
  const auto map = permutation_map(shape, new_order);
  const Eigen::Index d = m.rows();
  ComplexMatrix out(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r)
      out(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(c)]) = m(r, c);
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const DimShape& shape,
                                 std::initializer_list<std::string> new_order) {
  return permute_subsystems(m, shape, std::span<const std::string>(new_order.begin(), new_order.size()));
}

ComplexVector permute_subsystems(const ComplexVector& v, const DimShape& shape,
                                 std::span<const std::string> new_order) {
  if (static_cast<std::size_t>(v.size()) != shape.dim())
    throw DimensionError("permute_subsystems: vector size does not match shape");
  const auto map = permutation_map(shape, new_order);
  ComplexVector out(v.size());
  for (Eigen::Index r = 0; r < v.size(); ++r) out(map[static_cast<std::size_t>(r)]) = v(r);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimShape& shape,
                            std::span<const std::string> keep) {
  require_square_shape(m, shape, "partial_trace");
  const DimShape kept = shape.restricted_to(keep);
  std::vector<std::string> order = kept.labels();
  for (const auto& l : shape.labels())
    if (!kept.contains(l)) order.push_back(l);

  const ComplexMatrix p = permute_subsystems(m, shape, order);
  const auto dk = static_cast<Eigen::Index>(kept.dim());
  const Eigen::Index dt = m.rows() / dk;
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a)
    for (Eigen::Index b = 0; b < dk; ++b) {
      Complex s = 0.0;
      for (Eigen::Index t = 0; t < dt; ++t) s += p(a * dt + t, b * dt + t);
      out(a, b) = s;
    }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimShape& shape,
                            std::initializer_list<std::string> keep) {
  return partial_trace(m, shape, std::span<const std::string>(keep.begin(), keep.size()));
}

// -- spectral ---------------------------------------------------------------

HermEig herm_eig(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw DimensionError("herm_eig: matrix is not square");
  if (!all_finite(m)) throw ValidationError("herm_eig: non-finite entries");
  const double herr = hermiticity_error(m);
  if (herr > tol.herm_tol) {
    std::ostringstream os;
    os << "herm_eig: input is not Hermitian (max |m - m^dagger| = " << herr << ")";
    throw ValidationError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) throw NumericalError("herm_eig: eigensolver failed");
  const Eigen::Index n = m.rows();
  HermEig out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

RealVector clamp_spectrum(RealVector values, const Tolerances& tol) {
  for (auto& v : values)
    if (std::abs(v) < tol.psd_floor) v = 0.0;
  return values;
}

ComplexMatrix herm_fn(const ComplexMatrix& m, const std::function<double(double)>& f,
                      KernelPolicy policy, const Tolerances& tol) {
  const HermEig eig = herm_eig(m, tol);
  const RealVector lam = clamp_spectrum(eig.values, tol);
  RealVector flam(lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    const bool kernel = lam(k) == 0.0;
    if (kernel && policy == KernelPolicy::reject)
      throw ValidationError("herm_fn: zero eigenvalue present under reject policy");
    const double v = f(lam(k));
    if (!std::isfinite(v)) {
      if (kernel) {
        flam(k) = 0.0;
        continue;
      }
      std::ostringstream os;
      os << "herm_fn: function undefined at eigenvalue " << lam(k);
      throw ValidationError(os.str());
    }
    flam(k) = v;
  }
  return eig.vectors * flam.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

// -- helpers ----------------------------------------------------------------

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m - m.adjoint());
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

double unitarity_error(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

double trace_norm(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

ComplexVector vec_row_major(const ComplexMatrix& m) {
  ComplexVector v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

ComplexMatrix unvec_row_major(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw DimensionError("unvec: size mismatch");
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  return m;
}

ComplexMatrix identity(std::size_t d) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

ComplexMatrix matrix_unit(std::size_t d, std::size_t i, std::size_t j) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  return m;
}

ComplexVector omega_vector(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  ComplexVector v = ComplexVector::Zero(n * n);
  for (Eigen::Index i = 0; i < n; ++i) v(i * n + i) = 1.0;
  return v;
}

ComplexMatrix swap_operator(std::size_t a, std::size_t b) {
  const auto da = static_cast<Eigen::Index>(a);
  const auto db = static_cast<Eigen::Index>(b);
  ComplexMatrix w = ComplexMatrix::Zero(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < db; ++j) w(j * da + i, i * db + j) = 1.0;
  return w;
}

}  // namespace icb
