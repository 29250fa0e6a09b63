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

// Reference implementations used as oracles by the tests. They are written
// with explicit index loops and share no code with the library beyond the
// matrix type.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace icbtest {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// tr_B of an operator on A (x) B.
inline Mat trace_second(const Mat& m, Eigen::Index da, Eigen::Index db) {
  Mat out = Mat::Zero(da, da);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      for (Eigen::Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

/// tr_A of an operator on A (x) B.
inline Mat trace_first(const Mat& m, Eigen::Index da, Eigen::Index db) {
  Mat out = Mat::Zero(db, db);
  for (Eigen::Index i = 0; i < db; ++i)
    for (Eigen::Index j = 0; j < db; ++j)
      for (Eigen::Index k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

inline std::vector<double> eigenvalues(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

inline double entropy(const Mat& rho) {
  double s = 0.0;
  for (double x : eigenvalues(rho))
    if (x > 1e-14) s -= x * std::log(x);
  return s;
}

inline Mat matrix_log(const Mat& rho, double floor = 1e-12) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + rho.adjoint()));
  Eigen::VectorXcd l(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < l.size(); ++i) l(i) = es.eigenvalues()(i) > floor ? std::log(es.eigenvalues()(i)) : 0.0;
  return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().adjoint();
}

/// D[a || b] for full-rank b.
inline double relative_entropy(const Mat& a, const Mat& b) {
  return (a * (matrix_log(a) - matrix_log(b))).trace().real();
}

inline double min_eigenvalue(const Mat& m) {
  const auto v = eigenvalues(m);
  return v.front();
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

/// Operational action of a Kraus family on x.
inline Mat apply_kraus(const std::vector<Mat>& kraus, const Mat& x) {
  Mat out = Mat::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) out += k * x * k.adjoint();
  return out;
}

/// Choi matrix sum_ij A(|i><j|) (x) |i><j| (output slow, input fast).
inline Mat choi_by_units(const std::vector<Mat>& kraus) {
  const Eigen::Index din = kraus.front().cols();
  const Eigen::Index dout = kraus.front().rows();
  Mat out = Mat::Zero(dout * din, dout * din);
  for (Eigen::Index i = 0; i < din; ++i)
    for (Eigen::Index j = 0; j < din; ++j) {
      Mat e = Mat::Zero(din, din);
      e(i, j) = 1.0;
      const Mat img = apply_kraus(kraus, e);
      for (Eigen::Index a = 0; a < dout; ++a)
        for (Eigen::Index b = 0; b < dout; ++b) out(a * din + i, b * din + j) = img(a, b);
    }
  return out;
}

inline Mat swap(Eigen::Index a, Eigen::Index b) {
  Mat s = Mat::Zero(a * b, a * b);
  for (Eigen::Index i = 0; i < a; ++i)
    for (Eigen::Index j = 0; j < b; ++j) s(j * a + i, i * b + j) = 1.0;
  return s;
}

}  // namespace icbtest
