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

#include "icbounds/random.hpp"

#include <cmath>

#include "icbounds/errors.hpp"

namespace icb {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.complex_normal();
  return g;
}

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
  if (d == 0) throw DimensionError("random_unitary: zero dimension");
  const ComplexMatrix z = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(z.rows(), z.cols());
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex rkk = r(k, k);
    const double a = std::abs(rkk);
    if (a > 0) q.col(k) *= rkk / a;
  }
  return q;
}

ComplexVector random_pure_vector(std::size_t d, Rng& rng) {
  ComplexVector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

DensityMatrix random_density(std::size_t d, std::size_t rank, Rng& rng, const std::string& label) {
  return random_density(DimShape::single(d, label), rank, rng);
}

DensityMatrix random_density(const DimShape& shape, std::size_t rank, Rng& rng) {
  const std::size_t d = shape.dim();
  if (rank < 1 || rank > d) throw DimensionError("random_density: rank must lie in [1, d]");
  const ComplexMatrix g = ginibre(d, rank, rng);
  ComplexMatrix w = g * g.adjoint();
  w /= w.trace().real();
  return DensityMatrix(hermitian_part(w), shape);
}

std::vector<ComplexMatrix> random_kraus(std::size_t d_in, std::size_t d_out, std::size_t kraus_rank, Rng& rng) {
  if (kraus_rank < 1 || kraus_rank * d_out < d_in)
    throw DimensionError("random_kraus: kraus_rank * d_out must be at least d_in");
  const ComplexMatrix u = random_unitary(kraus_rank * d_out, rng);
  const auto di = static_cast<Eigen::Index>(d_in);
  const auto dout = static_cast<Eigen::Index>(d_out);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(kraus_rank);
  for (std::size_t k = 0; k < kraus_rank; ++k)
    kraus.push_back(u.block(static_cast<Eigen::Index>(k) * dout, 0, dout, di));
  return kraus;
}

std::vector<double> random_probabilities(std::size_t n, Rng& rng) {
  if (n == 0) throw DimensionError("random_probabilities: empty");
  std::vector<double> p(n);
  double s = 0.0;
  for (auto& x : p) {
    x = -std::log(1.0 - rng.uniform());
    s += x;
  }
  for (auto& x : p) x /= s;
  return p;
}

}  // namespace icb
