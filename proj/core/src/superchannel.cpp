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

#include "icbounds/superchannel.hpp"

#include <cmath>
#include <sstream>

#include "icbounds/errors.hpp"

namespace icb {

Superchannel Superchannel::build(const ComplexMatrix& u, const DensityMatrix& rho_se, const Tolerances& tol) {
  if (u.rows() != u.cols()) throw DimensionError("superchannel: U is not square");
  if (rho_se.shape().rank() != 2) throw DimensionError("superchannel: rho_SE must have exactly two factors (S, E)");
  if (static_cast<std::size_t>(u.rows()) != rho_se.dim())
    throw DimensionError("superchannel: U and rho_SE dimensions differ");
  if (!all_finite(u)) throw ValidationError("superchannel: U has non-finite entries");
  const double uerr = unitarity_error(u);
  if (uerr > tol.unitary_tol) {
    std::ostringstream os;
    os << "superchannel: U is not unitary (max |U^dagger U - I| = " << uerr << ")";
    throw ValidationError(os.str());
  }

  Superchannel sc;
  sc.d_s_ = rho_se.shape().factors()[0];
  sc.d_e_ = rho_se.shape().factors()[1];
  sc.u_ = u;
  sc.rho_se_ = rho_se.relabeled(DimShape({sc.d_s_, sc.d_e_}, {"S", "E"}));
  sc.sigma_ = sc.rho_se_.marginal({"S"});
  sc.tau_ = sc.rho_se_.marginal({"E"});
  sc.phi_ = channel_from_dilation(u, sc.tau_, tol);

  const std::size_t d = sc.d_s_;
  const std::size_t de = sc.d_e_;
  const auto U = [&](std::size_t s, std::size_t e, std::size_t s2, std::size_t e2) {
    return u(static_cast<Eigen::Index>(s * de + e), static_cast<Eigen::Index>(s2 * de + e2));
  };
  const auto R = [&](std::size_t s, std::size_t e, std::size_t s2, std::size_t e2) {
    return sc.rho_se_.matrix()(static_cast<Eigen::Index>(s * de + e), static_cast<Eigen::Index>(s2 * de + e2));
  };

  // M_{abc;pqr} = sum_{xyz} U_{ax;by} rho_{cy;rz} conj(U_{px;qz})
  sc.tensor_.assign(d * d * d * d * d * d, Complex(0.0));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t p = 0; p < d; ++p)
          for (std::size_t q = 0; q < d; ++q)
            for (std::size_t r = 0; r < d; ++r) {
              Complex s = 0.0;
              for (std::size_t x = 0; x < de; ++x)
                for (std::size_t y = 0; y < de; ++y)
                  for (std::size_t z = 0; z < de; ++z) s += U(a, x, b, y) * R(c, y, r, z) * std::conj(U(p, x, q, z));
              sc.tensor_[sc.flat(a, b, c, p, q, r)] = s;
            }

  // M# from the operational formula, one Choi basis element per column.
  const auto d2 = static_cast<Eigen::Index>(d * d);
  sc.msharp_ = ComplexMatrix::Zero(d2, d2 * d2);
  for (Eigen::Index row = 0; row < d2; ++row)
    for (Eigen::Index col = 0; col < d2; ++col) {
      ComplexMatrix unit = ComplexMatrix::Zero(d2, d2);
      unit(row, col) = 1.0;
      sc.msharp_.col(row * d2 + col) = static_cast<double>(d) * vec_row_major(sc.act_operator(unit));
    }
  return sc;
}

std::size_t Superchannel::flat(std::size_t a, std::size_t b, std::size_t c, std::size_t p, std::size_t q,
                               std::size_t r) const {
  const std::size_t d = d_s_;
  return ((((a * d + b) * d + c) * d + p) * d + q) * d + r;
}

Complex Superchannel::index_tensor(std::size_t a, std::size_t b, std::size_t c, std::size_t p, std::size_t q,
                                   std::size_t r) const {
  return tensor_.at(flat(a, b, c, p, q, r));
}

DensityMatrix Superchannel::act(const QuantumOperation& op, const Tolerances& tol) const {
  if (op.d_in() != d_s_ || op.d_out() != d_s_) throw DimensionError("superchannel: operation does not act on S");
  if (!op.trace_preserving())
    throw ValidationError("superchannel: act requires a trace-preserving operation; use act_normalized");
  const ComplexMatrix ie = identity(d_e_);
  const auto n = static_cast<Eigen::Index>(d_s_ * d_e_);
  ComplexMatrix prepared = ComplexMatrix::Zero(n, n);
  for (const auto& k : op.kraus()) {
    const ComplexMatrix ke = tensor(k, ie);
    prepared.noalias() += ke * rho_se_.matrix() * ke.adjoint();
  }
  const ComplexMatrix evolved = u_ * prepared * u_.adjoint();
  return DensityMatrix(hermitian_part(partial_trace(evolved, rho_se_.shape(), {"S"})), DimShape::single(d_s_, "S"),
                       tol);
}

ComplexMatrix Superchannel::act_index(const QuantumOperation& op) const {
  if (op.d_in() != d_s_ || op.d_out() != d_s_) throw DimensionError("superchannel: operation does not act on S");
  const std::size_t d = d_s_;
  const ComplexMatrix& choi = op.choi();
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t p = 0; p < d; ++p) {
      Complex s = 0.0;
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t c = 0; c < d; ++c)
          for (std::size_t q = 0; q < d; ++q)
            for (std::size_t r = 0; r < d; ++r)
              s += tensor_[flat(a, b, c, p, q, r)] *
                   choi(static_cast<Eigen::Index>(b * d + c), static_cast<Eigen::Index>(q * d + r));
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(p)) = s;
    }
  return out;
}

ComplexMatrix Superchannel::act_operator(const ComplexMatrix& choi_like) const {
  const auto d = static_cast<Eigen::Index>(d_s_);
  const auto de = static_cast<Eigen::Index>(d_e_);
  if (choi_like.rows() != d * d || choi_like.cols() != d * d)
    throw DimensionError("superchannel: operator is not on (out (x) in) of S");
  // Y[(o,e),(o',e')] = sum_{i,i'} X[(o,i),(o',i')] rho[(i,e),(i',e')]
  const ComplexMatrix& rho = rho_se_.matrix();
  ComplexMatrix y = ComplexMatrix::Zero(d * de, d * de);
  for (Eigen::Index o = 0; o < d; ++o)
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index op = 0; op < d; ++op)
        for (Eigen::Index ip = 0; ip < d; ++ip) {
          const Complex w = choi_like(o * d + i, op * d + ip);
          if (w == Complex(0.0)) continue;
          y.block(o * de, op * de, de, de) += w * rho.block(i * de, ip * de, de, de);
        }
  const ComplexMatrix evolved = u_ * y * u_.adjoint();
  return partial_trace(evolved, rho_se_.shape(), {"S"});
}

ComplexMatrix Superchannel::msharp_apply(const ComplexMatrix& x) const {
  const auto d = static_cast<Eigen::Index>(d_s_);
  if (x.rows() != d * d || x.cols() != d * d) throw DimensionError("superchannel: operation state has wrong dimension");
  return unvec_row_major(msharp_ * vec_row_major(x), d, d);
}

DensityMatrix Superchannel::act_normalized(const DensityMatrix& op_state, const Tolerances& tol) const {
  const ComplexMatrix out = hermitian_part(msharp_apply(op_state.matrix()));
  const double tr = out.trace().real();
  if (std::abs(tr - 1.0) > tol.trace_tol) {
    std::ostringstream os;
    os << "superchannel: M# image has trace " << tr
       << "; the input is not the Choi state of a trace-preserving operation";
    throw ValidationError(os.str());
  }
  return DensityMatrix(out, DimShape::single(d_s_, "S"), tol);
}

ComplexMatrix Superchannel::choi_of_msharp() const {
  const auto d = static_cast<Eigen::Index>(d_s_);
  const Eigen::Index d2 = d * d;
  ComplexMatrix j = ComplexMatrix::Zero(d * d2, d * d2);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index p = 0; p < d; ++p)
      for (Eigen::Index beta = 0; beta < d2; ++beta)
        for (Eigen::Index betap = 0; betap < d2; ++betap)
          j(a * d2 + beta, p * d2 + betap) = msharp_(a * d + p, beta * d2 + betap);
  return j;
}

DimShape Superchannel::msharp_choi_shape() const {
  return DimShape({d_s_, d_s_, d_s_}, {"S_final", "S_out", "S_in"});
}

Neso Superchannel::neso(const Tolerances& tol) const {
  NessResult fp = fixed_point(phi_, tol);
  QuantumOperation op = replace_channel(fp.state, d_s_, tol);
  DensityMatrix ness = fp.state;
  return Neso{std::move(ness), tau_, std::move(op), std::move(fp)};
}

double msharp_tp_residual(const Superchannel& sc) {
  const ComplexMatrix j = sc.choi_of_msharp();
  const ComplexMatrix w = partial_trace(j, sc.msharp_choi_shape(), {"S_out", "S_in"});
  return max_abs(w - identity(sc.d_s() * sc.d_s()));
}

double msharp_restricted_tp_residual(const Superchannel& sc) {
  const std::size_t d = sc.d_s();
  const ComplexMatrix j = sc.choi_of_msharp();
  const ComplexMatrix w = partial_trace(j, sc.msharp_choi_shape(), {"S_out", "S_in"});
  const DimShape in_shape({d, d}, {"S_out", "S_in"});
  const ComplexMatrix y = partial_trace(w, in_shape, {"S_in"}) / static_cast<double>(d);
  const double structural = max_abs(w - tensor(identity(d), y));
  const double normalization = std::abs(y.trace() / static_cast<double>(d) - Complex(1.0));
  return std::max(structural, normalization);
}

}  // namespace icb
