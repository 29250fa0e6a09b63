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

#include <gtest/gtest.h>

#include <cmath>

#include "icbounds/channels.hpp"
#include "icbounds/errors.hpp"
#include "icbounds/random.hpp"
#include "icbounds/superchannel.hpp"
#include "oracles.hpp"

namespace {

using icb::ComplexMatrix;
using icb::DensityMatrix;
using icb::DimShape;
using icb::QuantumOperation;
using icb::Superchannel;

struct Instance {
  ComplexMatrix u;
  DensityMatrix rho;
  std::size_t ds, de;
};

Instance random_instance(std::size_t ds, std::size_t de, icb::Rng& rng) {
  const DimShape se({ds, de}, {"S", "E"});
  ComplexMatrix u = icb::random_unitary(ds * de, rng);
  DensityMatrix rho = icb::random_density(se, rng.uniform_int(1, std::min<std::size_t>(4, ds * de)), rng);
  return {std::move(u), std::move(rho), ds, de};
}

QuantumOperation random_channel(std::size_t d, icb::Rng& rng) {
  return QuantumOperation::from_kraus(icb::random_kraus(d, d, rng.uniform_int(1, d * d), rng));
}

/// tr_E[U (A (x) id)(rho) U^dagger] by explicit Kronecker products.
ComplexMatrix operational_oracle(const Instance& in, const QuantumOperation& op) {
  ComplexMatrix prepared = ComplexMatrix::Zero(in.rho.matrix().rows(), in.rho.matrix().cols());
  const ComplexMatrix ie = ComplexMatrix::Identity(static_cast<Eigen::Index>(in.de), static_cast<Eigen::Index>(in.de));
  for (const auto& k : op.kraus()) prepared += icbtest::kron(k, ie) * in.rho.matrix() * icbtest::kron(k, ie).adjoint();
  return icbtest::trace_second(in.u * prepared * in.u.adjoint(), static_cast<Eigen::Index>(in.ds),
                               static_cast<Eigen::Index>(in.de));
}

TEST(SuperchannelTest, IndexTensorMatchesDefiningSum) {
  icb::Rng rng(61);
  const Instance in = random_instance(2, 3, rng);
  const Superchannel sc = Superchannel::build(in.u, in.rho);
  const auto de = static_cast<Eigen::Index>(in.de);
  auto uel = [&](Eigen::Index a, Eigen::Index x, Eigen::Index b, Eigen::Index y) { return in.u(a * de + x, b * de + y); };
  auto rel = [&](Eigen::Index c, Eigen::Index y, Eigen::Index r, Eigen::Index z) {
    return in.rho.matrix()(c * de + y, r * de + z);
  };
  double worst = 0.0;
  for (Eigen::Index a = 0; a < 2; ++a)
    for (Eigen::Index b = 0; b < 2; ++b)
      for (Eigen::Index c = 0; c < 2; ++c)
        for (Eigen::Index p = 0; p < 2; ++p)
          for (Eigen::Index q = 0; q < 2; ++q)
            for (Eigen::Index r = 0; r < 2; ++r) {
              icb::Complex sum = 0.0;
              for (Eigen::Index x = 0; x < de; ++x)
                for (Eigen::Index y = 0; y < de; ++y)
                  for (Eigen::Index z = 0; z < de; ++z) sum += uel(a, x, b, y) * rel(c, y, r, z) * std::conj(uel(p, x, q, z));
              const auto i = [](Eigen::Index v) { return static_cast<std::size_t>(v); };
              worst = std::max(worst, std::abs(sum - sc.index_tensor(i(a), i(b), i(c), i(p), i(q), i(r))));
            }
  EXPECT_LT(worst, 1e-14);
}

TEST(SuperchannelTest, IndexContractionAgreesWithOperationalForm) {
  icb::Rng rng(62);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance in = random_instance(2, 2 + static_cast<std::size_t>(trial % 2), rng);
    const Superchannel sc = Superchannel::build(in.u, in.rho);
    const QuantumOperation op = random_channel(2, rng);
    const ComplexMatrix via_op = sc.act(op).matrix();
    EXPECT_LT(icbtest::max_abs(sc.act_index(op) - via_op), 1e-10);
    EXPECT_LT(icbtest::max_abs(operational_oracle(in, op) - via_op), 1e-12);
    EXPECT_LT(icbtest::max_abs(sc.act_operator(op.choi()) - via_op), 1e-12);
  }
}

TEST(SuperchannelTest, OutputsAreStatesAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    icb::Rng rng(icb::derive_seed(63, seed));
    const Instance in = random_instance(2, 2 + seed % 2, rng);
    const Superchannel sc = Superchannel::build(in.u, in.rho);
    const ComplexMatrix out = sc.act(random_channel(2, rng)).matrix();
    EXPECT_GE(icbtest::min_eigenvalue(out), -1e-9);
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-10);
  }
}

TEST(SuperchannelTest, ProductInitialStateReducesToChannelComposition) {
  icb::Rng rng(64);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t de = 2 + static_cast<std::size_t>(trial % 2);
    const DensityMatrix sigma = icb::random_density(2, 2, rng, "S");
    const DensityMatrix tau = icb::random_density(de, de, rng, "E");
    const ComplexMatrix u = icb::random_unitary(2 * de, rng);
    const Superchannel sc = Superchannel::build(u, icb::tensor(sigma, tau));
    const QuantumOperation op = random_channel(2, rng);
    const ComplexMatrix expect = icb::apply(sc.reduced_channel(), icb::apply(op, sigma)).matrix();
    EXPECT_LT(icbtest::max_abs(sc.act(op).matrix() - expect), 1e-10);
  }
}

TEST(SuperchannelTest, MeasureAndPrepareUsesConditionedEnvironment) {
  icb::Rng rng(65);
  const Instance in = random_instance(2, 2, rng);
  const Superchannel sc = Superchannel::build(in.u, in.rho);
  // A(X) = sum_m <m|X|m> pi_m
  const DensityMatrix pi0 = icb::random_density(2, 1, rng);
  const DensityMatrix pi1 = icb::random_density(2, 2, rng);
  std::vector<ComplexMatrix> kraus;
  for (int m = 0; m < 2; ++m) {
    const icb::HermEig e = icb::herm_eig(m == 0 ? pi0.matrix() : pi1.matrix());
    for (Eigen::Index j = 0; j < 2; ++j)
      if (e.values(j) > 1e-12) kraus.push_back(std::sqrt(e.values(j)) * e.vectors.col(j) * ComplexMatrix::Identity(2, 2).row(m));
  }
  const QuantumOperation op = QuantumOperation::from_kraus(kraus);

  ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
  for (Eigen::Index m = 0; m < 2; ++m) {
    // p_m tau^(m) = <m|_S rho_SE |m>_S
    const ComplexMatrix weighted = in.rho.matrix().block(m * 2, m * 2, 2, 2);
    const ComplexMatrix& pi = m == 0 ? pi0.matrix() : pi1.matrix();
    expect += icbtest::trace_second(in.u * icbtest::kron(pi, weighted) * in.u.adjoint(), 2, 2);
  }
  EXPECT_LT(icbtest::max_abs(sc.act(op).matrix() - expect), 1e-12);
}

TEST(SuperchannelTest, NormalizedMapChoiIsPositive) {
  icb::Rng rng(66);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance in = random_instance(2, 2 + static_cast<std::size_t>(trial % 2), rng);
    const Superchannel sc = Superchannel::build(in.u, in.rho);
    EXPECT_GE(icbtest::min_eigenvalue(sc.choi_of_msharp()), -1e-9);
    EXPECT_LT(icb::msharp_restricted_tp_residual(sc), 1e-9);
  }
}

TEST(SuperchannelTest, NormalizedMapTraceFormula) {
  // tr M#[X] = d tr[(tr_out X) sigma^T] for any X on out (x) in.
  icb::Rng rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance in = random_instance(2, 2, rng);
    const Superchannel sc = Superchannel::build(in.u, in.rho);
    const ComplexMatrix x = icb::ginibre(4, 4, rng);
    const ComplexMatrix in_marginal = icbtest::trace_first(x, 2, 2);
    const icb::Complex expect = 2.0 * (in_marginal * sc.system_marginal().matrix().transpose()).trace();
    EXPECT_LT(std::abs(sc.msharp_apply(x).trace() - expect), 1e-12);
  }
}

TEST(SuperchannelTest, NormalizedMapIsTracePreservingOnChoiStates) {
  icb::Rng rng(68);
  const Instance in = random_instance(2, 3, rng);
  const Superchannel sc = Superchannel::build(in.u, in.rho);
  for (int trial = 0; trial < 20; ++trial) {
    const QuantumOperation op = random_channel(2, rng);
    const DensityMatrix out = sc.act_normalized(op.normalized_choi());
    EXPECT_LT(icbtest::max_abs(out.matrix() - sc.act(op).matrix()), 1e-12);
  }
}

TEST(SuperchannelTest, NormalizedMapLeavesStateSpaceOffChoiStates) {
  // sigma = |0><0| and X = |1><1| (x) |1><1| on (out, in): tr M#[X] = 2 <1|sigma|1> = 0.
  const DimShape se({2, 2}, {"S", "E"});
  const DensityMatrix rho = icb::tensor(DensityMatrix::basis_state(2, 0, "S"), DensityMatrix::basis_state(2, 1, "E"));
  const Superchannel sc = Superchannel::build(ComplexMatrix::Identity(4, 4), rho);
  ComplexMatrix x = ComplexMatrix::Zero(4, 4);
  x(3, 3) = 1.0;
  const DensityMatrix state(x, DimShape({2, 2}, {"S_out", "S_in"}));
  EXPECT_NEAR(sc.msharp_apply(x).trace().real(), 0.0, 1e-15);
  EXPECT_THROW(sc.act_normalized(state), icb::ValidationError);
  EXPECT_GT(icb::msharp_tp_residual(sc), 0.5);
}

TEST(SuperchannelTest, NormalizedMapFullyTracePreservingWhenSystemMarginalMixed) {
  icb::Rng rng(69);
  for (int trial = 0; trial < 50; ++trial) {
    // Choi state of a random channel S -> E has a maximally mixed S marginal.
    const std::size_t de = 2 + static_cast<std::size_t>(trial % 2);
    const QuantumOperation to_env = QuantumOperation::from_kraus(
        icb::random_kraus(2, de, rng.uniform_int(1, 2 * de), rng), DimShape::single(2, "S"), DimShape::single(de, "E"));
    const DensityMatrix choi = to_env.normalized_choi();  // (E_out, S_in)
    const DensityMatrix rho = choi.reordered(std::vector<std::string>{"S_in", "E_out"});
    const Superchannel sc = Superchannel::build(icb::random_unitary(2 * de, rng), rho);
    EXPECT_LT(icb::msharp_tp_residual(sc), 1e-9);
    EXPECT_GE(icbtest::min_eigenvalue(sc.choi_of_msharp()), -1e-9);
  }
}

TEST(SuperchannelTest, NesoMapsToSteadyState) {
  icb::Rng rng(70);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance in = random_instance(2, 2 + static_cast<std::size_t>(trial % 2), rng);
    const Superchannel sc = Superchannel::build(in.u, in.rho);
    const icb::Neso neso = sc.neso();
    EXPECT_LT(icbtest::max_abs(sc.act(neso.op).matrix() - neso.ness.matrix()), 1e-9);
    EXPECT_LT(icbtest::max_abs(icb::apply(sc.reduced_channel(), neso.ness).matrix() - neso.ness.matrix()), 1e-9);
    EXPECT_LT(icbtest::max_abs(neso.normalized().matrix() -
                               icb::tensor(neso.ness.matrix(), ComplexMatrix::Identity(2, 2) / 2.0)),
              1e-14);
  }
}

TEST(SuperchannelTest, BuildValidatesInputs) {
  icb::Rng rng(71);
  const Instance in = random_instance(2, 2, rng);
  EXPECT_THROW(Superchannel::build(2.0 * in.u, in.rho), icb::ValidationError);
  EXPECT_THROW(Superchannel::build(icb::random_unitary(6, rng), in.rho), icb::DimensionError);
  EXPECT_THROW(Superchannel::build(in.u, DensityMatrix(in.rho.matrix())), icb::DimensionError);
  const Superchannel sc = Superchannel::build(in.u, in.rho);
  EXPECT_THROW(sc.act(random_channel(3, rng)), icb::DimensionError);
}

}  // namespace
