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

#include "icbounds/bounds.hpp"
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
using icb::Verdict;

const double kLog2 = std::log(2.0);

QuantumOperation random_channel(std::size_t d, icb::Rng& rng) {
  return QuantumOperation::from_kraus(icb::random_kraus(d, d, rng.uniform_int(1, d * d), rng));
}

Superchannel random_superchannel(std::size_t ds, std::size_t de, icb::Rng& rng) {
  const DimShape se({ds, de}, {"S", "E"});
  const ComplexMatrix u = icb::random_unitary(ds * de, rng);
  return Superchannel::build(u, icb::random_density(se, rng.uniform_int(1, std::min<std::size_t>(4, ds * de)), rng));
}

/// Joint state whose S marginal is I/d: Choi state of a random channel S -> E.
DensityMatrix mixed_marginal_state(std::size_t ds, std::size_t de, icb::Rng& rng) {
  const QuantumOperation to_env = QuantumOperation::from_kraus(
      icb::random_kraus(ds, de, rng.uniform_int(1, ds * de), rng), DimShape::single(ds, "S"), DimShape::single(de, "E"));
  return to_env.normalized_choi().reordered(std::vector<std::string>{"S_in", "E_out"});
}

ComplexMatrix partial_swap(std::size_t d, double theta) {
  return std::cos(theta) * icb::identity(d * d) + icb::Complex(0.0, std::sin(theta)) * icb::swap_operator(d, d);
}

TEST(Report, VerdictRules) {
  using icb::ExtendedReal;
  EXPECT_EQ(icb::make_report(icb::BoundKind::main, 1.0, 1.0 + 1e-9, 1e-8).verdict, Verdict::pass);
  EXPECT_EQ(icb::make_report(icb::BoundKind::main, 1.0, 1.1, 1e-8).verdict, Verdict::fail);
  EXPECT_EQ(icb::make_report(icb::BoundKind::main, 1.0, ExtendedReal::neg_infinity(), 1e-8).verdict, Verdict::pass);
  EXPECT_EQ(icb::make_report(icb::BoundKind::main, ExtendedReal::pos_infinity(), 3.0, 1e-8).verdict, Verdict::pass);
  EXPECT_EQ(icb::make_report(icb::BoundKind::main, ExtendedReal::pos_infinity(), ExtendedReal::pos_infinity(), 1e-8).verdict,
            Verdict::indeterminate);
  const auto r = icb::make_report(icb::BoundKind::main, 2.0, 0.5, 1e-8);
  EXPECT_EQ(r.slack.value(), 1.5);
}

TEST(Spohn, IdentityChannelIsTight) {
  icb::Rng rng(81);
  const DensityMatrix rho = icb::random_density(3, 2, rng);
  const icb::BoundReport r = icb::spohn(icb::identity_channel(3), rho);
  EXPECT_LT(std::abs(r.slack.value()), 1e-10);
  EXPECT_TRUE(r.pass());
}

TEST(Spohn, CompletelyDepolarizingArithmetic) {
  icb::Rng rng(82);
  for (std::size_t d : {2u, 3u}) {
    const DensityMatrix rho = icb::random_density(d, 2, rng);
    const icb::BoundReport r = icb::spohn(icb::completely_depolarizing(d), rho);
    EXPECT_NEAR(r.lhs.value(), std::log(static_cast<double>(d)) - icbtest::entropy(rho.matrix()), 1e-12);
    EXPECT_NEAR(r.rhs.value(), 0.0, 1e-12);
    EXPECT_TRUE(r.pass());
  }
}

TEST(Spohn, SupportMismatchGivesMinusInfinityAndPasses) {
  const DensityMatrix target = DensityMatrix::basis_state(2, 0);
  const DensityMatrix rho = DensityMatrix::maximally_mixed(DimShape::single(2, "S"));
  const icb::BoundReport r = icb::spohn(icb::replace_channel(target, 2), rho);
  EXPECT_EQ(r.rhs.kind(), icb::ExtendedReal::Kind::neg_inf);
  EXPECT_TRUE(r.pass());
  EXPECT_FALSE(r.flags.empty());
}

TEST(Spohn, RandomSweepPasses) {
  icb::Rng rng(83);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 2);
    const QuantumOperation op = random_channel(d, rng);
    const DensityMatrix rho = icb::random_density(d, rng.uniform_int(1, d), rng);
    const icb::BoundReport r = icb::spohn(op, rho);
    ASSERT_TRUE(r.pass()) << "trial " << trial << " slack " << r.slack.to_string();
    // Oracle: the slack equals the contraction D[rho||e] - D[Phi rho||e].
    const icb::NessResult e = icb::fixed_point(op);
    const ComplexMatrix out = icbtest::apply_kraus(op.kraus(), rho.matrix());
    if (icbtest::min_eigenvalue(e.state.matrix()) > 1e-8) {
      const double contraction = icbtest::relative_entropy(rho.matrix(), e.state.matrix()) -
                                 icbtest::relative_entropy(out, e.state.matrix());
      EXPECT_NEAR(r.slack.value(), contraction, 1e-8);
    }
  }
}

TEST(MainBound, SaturatesAtSteadyOperation) {
  icb::Rng rng(84);
  for (int trial = 0; trial < 50; ++trial) {
    const Superchannel sc = random_superchannel(2, 2 + static_cast<std::size_t>(trial % 2), rng);
    const icb::Neso neso = sc.neso();
    const icb::BoundReport r = icb::main_bound(sc, neso, neso.op);
    ASSERT_TRUE(r.slack.is_finite());
    EXPECT_LT(std::abs(r.slack.value()), 1e-8);
    EXPECT_LT(std::abs(r.values.at("neso_slack")), 1e-8);
  }
}

TEST(MainBound, SlackEqualsRelativeEntropyContraction) {
  icb::Rng rng(85);
  for (int trial = 0; trial < 100; ++trial) {
    const Superchannel sc = random_superchannel(2, 2 + static_cast<std::size_t>(trial % 2), rng);
    const QuantumOperation op = random_channel(2, rng);
    const icb::BoundReport r = icb::main_bound(sc, op);
    if (!r.slack.is_finite()) continue;
    EXPECT_LT(r.values.at("slack_identity_residual"), 1e-9);
    // Independent oracle for D[A_d || E_d] - D[sigma' || e] with full-rank steady state.
    const icb::Neso neso = sc.neso();
    if (icbtest::min_eigenvalue(neso.ness.matrix()) < 1e-8) continue;
    const ComplexMatrix ad = op.normalized_choi().matrix();
    const ComplexMatrix ed = icbtest::kron(neso.ness.matrix(), ComplexMatrix::Identity(2, 2) / 2.0);
    const ComplexMatrix out = sc.act(op).matrix();
    const double oracle =
        icbtest::relative_entropy(ad, ed) - icbtest::relative_entropy(out, neso.ness.matrix());
    EXPECT_NEAR(r.slack.value(), oracle, 1e-8);
  }
}

TEST(MainBound, HoldsWhenSystemMarginalIsMaximallyMixed) {
  icb::Rng rng(86);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t de = 2 + static_cast<std::size_t>(trial % 2);
    const Superchannel sc = Superchannel::build(icb::random_unitary(2 * de, rng), mixed_marginal_state(2, de, rng));
    const icb::BoundReport r = icb::main_bound(sc, random_channel(2, rng));
    ASSERT_TRUE(r.pass()) << "trial " << trial << " slack " << r.slack.to_string();
  }
}

TEST(MainBound, CanFailWhenSystemMarginalIsNotMixed) {
  // U = I, rho_SE = |0><0| (x) tau: the reduced dynamics is the identity, so the
  // steady state is I/2, while A keeps |0> and resets |1> to I/2.
  icb::Rng rng(87);
  const DensityMatrix tau = icb::random_density(2, 2, rng, "E");
  const Superchannel sc = Superchannel::build(icb::identity(4), icb::tensor(DensityMatrix::basis_state(2, 0), tau));
  std::vector<ComplexMatrix> kraus(3, ComplexMatrix::Zero(2, 2));
  kraus[0](0, 0) = 1.0;
  kraus[1](0, 1) = std::sqrt(0.5);
  kraus[2](1, 1) = std::sqrt(0.5);
  const QuantumOperation op = QuantumOperation::from_kraus(kraus);
  const icb::BoundReport r = icb::main_bound(sc, op);
  EXPECT_NEAR(r.lhs.value(), -1.5 * kLog2, 1e-10);
  EXPECT_NEAR(r.rhs.value(), -kLog2, 1e-10);
  EXPECT_EQ(r.verdict, Verdict::fail);
  EXPECT_LT(r.values.at("slack_identity_residual"), 1e-9);
}

TEST(MainBound, ProductStateWithThrowAndReplaceMatchesThermalPath) {
  icb::Rng rng(88);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 2);
    const ComplexMatrix g = icb::ginibre(d, d, rng);
    const ComplexMatrix h = 0.5 * (g + g.adjoint());
    const double beta = 0.5 + rng.uniform();
    const DensityMatrix gibbs = icb::thermal_state(h, beta);
    const DensityMatrix sys = icb::random_density(d, d, rng);
    const Superchannel sc =
        Superchannel::build(partial_swap(d, 0.3 + rng.uniform()), icb::tensor(sys, gibbs.relabeled(DimShape::single(d, "E"))));
    const DensityMatrix sigma = icb::random_density(d, rng.uniform_int(1, d), rng);
    const icb::BoundReport thermal = icb::clausius(sc, sigma, h, beta);
    const icb::BoundReport general = icb::main_bound(sc, icb::replace_channel(sigma, d));
    EXPECT_NEAR(thermal.lhs.value(), general.lhs.value(), 1e-10);
    EXPECT_NEAR(thermal.rhs.value(), general.rhs.value(), 1e-10);
    EXPECT_TRUE(thermal.pass());
  }
}

TEST(Clausius, QubitScalarThermodynamics) {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(1, 1) = 1.0;
  const double z = 1.0 + std::exp(-1.0);
  const DensityMatrix gibbs = icb::thermal_state(h, 1.0);
  EXPECT_NEAR(gibbs.matrix()(0, 0).real(), 1.0 / z, 1e-15);
  EXPECT_NEAR(gibbs.matrix()(1, 1).real(), std::exp(-1.0) / z, 1e-15);
  const Superchannel sc = Superchannel::build(partial_swap(2, 0.7), icb::tensor(DensityMatrix::basis_state(2, 1),
                                                                               gibbs.relabeled(DimShape::single(2, "E"))));
  const icb::BoundReport r = icb::clausius(sc, DensityMatrix::basis_state(2, 1), h, 1.0);
  EXPECT_NEAR(r.values.at("Z"), z, 1e-14);
  EXPECT_NEAR(r.values.at("F"), -std::log(z), 1e-14);
  EXPECT_LT(r.values.at("free_energy_form_residual"), 1e-14);
  EXPECT_TRUE(r.pass());
}

TEST(Clausius, StationaryInputIsTight) {
  icb::Rng rng(89);
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(1, 1) = 0.4;
  h(2, 2) = 1.3;
  const DensityMatrix gibbs = icb::thermal_state(h, 0.8);
  const Superchannel sc = Superchannel::build(
      partial_swap(3, 0.9), icb::tensor(icb::random_density(3, 3, rng), gibbs.relabeled(DimShape::single(3, "E"))));
  const icb::BoundReport r = icb::clausius(sc, gibbs, h, 0.8);
  EXPECT_LT(std::abs(r.slack.value()), 1e-9);
}

TEST(Clausius, RejectsNonThermalSteadyState) {
  icb::Rng rng(90);
  const Superchannel sc = random_superchannel(2, 2, rng);
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(1, 1) = 1.0;
  EXPECT_THROW(icb::clausius(sc, DensityMatrix::basis_state(2, 0), h, 1.0), icb::ValidationError);
  EXPECT_THROW(icb::clausius(sc, DensityMatrix::basis_state(2, 0), h, -1.0), icb::ValidationError);
}

TEST(Qdpi, ProductOperationHasNoCorrelations) {
  icb::Rng rng(91);
  const Superchannel sp = random_superchannel(2, 2, rng);
  const Superchannel sq = random_superchannel(2, 2, rng);
  const QuantumOperation a = random_channel(2, rng).relabeled(DimShape::single(2, "P"), DimShape::single(2, "P"));
  const QuantumOperation b = random_channel(2, rng).relabeled(DimShape::single(2, "Q"), DimShape::single(2, "Q"));
  const icb::BoundReport r = icb::qdpi(sp, sq, icb::tensor(a, b));
  EXPECT_LT(std::abs(r.lhs.value()), 1e-9);
  EXPECT_LT(std::abs(r.rhs.value()), 1e-9);
  EXPECT_TRUE(r.pass());
}

TEST(Qdpi, DepolarizingSuperchannelsErasePreparedCorrelations) {
  // U = SWAP with a maximally mixed environment sends every operation to I/d.
  icb::Rng rng(92);
  const DensityMatrix rho = icb::tensor(icb::random_density(2, 2, rng), DensityMatrix::maximally_mixed(DimShape::single(2, "E")));
  const Superchannel dep = Superchannel::build(icb::swap_operator(2, 2), rho);
  const DimShape pq({2, 2}, {"P", "Q"});
  const QuantumOperation swap_op = QuantumOperation::from_kraus({icb::swap_operator(2, 2)}, pq, pq);
  const icb::BoundReport r = icb::qdpi(dep, dep, swap_op);
  EXPECT_NEAR(r.lhs.value(), 4.0 * kLog2, 1e-10);
  EXPECT_LT(std::abs(r.rhs.value()), 1e-9);
  EXPECT_TRUE(r.pass());
}

TEST(Qdpi, RoutesAgreeAndRespectRange) {
  icb::Rng rng(93);
  const DimShape pq({2, 2}, {"P", "Q"});
  for (int trial = 0; trial < 100; ++trial) {
    const Superchannel sp = random_superchannel(2, 2, rng);
    const Superchannel sq = random_superchannel(2, 2, rng);
    const QuantumOperation op = QuantumOperation::from_kraus(icb::random_kraus(4, 4, rng.uniform_int(1, 16), rng), pq, pq);
    const icb::BoundReport r = icb::qdpi(sp, sq, op);
    EXPECT_GE(r.rhs.value(), 0.0);
    EXPECT_LE(r.rhs.value(), 2.0 * kLog2 + 1e-9);
    EXPECT_LT(r.values.at("relent_mi_identity_residual"), 1e-9);
    for (const auto& f : r.flags) EXPECT_NE(f, "routes_inconsistent");
  }
}

TEST(Qdpi, HoldsWhenSystemMarginalsAreMaximallyMixed) {
  icb::Rng rng(94);
  const DimShape pq({2, 2}, {"P", "Q"});
  for (int trial = 0; trial < 300; ++trial) {
    const Superchannel sp = Superchannel::build(icb::random_unitary(4, rng), mixed_marginal_state(2, 2, rng));
    const Superchannel sq = Superchannel::build(icb::random_unitary(4, rng), mixed_marginal_state(2, 2, rng));
    const QuantumOperation op = QuantumOperation::from_kraus(icb::random_kraus(4, 4, rng.uniform_int(1, 16), rng), pq, pq);
    const icb::BoundReport r = icb::qdpi(sp, sq, op);
    ASSERT_TRUE(r.pass()) << "trial " << trial;
    EXPECT_GE(r.values.at("relent_slack"), -1e-8);
  }
}

TEST(Holevo, IdenticalCodewordsCarryNothing) {
  icb::Rng rng(95);
  const Superchannel sc = random_superchannel(2, 2, rng);
  const QuantumOperation op = random_channel(2, rng);
  icb::Ensemble ens{{0.3, 0.7}, {op, op}};
  icb::Rng meas(1);
  const icb::HolevoResult res = icb::holevo(sc, ens, 10, meas);
  EXPECT_NEAR(res.chi, 0.0, 1e-12);
  for (double x : res.sampled_info) EXPECT_LT(x, 1e-12);
}

TEST(Holevo, OrthogonalPreparationsAttainOneBit) {
  icb::Rng rng(96);
  const DensityMatrix rho = icb::tensor(icb::random_density(2, 2, rng), icb::random_density(2, 2, rng, "E"));
  const Superchannel sc = Superchannel::build(icb::identity(4), rho);
  icb::Ensemble ens{{0.5, 0.5},
                    {icb::replace_channel(DensityMatrix::basis_state(2, 0), 2),
                     icb::replace_channel(DensityMatrix::basis_state(2, 1), 2)}};
  icb::Rng meas(2);
  const icb::HolevoResult res = icb::holevo(sc, ens, 5, meas);
  EXPECT_NEAR(res.chi, kLog2, 1e-9);
  EXPECT_NEAR(res.sampled_info.front(), kLog2, 1e-9);
  EXPECT_TRUE(res.report.pass());
}

TEST(Holevo, SampledInformationBelowChi) {
  icb::Rng rng(97);
  for (int trial = 0; trial < 50; ++trial) {
    const Superchannel sc = random_superchannel(2, 2 + static_cast<std::size_t>(trial % 2), rng);
    const std::size_t k = rng.uniform_int(1, 4);
    icb::Ensemble ens;
    ens.probs = icb::random_probabilities(k, rng);
    for (std::size_t i = 0; i < k; ++i) ens.ops.push_back(random_channel(2, rng));
    icb::Rng meas = rng.split();
    const icb::HolevoResult res = icb::holevo(sc, ens, 20, meas);
    EXPECT_GE(res.chi, -1e-10);
    EXPECT_LE(res.chi, std::log(static_cast<double>(k)) + 1e-9);
    EXPECT_LE(res.chi, kLog2 + 1e-9);
    for (double x : res.sampled_info) EXPECT_LE(x, res.chi + 1e-8);
  }
}

TEST(Holevo, EnsembleValidation) {
  icb::Ensemble empty;
  EXPECT_THROW(empty.validate(), icb::ValidationError);
  icb::Ensemble bad{{0.5, 0.6}, {icb::identity_channel(2), icb::identity_channel(2)}};
  EXPECT_THROW(bad.validate(), icb::ValidationError);
  icb::Ensemble mixed_dims{{0.5, 0.5}, {icb::identity_channel(2), icb::identity_channel(3)}};
  EXPECT_THROW(mixed_dims.validate(), icb::Error);
}

TEST(Holevo, ClassicalMutualInformationOracle) {
  Eigen::MatrixXd cond(2, 2);
  cond << 0.9, 0.1, 0.2, 0.8;
  const std::vector<double> prior{0.4, 0.6};
  const double py0 = 0.4 * 0.9 + 0.6 * 0.2;
  const double py1 = 1.0 - py0;
  const double expect = 0.4 * (0.9 * std::log(0.9 / py0) + 0.1 * std::log(0.1 / py1)) +
                        0.6 * (0.2 * std::log(0.2 / py0) + 0.8 * std::log(0.8 / py1));
  EXPECT_NEAR(icb::classical_mutual_information(prior, cond), expect, 1e-15);
}

TEST(SpohnComposition, IdentityAndDepolarizing) {
  icb::Rng rng(98);
  const Superchannel sc = random_superchannel(2, 2, rng);
  const icb::SpohnComposition id = icb::spohn_composition(icb::identity_channel(2), sc);
  EXPECT_LT(std::abs(id.spohn.slack.value()), 1e-10);
  EXPECT_NEAR(id.combined_slack.value(), id.main.slack.value(), 1e-10);
  const icb::SpohnComposition dep = icb::spohn_composition(icb::completely_depolarizing(2), sc);
  EXPECT_TRUE(dep.spohn.pass());
  EXPECT_TRUE(dep.main.pass());
  EXPECT_NEAR(dep.combined_slack.value(), dep.spohn.slack.value() + dep.main.slack.value(), 1e-12);
}

}  // namespace
