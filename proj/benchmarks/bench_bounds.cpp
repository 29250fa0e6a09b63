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

#include <benchmark/benchmark.h>

#include "icbounds/bounds.hpp"
#include "icbounds/channels.hpp"
#include "icbounds/random.hpp"
#include "icbounds/superchannel.hpp"

namespace {

icb::Superchannel make_superchannel(std::size_t ds, std::size_t de, icb::Rng& rng) {
  const icb::DimShape se({ds, de}, {"S", "E"});
  return icb::Superchannel::build(icb::random_unitary(ds * de, rng), icb::random_density(se, ds * de, rng));
}

void BM_FixedPoint(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  icb::Rng rng(7);
  const auto op = icb::QuantumOperation::from_kraus(icb::random_kraus(d, d, d, rng));
  for (auto _ : state) benchmark::DoNotOptimize(icb::fixed_point(op));
}
BENCHMARK(BM_FixedPoint)->Arg(2)->Arg(3)->Arg(4);

void BM_SuperchannelBuild(benchmark::State& state) {
  const auto de = static_cast<std::size_t>(state.range(0));
  icb::Rng rng(11);
  const icb::DimShape se({2, de}, {"S", "E"});
  const icb::ComplexMatrix u = icb::random_unitary(2 * de, rng);
  const icb::DensityMatrix rho = icb::random_density(se, 2 * de, rng);
  for (auto _ : state) benchmark::DoNotOptimize(icb::Superchannel::build(u, rho));
}
BENCHMARK(BM_SuperchannelBuild)->Arg(2)->Arg(3);

void BM_MainBound(benchmark::State& state) {
  icb::Rng rng(13);
  const icb::Superchannel sc = make_superchannel(2, static_cast<std::size_t>(state.range(0)), rng);
  const icb::Neso neso = sc.neso();
  const auto op = icb::QuantumOperation::from_kraus(icb::random_kraus(2, 2, 4, rng));
  for (auto _ : state) benchmark::DoNotOptimize(icb::main_bound(sc, neso, op));
}
BENCHMARK(BM_MainBound)->Arg(2)->Arg(3);

void BM_Qdpi(benchmark::State& state) {
  icb::Rng rng(17);
  const icb::Superchannel sc_p = make_superchannel(2, 2, rng);
  const icb::Superchannel sc_q = make_superchannel(2, 2, rng);
  const icb::DimShape pq({2, 2}, {"P", "Q"});
  const auto op = icb::QuantumOperation::from_kraus(icb::random_kraus(4, 4, 8, rng), pq, pq);
  for (auto _ : state) benchmark::DoNotOptimize(icb::qdpi(sc_p, sc_q, op));
}
BENCHMARK(BM_Qdpi);

}  // namespace

BENCHMARK_MAIN();
