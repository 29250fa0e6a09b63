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

#include <cstdint>
#include <random>

#include "icbounds/matkernel.hpp"
#include "icbounds/states.hpp"

namespace icb {

/// splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Stream seed for trial `index` of a campaign seeded with `seed`. The
/// derivation depends only on its arguments, so trials can run in any order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Value-typed random stream. Copies are independent replicas of the state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Fresh child stream; consumes one draw from this stream.
  Rng split() { return Rng(splitmix64(engine_())); }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  /// Uniform integer in [lo, hi].
  std::size_t uniform_int(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  /// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
};

/// d x cols matrix of standard complex Gaussians.
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-random unitary (QR of a Ginibre matrix with the R-diagonal phases removed).
ComplexMatrix random_unitary(std::size_t d, Rng& rng);

/// Haar-random unit vector.
ComplexVector random_pure_vector(std::size_t d, Rng& rng);

/// Normalized Wishart state G G^dagger / tr(G G^dagger), G of size d x rank.
DensityMatrix random_density(std::size_t d, std::size_t rank, Rng& rng, const std::string& label = "S");
DensityMatrix random_density(const DimShape& shape, std::size_t rank, Rng& rng);

/// Kraus operators of a random CPTP map d_in -> d_out: the first d_in columns
/// of a Haar unitary on C^{kraus_rank} (x) C^{d_out}, sliced into blocks.
std::vector<ComplexMatrix> random_kraus(std::size_t d_in, std::size_t d_out, std::size_t kraus_rank, Rng& rng);

/// Uniform point on the probability simplex.
std::vector<double> random_probabilities(std::size_t n, Rng& rng);

}  // namespace icb
