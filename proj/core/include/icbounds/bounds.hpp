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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "icbounds/channels.hpp"
#include "icbounds/extended_real.hpp"
#include "icbounds/random.hpp"
#include "icbounds/states.hpp"
#include "icbounds/superchannel.hpp"

namespace icb {

enum class BoundKind { spohn, main, clausius, qdpi, holevo, mmap_consistency };
enum class Verdict { pass, fail, indeterminate };

const char* to_string(BoundKind k);
const char* to_string(Verdict v);
BoundKind bound_kind_from_string(const std::string& s);

/// One evaluated inequality lhs >= rhs.
struct BoundReport {
  BoundKind kind = BoundKind::spohn;
  ExtendedReal lhs;
  ExtendedReal rhs;
  ExtendedReal slack;  // lhs - rhs
  Verdict verdict = Verdict::indeterminate;
  double tolerance = 0.0;
  std::vector<std::string> flags;
  std::map<std::string, double> values;
  std::map<std::string, std::vector<double>> series;

  bool pass() const { return verdict == Verdict::pass; }
};

/// slack = lhs - rhs; pass iff slack >= -tolerance in the extended order,
/// indeterminate when slack is inf - inf.
BoundReport make_report(BoundKind kind, ExtendedReal lhs, ExtendedReal rhs, double tolerance);

/// Codewords {p_k, A_k} prepared by the sender.
struct Ensemble {
  std::vector<double> probs;
  std::vector<QuantumOperation> ops;

  /// Throws ValidationError unless probs are a distribution (sum within
  /// 1e-12), ops are CPTP and of equal dimension, and the ensemble is non-empty.
  void validate(const Tolerances& tol = {}) const;
};

/// S(Phi rho) - S(rho) >= -tr[(Phi rho - rho) log e], e the steady state of
/// `op` (computed when not supplied).
BoundReport spohn(const QuantumOperation& op, const DensityMatrix& rho,
                  const std::optional<DensityMatrix>& ness = std::nullopt, const Tolerances& tol = {});

/// S(sigma') - S(A_d) >= -tr[sigma' log e] + tr[A_d log E_d] with
/// sigma' = M[op], A_d the Choi state of op and E_d the Choi state of the NESO.
BoundReport main_bound(const Superchannel& sc, const QuantumOperation& op, const Tolerances& tol = {});
BoundReport main_bound(const Superchannel& sc, const Neso& neso, const QuantumOperation& op,
                       const Tolerances& tol = {});

struct SpohnComposition {
  BoundReport spohn;  // op acting on sigma = tr_E rho_SE against op's own steady state
  BoundReport main;
  ExtendedReal combined_slack;
};

SpohnComposition spohn_composition(const QuantumOperation& op, const Superchannel& sc, const Tolerances& tol = {});

/// exp(-beta H) / Z
DensityMatrix thermal_state(const ComplexMatrix& h, double beta, const Tolerances& tol = {});

/// Throw-and-replace instance: sigma (x) I/d against e (x) I/d where the
/// steady state e of the reduced channel must equal exp(-beta H)/Z within
/// 1e-6 in trace norm. Reports Z and F = -log(Z)/beta.
BoundReport clausius(const Superchannel& sc, const DensityMatrix& sigma, const ComplexMatrix& h, double beta,
                     const Tolerances& tol = {});

/// Mutual information across (P_out, P_in) : (Q_out, Q_in) of the joint
/// operation's Choi state must dominate I[P:Q] of (M1# (x) M2#)[A^PQ_{d^2}].
/// Also evaluates the relative-entropy form against the marginal operations
/// A^P (x) A^Q and records both routes in the report values.
BoundReport qdpi(const Superchannel& sc_p, const Superchannel& sc_q, const QuantumOperation& op_pq,
                 const Tolerances& tol = {});

/// (M1# (x) M2#)[X] for X on (P_out, P_in, Q_out, Q_in); result on (P, Q).
ComplexMatrix apply_msharp_pair(const Superchannel& sc_p, const Superchannel& sc_q, const ComplexMatrix& x);

struct HolevoResult {
  double chi = 0.0;
  BoundReport report;
  /// I(K; Y) for: computational basis, eigenbasis of the average output,
  /// then `n_random` Haar-random bases.
  std::vector<double> sampled_info;
};

HolevoResult holevo(const Superchannel& sc, const Ensemble& ens, std::size_t n_random, Rng& rng,
                    const Tolerances& tol = {});

/// Classical I(K;Y) for prior p_k and outcome probabilities cond(k, y) = P(y|k).
double classical_mutual_information(const std::vector<double>& prior, const Eigen::MatrixXd& cond);

/// I(K;Y) of the projective measurement onto the columns of `basis`.
double measured_information(const std::vector<double>& prior, const std::vector<DensityMatrix>& states,
                            const ComplexMatrix& basis);

}  // namespace icb
