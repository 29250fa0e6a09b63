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

#include "icbounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "icbounds/errors.hpp"

namespace icb {

namespace {

void flag_infinities(BoundReport& r) {
  if (r.rhs.kind() == ExtendedReal::Kind::neg_inf) r.flags.push_back("rhs_neg_inf");
  if (r.rhs.kind() == ExtendedReal::Kind::pos_inf) r.flags.push_back("rhs_pos_inf");
  if (r.lhs.kind() == ExtendedReal::Kind::pos_inf) r.flags.push_back("lhs_pos_inf");
  if (r.lhs.kind() == ExtendedReal::Kind::neg_inf) r.flags.push_back("lhs_neg_inf");
  if (r.slack.is_indeterminate()) r.flags.push_back("indeterminate");
}

std::vector<double> to_std(const RealVector& v) { return {v.data(), v.data() + v.size()}; }

void put_extended(BoundReport& r, const std::string& key, ExtendedReal v) {
  if (v.is_finite()) {
    r.values[key] = v.value();
  } else {
    r.flags.push_back(key + "=" + v.to_string());
  }
}

}  // namespace

const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::spohn: return "spohn";
    case BoundKind::main: return "main";
    case BoundKind::clausius: return "clausius";
    case BoundKind::qdpi: return "qdpi";
    case BoundKind::holevo: return "holevo";
    case BoundKind::mmap_consistency: return "mmap-consistency";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

BoundKind bound_kind_from_string(const std::string& s) {
  for (auto k : {BoundKind::spohn, BoundKind::main, BoundKind::clausius, BoundKind::qdpi, BoundKind::holevo,
                 BoundKind::mmap_consistency})
    if (s == to_string(k)) return k;
  throw ValidationError("unknown bound '" + s + "'");
}

BoundReport make_report(BoundKind kind, ExtendedReal lhs, ExtendedReal rhs, double tolerance) {
  BoundReport r;
  r.kind = kind;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = lhs - rhs;
  r.tolerance = tolerance;
  if (r.slack.is_indeterminate()) {
    r.verdict = Verdict::indeterminate;
  } else {
    r.verdict = at_least(r.slack, ExtendedReal(-tolerance)) ? Verdict::pass : Verdict::fail;
  }
  flag_infinities(r);
  return r;
}

void Ensemble::validate(const Tolerances& tol) const {
  (void)tol;
  if (ops.empty()) throw ValidationError("ensemble: empty");
  if (probs.size() != ops.size()) throw ValidationError("ensemble: probs and ops differ in length");
  double s = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw ValidationError("ensemble: negative probability");
    s += p;
  }
  if (std::abs(s - 1.0) > 1e-12) throw ValidationError("ensemble: probabilities do not sum to 1");
  for (const auto& op : ops) {
    if (!op.trace_preserving()) throw ValidationError("ensemble: operation is not trace preserving");
    if (op.d_in() != ops.front().d_in() || op.d_out() != ops.front().d_out())
      throw DimensionError("ensemble: operations have different dimensions");
  }
}

// -- Spohn --------------------------------------------------------------------

BoundReport spohn(const QuantumOperation& op, const DensityMatrix& rho, const std::optional<DensityMatrix>& ness,
                  const Tolerances& tol) {
  if (op.d_in() != op.d_out()) throw DimensionError("spohn: operation is not square");
  std::optional<NessResult> fp;
  if (!ness) fp = fixed_point(op, tol);
  const DensityMatrix& e = ness ? *ness : fp->state;

  const DensityMatrix out = apply(op, rho, tol);
  const double s_out = von_neumann_entropy(out, tol);
  const double s_in = von_neumann_entropy(rho, tol);
  const ExtendedReal l_out = log_trace(out.matrix(), e.matrix(), tol);
  const ExtendedReal l_in = log_trace(rho.matrix(), e.matrix(), tol);

  BoundReport r = make_report(BoundKind::spohn, s_out - s_in, -l_out + l_in, tol.slack_tol);
  r.values["S_out"] = s_out;
  r.values["S_in"] = s_in;
  put_extended(r, "tr_out_log_ness", l_out);
  put_extended(r, "tr_in_log_ness", l_in);
  r.series["ness_eigenvalues"] = to_std(e.spectrum(tol));
  if (fp) {
    r.values["fixed_space_dim"] = static_cast<double>(fp->fixed_space_dim);
    r.values["fp_residual"] = fp->residual;
  }
  return r;
}

// -- generalized bound --------------------------------------------------------

BoundReport main_bound(const Superchannel& sc, const QuantumOperation& op, const Tolerances& tol) {
  return main_bound(sc, sc.neso(tol), op, tol);
}

BoundReport main_bound(const Superchannel& sc, const Neso& neso, const QuantumOperation& op, const Tolerances& tol) {
  const DensityMatrix sigma_out = sc.act(op, tol);
  const DensityMatrix a_d = op.normalized_choi(tol);
  const DensityMatrix e_d = neso.normalized(tol);
  const DensityMatrix& e = neso.ness;

  const double s_out = von_neumann_entropy(sigma_out, tol);
  const double s_op = von_neumann_entropy(a_d, tol);
  const ExtendedReal state_term = -log_trace(sigma_out.matrix(), e.matrix(), tol);
  const ExtendedReal op_term = log_trace(a_d.matrix(), e_d.matrix(), tol);

  BoundReport r = make_report(BoundKind::main, s_out - s_op, state_term + op_term, tol.slack_tol);
  r.values["S_sigma_out"] = s_out;
  r.values["S_op_state"] = s_op;
  put_extended(r, "rhs_state_term", state_term);
  put_extended(r, "rhs_op_term", op_term);

  const ExtendedReal d_op = relative_entropy(a_d, e_d, tol);
  const ExtendedReal d_state = relative_entropy(sigma_out, e, tol);
  put_extended(r, "D_op_state_vs_neso", d_op);
  put_extended(r, "D_sigma_out_vs_ness", d_state);
  if (r.slack.is_finite() && d_op.is_finite() && d_state.is_finite())
    r.values["slack_identity_residual"] = std::abs(r.slack.value() - (d_op.value() - d_state.value()));

  r.values["fixed_space_dim"] = static_cast<double>(neso.fixed_point.fixed_space_dim);
  r.values["fp_residual"] = neso.fixed_point.residual;
  r.series["ness_eigenvalues"] = to_std(e.spectrum(tol));
  r.series["sigma_out_eigenvalues"] = to_std(sigma_out.spectrum(tol));

  // Same bound at the reference operation itself (saturation check).
  const DensityMatrix sigma_neso = sc.act(neso.op, tol);
  const ExtendedReal neso_lhs = von_neumann_entropy(sigma_neso, tol) - von_neumann_entropy(e_d, tol);
  const ExtendedReal neso_rhs =
      -log_trace(sigma_neso.matrix(), e.matrix(), tol) + log_trace(e_d.matrix(), e_d.matrix(), tol);
  put_extended(r, "neso_slack", neso_lhs - neso_rhs);
  r.values["neso_image_residual"] = trace_norm(sigma_neso.matrix() - e.matrix());

  // M# is trace preserving off the operation-state set only for a maximally
  // mixed system marginal; recorded to diagnose violations.
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(sc.system_marginal().shape());
  r.values["sigma_distance_from_mixed"] = trace_norm(sc.system_marginal().matrix() - mixed.matrix());
  if (r.verdict == Verdict::fail) r.flags.push_back("violation");
  return r;
}

SpohnComposition spohn_composition(const QuantumOperation& op, const Superchannel& sc, const Tolerances& tol) {
  SpohnComposition out{spohn(op, sc.system_marginal(), std::nullopt, tol), main_bound(sc, op, tol), {}};
  out.combined_slack = out.spohn.slack + out.main.slack;
  return out;
}

// -- Clausius -----------------------------------------------------------------

DensityMatrix thermal_state(const ComplexMatrix& h, double beta, const Tolerances& tol) {
  if (!(beta > 0.0)) throw ValidationError("thermal_state: beta must be positive");
  ComplexMatrix g = herm_fn(h, [beta](double x) { return std::exp(-beta * x); }, KernelPolicy::zero, tol);
  g /= g.trace().real();
  return DensityMatrix(hermitian_part(g), DimShape::single(static_cast<std::size_t>(h.rows()), "S"), tol);
}

BoundReport clausius(const Superchannel& sc, const DensityMatrix& sigma, const ComplexMatrix& h, double beta,
                     const Tolerances& tol) {
  const std::size_t d = sc.d_s();
  if (sigma.dim() != d || static_cast<std::size_t>(h.rows()) != d) throw DimensionError("clausius: dimension mismatch");
  if (!(beta > 0.0)) throw ValidationError("clausius: beta must be positive");
  const HermEig h_eig = herm_eig(h, tol);
  double z = 0.0;
  for (double x : h_eig.values) z += std::exp(-beta * x);
  const double free_energy = -std::log(z) / beta;
  const DensityMatrix gibbs = thermal_state(h, beta, tol);

  const NessResult fp = fixed_point(sc.reduced_channel(), tol);
  const DensityMatrix& e = fp.state;
  const double thermal_residual = trace_norm(e.matrix() - gibbs.matrix());
  if (thermal_residual > 1e-6) {
    std::ostringstream os;
    os << "clausius: steady state of the reduced channel is not thermal (trace-norm residual " << thermal_residual
       << ")";
    throw ValidationError(os.str());
  }

  // Throw-and-replace: sigma (x) I/d enters, the environment keeps tau.
  const DensityMatrix sigma_out = apply(sc.reduced_channel(), sigma, tol);
  const double log_d = std::log(static_cast<double>(d));
  const double s_out = von_neumann_entropy(sigma_out, tol);
  const double s_in = von_neumann_entropy(sigma, tol) + log_d;
  const ExtendedReal state_term = -log_trace(sigma_out.matrix(), e.matrix(), tol);
  const ExtendedReal op_term = log_trace(sigma.matrix(), e.matrix(), tol) - log_d;

  BoundReport r = make_report(BoundKind::clausius, s_out - s_in, state_term + op_term, tol.slack_tol);
  r.values["Z"] = z;
  r.values["F"] = free_energy;
  r.values["beta"] = beta;
  r.values["thermal_residual"] = thermal_residual;
  r.values["S_sigma_out"] = s_out;
  r.values["S_op_state"] = s_in;
  put_extended(r, "rhs_state_term", state_term);
  put_extended(r, "rhs_op_term", op_term);
  r.values["fixed_space_dim"] = static_cast<double>(fp.fixed_space_dim);
  r.series["ness_eigenvalues"] = to_std(e.spectrum(tol));
  // exp{-beta (H - F)} reproduces the Gibbs state with this sign of F.
  const ComplexMatrix shifted = h - free_energy * identity(d);
  const ComplexMatrix from_f = herm_fn(shifted, [beta](double x) { return std::exp(-beta * x); }, KernelPolicy::zero, tol);
  r.values["free_energy_form_residual"] = max_abs(from_f - gibbs.matrix());
  return r;
}

// -- QDPI ---------------------------------------------------------------------

ComplexMatrix apply_msharp_pair(const Superchannel& sc_p, const Superchannel& sc_q, const ComplexMatrix& x) {
  const auto dp = static_cast<Eigen::Index>(sc_p.d_s());
  const auto dq = static_cast<Eigen::Index>(sc_q.d_s());
  const Eigen::Index np = dp * dp;  // (P_out, P_in)
  const Eigen::Index nq = dq * dq;
  if (x.rows() != np * nq || x.cols() != np * nq) throw DimensionError("apply_msharp_pair: dimension mismatch");
  const ComplexMatrix& t1 = sc_p.msharp_matrix();
  const ComplexMatrix& t2 = sc_q.msharp_matrix();

  // v[(a1,p1),(a2,p2)] = sum T1[(a1,p1), b1 b1'] T2[(a2,p2), b2 b2'] X[(b1,b2),(b1',b2')]
  ComplexMatrix v = ComplexMatrix::Zero(dp * dp, dq * dq);
  for (Eigen::Index b1 = 0; b1 < np; ++b1)
    for (Eigen::Index b1p = 0; b1p < np; ++b1p) {
      const ComplexMatrix block = x.block(b1 * nq, b1p * nq, nq, nq);
      const ComplexVector image = t2 * vec_row_major(block);
      v.noalias() += t1.col(b1 * np + b1p) * image.transpose();
    }
  ComplexMatrix out(dp * dq, dp * dq);
  for (Eigen::Index a1 = 0; a1 < dp; ++a1)
    for (Eigen::Index p1 = 0; p1 < dp; ++p1)
      for (Eigen::Index a2 = 0; a2 < dq; ++a2)
        for (Eigen::Index p2 = 0; p2 < dq; ++p2) out(a1 * dq + a2, p1 * dq + p2) = v(a1 * dp + p1, a2 * dq + p2);
  return out;
}

BoundReport qdpi(const Superchannel& sc_p, const Superchannel& sc_q, const QuantumOperation& op_pq,
                 const Tolerances& tol) {
  if (op_pq.in_shape().rank() != 2 || op_pq.out_shape().rank() != 2)
    throw DimensionError("qdpi: operation must be bipartite on input and output");
  const std::size_t dp = sc_p.d_s();
  const std::size_t dq = sc_q.d_s();
  const DimShape pq({dp, dq}, {"P", "Q"});
  if (op_pq.in_shape().factors() != pq.factors() || op_pq.out_shape().factors() != pq.factors())
    throw DimensionError("qdpi: operation dimensions do not match the superchannels");
  if (!op_pq.trace_preserving()) throw ValidationError("qdpi: operation is not trace preserving");
  const QuantumOperation op = op_pq.relabeled(pq, pq);

  const DensityMatrix x = op.normalized_choi(tol);  // P_out, Q_out, P_in, Q_in
  const DensityMatrix xr = x.reordered(std::vector<std::string>{"P_out", "P_in", "Q_out", "Q_in"});
  const double mi_in = mutual_information(xr, {"P_out", "P_in"}, tol);

  const DensityMatrix out(hermitian_part(apply_msharp_pair(sc_p, sc_q, xr.matrix())), pq, tol);
  const double mi_out = mutual_information(out, {"P"}, tol);

  BoundReport r = make_report(BoundKind::qdpi, mi_in, mi_out, tol.slack_tol);
  r.values["MI_op_state"] = mi_in;
  r.values["MI_output"] = mi_out;

  // Relative-entropy route against the marginal operations.
  const QuantumOperation op_p = marginal_operation(op, {"P"}, tol);
  const QuantumOperation op_q = marginal_operation(op, {"Q"}, tol);
  const DensityMatrix ref_in = tensor(op_p.normalized_choi(tol), op_q.normalized_choi(tol));
  const ExtendedReal d_in = relative_entropy(xr, ref_in, tol);
  const DensityMatrix ref_out = tensor(sc_p.act(op_p, tol).relabeled(DimShape::single(dp, "P")),
                                       sc_q.act(op_q, tol).relabeled(DimShape::single(dq, "Q")));
  const ExtendedReal d_out = relative_entropy(out, ref_out, tol);
  put_extended(r, "relent_in", d_in);
  put_extended(r, "relent_out", d_out);
  const ExtendedReal route_slack = d_in - d_out;
  put_extended(r, "relent_slack", route_slack);
  if (d_in.is_finite()) r.values["relent_mi_identity_residual"] = std::abs(d_in.value() - mi_in);
  if (d_out.is_finite()) r.values["relent_out_minus_mi_out"] = d_out.value() - mi_out;
  const bool route4_pass = at_least(route_slack, ExtendedReal(-tol.slack_tol));
  if (!route4_pass) r.flags.push_back("relent_route_fail");
  if (route4_pass && r.verdict == Verdict::fail) r.flags.push_back("routes_inconsistent");
  if (r.verdict == Verdict::fail) r.flags.push_back("violation");

  const DensityMatrix mixed_p = DensityMatrix::maximally_mixed(sc_p.system_marginal().shape());
  const DensityMatrix mixed_q = DensityMatrix::maximally_mixed(sc_q.system_marginal().shape());
  r.values["sigma_p_distance_from_mixed"] = trace_norm(sc_p.system_marginal().matrix() - mixed_p.matrix());
  r.values["sigma_q_distance_from_mixed"] = trace_norm(sc_q.system_marginal().matrix() - mixed_q.matrix());
  return r;
}

// -- Holevo -------------------------------------------------------------------

double classical_mutual_information(const std::vector<double>& prior, const Eigen::MatrixXd& cond) {
  const auto nk = static_cast<Eigen::Index>(prior.size());
  if (cond.rows() != nk) throw DimensionError("classical_mutual_information: prior/conditional mismatch");
  Eigen::VectorXd py = Eigen::VectorXd::Zero(cond.cols());
  for (Eigen::Index k = 0; k < nk; ++k) py += prior[static_cast<std::size_t>(k)] * cond.row(k).transpose();
  double info = 0.0;
  for (Eigen::Index k = 0; k < nk; ++k) {
    const double pk = prior[static_cast<std::size_t>(k)];
    if (pk <= 0.0) continue;
    for (Eigen::Index y = 0; y < cond.cols(); ++y) {
      const double c = cond(k, y);
      if (c <= 0.0 || py(y) <= 0.0) continue;
      info += pk * c * std::log(c / py(y));
    }
  }
  return std::max(info, 0.0);
}

double measured_information(const std::vector<double>& prior, const std::vector<DensityMatrix>& states,
                            const ComplexMatrix& basis) {
  Eigen::MatrixXd cond(static_cast<Eigen::Index>(states.size()), basis.cols());
  for (std::size_t k = 0; k < states.size(); ++k)
    for (Eigen::Index y = 0; y < basis.cols(); ++y) {
      const auto v = basis.col(y);
      cond(static_cast<Eigen::Index>(k), y) = std::max(0.0, (v.adjoint() * states[k].matrix() * v)(0, 0).real());
    }
  return classical_mutual_information(prior, cond);
}

HolevoResult holevo(const Superchannel& sc, const Ensemble& ens, std::size_t n_random, Rng& rng,
                    const Tolerances& tol) {
  ens.validate(tol);
  const std::size_t d = sc.d_s();
  std::vector<DensityMatrix> outputs;
  outputs.reserve(ens.ops.size());
  ComplexMatrix avg = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  double mean_entropy = 0.0;
  for (std::size_t k = 0; k < ens.ops.size(); ++k) {
    outputs.push_back(sc.act(ens.ops[k], tol));
    avg += ens.probs[k] * outputs.back().matrix();
    mean_entropy += ens.probs[k] * von_neumann_entropy(outputs.back(), tol);
  }
  const DensityMatrix average(hermitian_part(avg), DimShape::single(d, "S"), tol);
  const double chi = von_neumann_entropy(average, tol) - mean_entropy;

  HolevoResult res;
  res.chi = chi;
  res.sampled_info.push_back(measured_information(ens.probs, outputs, identity(d)));
  res.sampled_info.push_back(measured_information(ens.probs, outputs, herm_eig(average.matrix(), tol).vectors));
  for (std::size_t m = 0; m < n_random; ++m)
    res.sampled_info.push_back(measured_information(ens.probs, outputs, random_unitary(d, rng)));

  const auto best = std::max_element(res.sampled_info.begin(), res.sampled_info.end());
  res.report = make_report(BoundKind::holevo, chi, *best, tol.slack_tol);
  res.report.values["chi"] = chi;
  res.report.values["best_measurement_index"] = static_cast<double>(best - res.sampled_info.begin());
  res.report.values["log_codewords"] = std::log(static_cast<double>(ens.ops.size()));
  res.report.values["log_d"] = std::log(static_cast<double>(d));
  res.report.series["sampled_info"] = res.sampled_info;
  return res;
}

}  // namespace icb
