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

#include "icbounds/campaign.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

#include "icbounds/dilation.hpp"
#include "icbounds/errors.hpp"
#include "icbounds/random.hpp"

namespace icb {

const char* library_version() { return ICBOUNDS_VERSION_STRING; }

namespace {

using nlohmann::json;

template <class F>
auto at_field(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::size_t isqrt_exact(Eigen::Index n, const std::string& path) {
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (static_cast<Eigen::Index>(d * d) != n) throw ValidationError(path + ": Choi dimension is not a square");
  return d;
}

QuantumOperation literal_operation(const OperationLiteral& lit, std::size_t d, const std::string& path,
                                   const Tolerances& tol) {
  QuantumOperation op = at_field(path, [&] {
    if (lit.choi) {
      return QuantumOperation::from_choi(*lit.choi, isqrt_exact(lit.choi->rows(), path + ".choi"), tol);
    }
    return QuantumOperation::from_kraus(lit.kraus, tol);
  });
  if (op.d_in() != d || op.d_out() != d) {
    std::ostringstream os;
    os << path << ": operation acts on dimension " << op.d_in() << ", expected " << d;
    throw ValidationError(os.str());
  }
  if (!op.trace_preserving()) {
    std::ostringstream os;
    os << path << ": operation is not trace preserving (residual " << op.tp_residual() << ")";
    throw ValidationError(os.str());
  }
  return op;
}

DensityMatrix literal_state(const ComplexMatrix& m, const DimShape& shape, const std::string& path,
                            const Tolerances& tol) {
  if (static_cast<std::size_t>(m.rows()) != shape.dim()) {
    std::ostringstream os;
    os << path << ": dimension " << m.rows() << ", expected " << shape.dim();
    throw ValidationError(os.str());
  }
  return at_field(path, [&] { return DensityMatrix(m, shape, tol); });
}

QuantumOperation random_operation(std::size_t d, Rng& rng, const Tolerances& tol) {
  const std::size_t rank = rng.uniform_int(1, d * d);
  return QuantumOperation::from_kraus(random_kraus(d, d, rank, rng), tol);
}

struct Draw {
  const Scenario& s;
  const Tolerances& tol;
  Rng rng;
  bool capture;
  TrialRecord& rec;

  void keep(const std::string& key, const ComplexMatrix& m) {
    if (capture) rec.instance[key] = matrix_to_json(m);
  }

  /// (d_S, d_E) of the trial, taking literal U / rho_se sizes into account.
  std::pair<std::size_t, std::size_t> sc_dims(std::size_t ds, std::size_t de) const {
    const ExplicitInstance& e = s.explicit_instance;
    if (!e.u && !e.rho_se) return {ds, de};
    const auto n = static_cast<std::size_t>(e.u ? e.u->rows() : e.rho_se->rows());
    if (n % ds != 0) {
      std::ostringstream os;
      os << (e.u ? "explicit.U" : "explicit.rho_se") << ": dimension " << n << " is not a multiple of d_S = " << ds;
      throw ValidationError(os.str());
    }
    return {ds, n / ds};
  }

  Superchannel superchannel(std::size_t ds, std::size_t de) {
    const ExplicitInstance& e = s.explicit_instance;
    const ComplexMatrix u = e.u ? *e.u : random_unitary(ds * de, rng);
    const DimShape se({ds, de}, {"S", "E"});
    DensityMatrix rho = e.rho_se ? literal_state(*e.rho_se, se, "explicit.rho_se", tol)
                                 : random_density(se, rng.uniform_int(1, std::min<std::size_t>(4, ds * de)), rng);
    keep("U", u);
    keep("rho_se", rho.matrix());
    rec.dims["d_S"] = ds;
    rec.dims["d_E"] = de;
    return at_field(e.u ? "explicit.U" : "superchannel", [&] { return Superchannel::build(u, rho, tol); });
  }

  QuantumOperation operation(std::size_t d) {
    QuantumOperation op = s.explicit_instance.op ? literal_operation(*s.explicit_instance.op, d, "explicit.op", tol)
                                                 : random_operation(d, rng, tol);
    keep("op_choi", op.choi());
    return op;
  }

  DensityMatrix state(std::size_t d) {
    DensityMatrix rho = s.explicit_instance.sigma
                            ? literal_state(*s.explicit_instance.sigma, DimShape::single(d, "S"), "explicit.sigma", tol)
                            : random_density(d, rng.uniform_int(1, d), rng);
    keep("sigma", rho.matrix());
    return rho;
  }
};

BoundReport evaluate(Draw& g, BoundKind kind) {
  const Scenario& s = g.s;
  const Tolerances& tol = g.tol;
  const ExplicitInstance& e = s.explicit_instance;
  const std::size_t t = g.rec.trial;
  switch (kind) {
    case BoundKind::spohn: {
      const std::size_t d = s.dims.system(t);
      g.rec.dims["d_S"] = d;
      const QuantumOperation op = g.operation(d);
      const DensityMatrix rho = g.state(d);
      return spohn(op, rho, std::nullopt, tol);
    }
    case BoundKind::main: {
      const auto [ds, de] = g.sc_dims(s.dims.system(t), s.dims.environment(t));
      const Superchannel sc = g.superchannel(ds, de);
      const QuantumOperation op = g.operation(ds);
      const Neso neso = sc.neso(tol);
      g.keep("ness", neso.ness.matrix());
      return main_bound(sc, neso, op, tol);
    }
    case BoundKind::clausius: {
      const std::size_t d = s.dims.system(t);
      ComplexMatrix h;
      if (e.h) {
        h = *e.h;
        if (static_cast<std::size_t>(h.rows()) != d) throw ValidationError("explicit.H: dimension does not match d_S");
        if (hermiticity_error(h) > tol.herm_tol) throw ValidationError("explicit.H: not Hermitian");
      } else {
        const ComplexMatrix gm = ginibre(d, d, g.rng);
        h = 0.5 * (gm + gm.adjoint());
      }
      const double beta = e.beta ? *e.beta : 0.5 + 1.5 * g.rng.uniform();
      const DensityMatrix gibbs = thermal_state(h, beta, tol);
      std::size_t de = d;
      ComplexMatrix u;
      if (e.u) {
        de = g.sc_dims(d, d).second;
        u = *e.u;
      } else {
        // partial swap cos(theta) I + i sin(theta) SWAP thermalizes S against E
        const double theta = 0.3 + 1.0 * g.rng.uniform();
        u = std::cos(theta) * identity(d * d) + Complex(0.0, std::sin(theta)) * swap_operator(d, d);
      }
      const DimShape se({d, de}, {"S", "E"});
      DensityMatrix rho_se = [&] {
        if (e.rho_se) return literal_state(*e.rho_se, se, "explicit.rho_se", tol);
        if (de != d) throw ValidationError("explicit.U: thermal environment needs d_E = d_S without explicit.rho_se");
        const DensityMatrix sys = random_density(d, g.rng.uniform_int(1, d), g.rng);
        return tensor(sys, gibbs.relabeled(DimShape::single(d, "E")));
      }();
      const DensityMatrix sigma = g.state(d);
      g.keep("U", u);
      g.keep("rho_se", rho_se.matrix());
      g.keep("H", h);
      g.rec.dims["d_S"] = d;
      g.rec.dims["d_E"] = de;
      const Superchannel sc = at_field("clausius", [&] { return Superchannel::build(u, rho_se, tol); });
      BoundReport r = clausius(sc, sigma, h, beta, tol);
      return r;
    }
    case BoundKind::qdpi: {
      const std::size_t dp = s.dims.d_p;
      const std::size_t dq = s.dims.d_q;
      g.rec.dims = {{"d_P", dp}, {"d_Q", dq}, {"d_E1", s.dims.d_e1}, {"d_E2", s.dims.d_e2}};
      auto random_sc = [&](std::size_t ds, std::size_t de) {
        const ComplexMatrix u = random_unitary(ds * de, g.rng);
        const DimShape se({ds, de}, {"S", "E"});
        const DensityMatrix rho = random_density(se, g.rng.uniform_int(1, std::min<std::size_t>(4, ds * de)), g.rng);
        return Superchannel::build(u, rho, tol);
      };
      const Superchannel sc_p = random_sc(dp, s.dims.d_e1);
      const Superchannel sc_q = random_sc(dq, s.dims.d_e2);
      const std::size_t n = dp * dq;
      const DimShape pq({dp, dq}, {"P", "Q"});
      const QuantumOperation op = QuantumOperation::from_kraus(random_kraus(n, n, g.rng.uniform_int(1, n * n), g.rng),
                                                               pq, pq, tol);
      g.keep("U_P", sc_p.unitary());
      g.keep("rho_PE1", sc_p.rho_se().matrix());
      g.keep("U_Q", sc_q.unitary());
      g.keep("rho_QE2", sc_q.rho_se().matrix());
      g.keep("op_choi", op.choi());
      return qdpi(sc_p, sc_q, op, tol);
    }
    case BoundKind::holevo: {
      const auto [ds, de] = g.sc_dims(s.dims.system(t), s.dims.environment(t));
      const Superchannel sc = g.superchannel(ds, de);
      Ensemble ens;
      if (e.ensemble) {
        ens.probs = e.ensemble->probs;
        for (std::size_t k = 0; k < e.ensemble->ops.size(); ++k)
          ens.ops.push_back(literal_operation(e.ensemble->ops[k], ds, "explicit.ensemble.ops[" + std::to_string(k) + "]", tol));
        at_field("explicit.ensemble", [&] { ens.validate(tol); });
      } else {
        const std::size_t k = g.rng.uniform_int(1, 4);
        ens.probs = random_probabilities(k, g.rng);
        for (std::size_t i = 0; i < k; ++i) ens.ops.push_back(random_operation(ds, g.rng, tol));
      }
      if (g.capture) {
        g.rec.instance["ensemble_probs"] = ens.probs;
        for (const auto& op : ens.ops) g.rec.instance["ensemble_choi"].push_back(matrix_to_json(op.choi()));
      }
      Rng meas = g.rng.split();
      return holevo(sc, ens, s.holevo_measurements, meas, tol).report;
    }
    case BoundKind::mmap_consistency: {
      const auto [ds, de] = g.sc_dims(s.dims.system(t), s.dims.environment(t));
      const Superchannel sc = g.superchannel(ds, de);
      const std::size_t da = s.dims.d_a;
      g.rec.dims["d_A"] = da;
      const ComplexMatrix v = random_unitary(ds * da, g.rng);
      const DensityMatrix alpha = DensityMatrix::pure(random_pure_vector(da, g.rng), DimShape::single(da, "A"), tol);
      g.keep("V", v);
      g.keep("alpha", alpha.matrix());
      return mmap_consistency_report(sc, IsometricOperation(v, alpha, tol), 1e-10, tol);
    }
  }
  throw Error("unknown bound family");
}

json number(double v) {
  if (std::isfinite(v)) return v;
  return ExtendedReal(v).to_string();
}

json extended(const ExtendedReal& v, bool bits) {
  if (!v.is_finite()) return v.to_string();
  return bits ? v.value() / std::log(2.0) : v.value();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_extended(const ExtendedReal& v, bool bits) {
  if (!v.is_finite() || !bits) return v.to_string();
  return ExtendedReal(v.value() / std::log(2.0)).to_string();
}

json summary_to_json(const CampaignSummary& s, bool bits) {
  const double scale = bits ? 1.0 / std::log(2.0) : 1.0;
  json j;
  j["trials"] = s.trials;
  j["passes"] = s.passes;
  j["failures"] = s.failures;
  j["flagged_infinite"] = s.flagged_infinite;
  j["infinite_slack_passes"] = s.infinite_slack_passes;
  j["min_slack"] = s.min_slack ? json(*s.min_slack * scale) : json(nullptr);
  j["max_slack"] = s.max_slack ? json(*s.max_slack * scale) : json(nullptr);
  return j;
}

}  // namespace

// -- summary ------------------------------------------------------------------

void CampaignSummary::add(const TrialRecord& r) {
  ++trials;
  switch (r.verdict()) {
    case Verdict::pass:
      ++passes;
      break;
    case Verdict::fail:
      ++failures;
      break;
    case Verdict::indeterminate:
      ++flagged_infinite;
      break;
  }
  if (!r.report) return;
  const ExtendedReal& slack = r.report->slack;
  if (slack.is_finite()) {
    const double v = slack.value();
    min_slack = min_slack ? std::min(*min_slack, v) : v;
    max_slack = max_slack ? std::max(*max_slack, v) : v;
  } else if (r.verdict() == Verdict::pass) {
    ++infinite_slack_passes;
  }
}

void CampaignSummary::merge(const CampaignSummary& o) {
  trials += o.trials;
  passes += o.passes;
  failures += o.failures;
  flagged_infinite += o.flagged_infinite;
  infinite_slack_passes += o.infinite_slack_passes;
  if (o.min_slack) min_slack = min_slack ? std::min(*min_slack, *o.min_slack) : *o.min_slack;
  if (o.max_slack) max_slack = max_slack ? std::max(*max_slack, *o.max_slack) : *o.max_slack;
}

// -- running ------------------------------------------------------------------

std::uint64_t trial_seed(std::uint64_t scenario_seed, BoundKind kind, std::size_t trial) {
  return derive_seed(derive_seed(scenario_seed, 1 + static_cast<std::uint64_t>(kind)), trial);
}

void validate_explicit(const Scenario& s, const Tolerances& tol) {
  const ExplicitInstance& e = s.explicit_instance;
  if (e.u && unitarity_error(*e.u) > tol.unitary_tol) {
    std::ostringstream os;
    os << "explicit.U: not unitary (max |U^dagger U - I| = " << unitarity_error(*e.u) << ")";
    throw ValidationError(os.str());
  }
  const std::size_t ds = s.dims.system(0);
  if (e.u || e.rho_se) {
    const auto n = static_cast<std::size_t>(e.u ? e.u->rows() : e.rho_se->rows());
    if (n % ds != 0) throw ValidationError(std::string(e.u ? "explicit.U" : "explicit.rho_se") +
                                           ": dimension is not a multiple of dims.d_S");
    if (e.rho_se) literal_state(*e.rho_se, DimShape({ds, n / ds}, {"S", "E"}), "explicit.rho_se", tol);
  }
  if (e.op) literal_operation(*e.op, ds, "explicit.op", tol);
  if (e.sigma) literal_state(*e.sigma, DimShape::single(ds, "S"), "explicit.sigma", tol);
  if (e.h) {
    if (static_cast<std::size_t>(e.h->rows()) != ds) throw ValidationError("explicit.H: dimension does not match d_S");
    if (hermiticity_error(*e.h) > tol.herm_tol) throw ValidationError("explicit.H: not Hermitian");
  }
  if (e.ensemble) {
    Ensemble ens;
    ens.probs = e.ensemble->probs;
    for (std::size_t k = 0; k < e.ensemble->ops.size(); ++k)
      ens.ops.push_back(literal_operation(e.ensemble->ops[k], ds, "explicit.ensemble.ops[" + std::to_string(k) + "]", tol));
    at_field("explicit.ensemble", [&] { ens.validate(tol); });
  }
}

TrialRecord run_trial(const Scenario& s, const Tolerances& tol, BoundKind kind, std::size_t trial,
                      bool capture_instance) {
  TrialRecord rec;
  rec.family = kind;
  rec.trial = trial;
  rec.seed = trial_seed(s.seed, kind, trial);
  Draw g{s, tol, Rng(rec.seed), capture_instance, rec};
  try {
    rec.report = evaluate(g, kind);
  } catch (const std::exception& ex) {
    rec.report.reset();
    rec.error = ex.what();
  }
  return rec;
}

CampaignResult run_campaign(const Scenario& s, const Tolerances& tol, std::size_t jobs) {
  const auto start = std::chrono::steady_clock::now();
  CampaignResult res;
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t f = 0; f < s.families.size(); ++f) {
    FamilySection sec;
    sec.kind = s.families[f];
    sec.trials.resize(s.trials);
    res.sections.push_back(std::move(sec));
    for (std::size_t t = 0; t < s.trials; ++t) tasks.emplace_back(f, t);
  }

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto [f, t] = tasks[i];
      res.sections[f].trials[t] = run_trial(s, tol, res.sections[f].kind, t);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (auto& sec : res.sections) {
    for (const auto& r : sec.trials) sec.summary.add(r);
    res.summary.merge(sec.summary);
  }
  res.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

// -- serialization ------------------------------------------------------------

nlohmann::json tolerances_to_json(const Tolerances& tol) {
  return {{"herm_tol", tol.herm_tol},       {"psd_floor", tol.psd_floor},   {"recon_tol", tol.recon_tol},
          {"trace_tol", tol.trace_tol},     {"unitary_tol", tol.unitary_tol}, {"cptp_tol", tol.cptp_tol},
          {"support_tol", tol.support_tol}, {"fp_tol", tol.fp_tol},       {"fp_degeneracy", tol.fp_degeneracy},
          {"slack_tol", tol.slack_tol}};
}

nlohmann::json trial_to_json(const TrialRecord& r, bool bits) {
  json j;
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  j["dims"] = r.dims;
  j["verdict"] = to_string(r.verdict());
  if (r.report) {
    const BoundReport& b = *r.report;
    j["lhs"] = extended(b.lhs, bits);
    j["rhs"] = extended(b.rhs, bits);
    j["slack"] = extended(b.slack, bits);
    j["tolerance"] = b.tolerance;
    j["flags"] = b.flags;
    json values = json::object();
    for (const auto& [k, v] : b.values) values[k] = number(v);
    j["values"] = std::move(values);
    json series = json::object();
    for (const auto& [k, v] : b.series) {
      json arr = json::array();
      for (double x : v) arr.push_back(number(x));
      series[k] = std::move(arr);
    }
    j["series"] = std::move(series);
  } else {
    j["error"] = r.error;
  }
  if (!r.instance.is_null()) j["instance"] = r.instance;
  return j;
}

nlohmann::json campaign_to_json(const Scenario& s, const Tolerances& tol, const CampaignResult& res,
                                const ReportOptions& opt) {
  json j;
  j["tool"] = "icbounds";
  j["version"] = library_version();
  j["units"] = opt.bits ? "bits" : "nats";
  j["scenario"] = s.source;
  j["tolerances"] = tolerances_to_json(tol);
  json sections = json::array();
  for (const auto& sec : res.sections) {
    json js;
    js["bound"] = to_string(sec.kind);
    js["summary"] = summary_to_json(sec.summary, opt.bits);
    json trials = json::array();
    for (const auto& r : sec.trials) trials.push_back(trial_to_json(r, opt.bits));
    js["trials"] = std::move(trials);
    sections.push_back(std::move(js));
  }
  j["sections"] = std::move(sections);
  j["summary"] = summary_to_json(res.summary, opt.bits);
  if (opt.include_timing) j["summary"]["wall_time"] = res.wall_time_seconds;
  return j;
}

std::string campaign_to_csv(const CampaignResult& res, bool bits) {
  std::ostringstream os;
  os << "bound,trial,seed,verdict,lhs,rhs,slack,tolerance,flags,error\n";
  for (const auto& sec : res.sections)
    for (const auto& r : sec.trials) {
      os << to_string(sec.kind) << ',' << r.trial << ',' << r.seed << ',' << to_string(r.verdict()) << ',';
      if (r.report) {
        std::string flags;
        for (const auto& f : r.report->flags) flags += (flags.empty() ? "" : ";") + f;
        os << csv_extended(r.report->lhs, bits) << ',' << csv_extended(r.report->rhs, bits) << ','
           << csv_extended(r.report->slack, bits) << ',' << ExtendedReal(r.report->tolerance).to_string() << ','
           << csv_field(flags) << ",\n";
      } else {
        os << ",,,,," << csv_field(r.error) << '\n';
      }
    }
  return os.str();
}

nlohmann::json explain_trial(const Scenario& s, const Tolerances& tol, BoundKind kind, std::size_t trial, bool bits) {
  if (trial >= s.trials) throw ValidationError("trial: index " + std::to_string(trial) + " is outside the scenario");
  const TrialRecord rec = run_trial(s, tol, kind, trial, true);
  json j;
  j["bound"] = to_string(kind);
  j["units"] = bits ? "bits" : "nats";
  j["record"] = trial_to_json(rec, bits);
  return j;
}

}  // namespace icb
