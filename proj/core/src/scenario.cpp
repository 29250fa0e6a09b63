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

#include "icbounds/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "icbounds/errors.hpp"

namespace icb {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ValidationError(path + ": " + what); }

const std::map<std::string, double Tolerances::*>& tolerance_fields() {
  static const std::map<std::string, double Tolerances::*> fields = {
      {"herm_tol", &Tolerances::herm_tol},       {"psd_floor", &Tolerances::psd_floor},
      {"recon_tol", &Tolerances::recon_tol},     {"trace_tol", &Tolerances::trace_tol},
      {"unitary_tol", &Tolerances::unitary_tol}, {"cptp_tol", &Tolerances::cptp_tol},
      {"support_tol", &Tolerances::support_tol}, {"fp_tol", &Tolerances::fp_tol},
      {"fp_degeneracy", &Tolerances::fp_degeneracy}, {"slack_tol", &Tolerances::slack_tol},
  };
  return fields;
}

std::uint64_t as_count(const json& j, const std::string& path, bool allow_zero) {
  if (j.is_number_unsigned()) {
    const auto v = j.get<std::uint64_t>();
    if (v == 0 && !allow_zero) fail(path, "must be positive");
    return v;
  }
  if (j.is_number_integer()) fail(path, "must be non-negative");
  fail(path, "expected an integer");
}

double as_real(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

double as_positive(const json& j, const std::string& path) {
  const double v = as_real(j, path);
  if (!(v > 0.0)) fail(path, "must be positive");
  return v;
}

std::vector<std::size_t> as_dim_list(const json& j, const std::string& path) {
  std::vector<std::size_t> out;
  if (j.is_array()) {
    if (j.empty()) fail(path, "dimension list is empty");
    for (std::size_t i = 0; i < j.size(); ++i)
      out.push_back(static_cast<std::size_t>(as_count(j[i], path + "[" + std::to_string(i) + "]", false)));
  } else {
    out.push_back(static_cast<std::size_t>(as_count(j, path, false)));
  }
  for (std::size_t d : out)
    if (d > 16) fail(path, "dimension above 16 is outside desk scale");
  return out;
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : j.items()) {
    bool found = false;
    for (const char* k : known) found = found || key == k;
    if (!found) fail(path.empty() ? key : path + "." + key, "unknown field");
  }
}

OperationLiteral parse_operation(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object with \"kraus\" or \"choi\"");
  reject_unknown(j, path, {"kraus", "choi"});
  OperationLiteral op;
  if (j.contains("kraus") == j.contains("choi")) fail(path, "exactly one of \"kraus\" and \"choi\" is required");
  if (j.contains("kraus")) {
    const json& k = j.at("kraus");
    if (!k.is_array() || k.empty()) fail(path + ".kraus", "expected a non-empty list of matrices");
    for (std::size_t i = 0; i < k.size(); ++i)
      op.kraus.push_back(matrix_from_json(k[i], path + ".kraus[" + std::to_string(i) + "]"));
  } else {
    op.choi = matrix_from_json(j.at("choi"), path + ".choi");
  }
  return op;
}

ComplexMatrix square_matrix(const json& j, const std::string& path) {
  ComplexMatrix m = matrix_from_json(j, path);
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "matrix is not square (" << m.rows() << "x" << m.cols() << ")";
    fail(path, os.str());
  }
  return m;
}

ExplicitInstance parse_explicit(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  reject_unknown(j, path, {"U", "rho_se", "op", "sigma", "H", "beta", "ensemble"});
  ExplicitInstance e;
  if (j.contains("U")) e.u = square_matrix(j.at("U"), path + ".U");
  if (j.contains("rho_se")) e.rho_se = square_matrix(j.at("rho_se"), path + ".rho_se");
  if (j.contains("op")) e.op = parse_operation(j.at("op"), path + ".op");
  if (j.contains("sigma")) e.sigma = square_matrix(j.at("sigma"), path + ".sigma");
  if (j.contains("H")) e.h = square_matrix(j.at("H"), path + ".H");
  if (j.contains("beta")) e.beta = as_positive(j.at("beta"), path + ".beta");
  if (j.contains("ensemble")) {
    const json& en = j.at("ensemble");
    const std::string ep = path + ".ensemble";
    if (!en.is_object()) fail(ep, "expected an object with \"probs\" and \"ops\"");
    reject_unknown(en, ep, {"probs", "ops"});
    if (!en.contains("probs") || !en.contains("ops")) fail(ep, "\"probs\" and \"ops\" are required");
    const json& probs = en.at("probs");
    const json& ops = en.at("ops");
    if (!probs.is_array() || !ops.is_array()) fail(ep, "\"probs\" and \"ops\" must be lists");
    if (probs.size() != ops.size()) fail(ep, "\"probs\" and \"ops\" differ in length");
    EnsembleLiteral lit;
    for (std::size_t i = 0; i < probs.size(); ++i) lit.probs.push_back(as_real(probs[i], ep + ".probs[" + std::to_string(i) + "]"));
    for (std::size_t i = 0; i < ops.size(); ++i) lit.ops.push_back(parse_operation(ops[i], ep + ".ops[" + std::to_string(i) + "]"));
    e.ensemble = std::move(lit);
  }
  if (e.u && e.rho_se && e.u->rows() != e.rho_se->rows())
    fail(path + ".rho_se", "dimension does not match U");
  return e;
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].empty()) fail(rp, "expected a non-empty row");
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) {
      std::ostringstream os;
      os << "row has " << j[r].size() << " entries, expected " << cols;
      fail(rp, os.str());
    }
  }
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const json& x = j[r][c];
      const std::string ep = path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
      if (x.is_number()) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Complex(as_real(x, ep), 0.0);
      } else if (x.is_array() && x.size() == 2) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            Complex(as_real(x[0], ep + "[0]"), as_real(x[1], ep + "[1]"));
      } else {
        fail(ep, "expected a number or a [re, im] pair");
      }
    }
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) fail("<root>", "scenario must be an object");
  reject_unknown(j, "", {"seed", "trials", "bound", "dims", "tolerances", "holevo_measurements", "explicit"});
  Scenario s;
  s.source = j;
  if (j.contains("seed")) s.seed = as_count(j.at("seed"), "seed", true);
  if (j.contains("trials")) s.trials = static_cast<std::size_t>(as_count(j.at("trials"), "trials", false));

  const std::string bound = j.contains("bound") ? (j.at("bound").is_string() ? j.at("bound").get<std::string>() : "")
                                                : std::string("all");
  if (bound.empty()) fail("bound", "expected a string");
  if (bound == "all") {
    s.families = {BoundKind::spohn,   BoundKind::main,   BoundKind::clausius,
                  BoundKind::qdpi,    BoundKind::holevo, BoundKind::mmap_consistency};
  } else {
    try {
      s.families = {bound_kind_from_string(bound)};
    } catch (const Error&) {
      fail("bound", "unknown bound \"" + bound + "\"");
    }
  }

  if (j.contains("dims")) {
    const json& d = j.at("dims");
    if (!d.is_object()) fail("dims", "expected an object");
    reject_unknown(d, "dims", {"d_S", "d_E", "d_A", "d_P", "d_Q", "d_E1", "d_E2"});
    if (d.contains("d_S")) s.dims.d_s = as_dim_list(d.at("d_S"), "dims.d_S");
    if (d.contains("d_E")) s.dims.d_e = as_dim_list(d.at("d_E"), "dims.d_E");
    auto scalar = [&](const char* key, std::size_t& out) {
      if (d.contains(key)) out = as_dim_list(d.at(key), std::string("dims.") + key).front();
      if (d.contains(key) && d.at(key).is_array()) fail(std::string("dims.") + key, "expected a single dimension");
    };
    scalar("d_A", s.dims.d_a);
    scalar("d_P", s.dims.d_p);
    scalar("d_Q", s.dims.d_q);
    scalar("d_E1", s.dims.d_e1);
    scalar("d_E2", s.dims.d_e2);
  }

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    if (!t.is_object()) fail("tolerances", "expected an object");
    for (const auto& [key, value] : t.items()) {
      if (!tolerance_fields().count(key)) fail("tolerances." + key, "unknown tolerance");
      s.tolerance_overrides[key] = as_positive(value, "tolerances." + key);
    }
  }
  if (j.contains("holevo_measurements"))
    s.holevo_measurements = static_cast<std::size_t>(as_count(j.at("holevo_measurements"), "holevo_measurements", true));
  if (j.contains("explicit")) s.explicit_instance = parse_explicit(j.at("explicit"), "explicit");
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read scenario file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return parse_scenario(j);
}

Tolerances resolve_tolerances(const Scenario& s, std::optional<double> slack_tol_flag) {
  Tolerances tol;
  if (const char* env = std::getenv("ICBOUNDS_SLACK_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
      throw ValidationError(std::string("ICBOUNDS_SLACK_TOL: not a positive number: ") + env);
    tol.slack_tol = v;
  }
  for (const auto& [key, value] : s.tolerance_overrides) tol.*(tolerance_fields().at(key)) = value;
  if (slack_tol_flag) {
    if (!(*slack_tol_flag > 0.0)) throw ValidationError("--slack-tol: must be positive");
    tol.slack_tol = *slack_tol_flag;
  }
  return tol;
}

}  // namespace icb
