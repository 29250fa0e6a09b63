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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "icbounds/bounds.hpp"
#include "icbounds/matkernel.hpp"
#include "icbounds/tolerances.hpp"

namespace icb {

/// Dimensions for randomized trials. d_S and d_E may be given as lists, in
/// which case trial t uses entry t mod size.
struct ScenarioDims {
  std::vector<std::size_t> d_s{2};
  std::vector<std::size_t> d_e{2};
  std::size_t d_a = 2;
  std::size_t d_p = 2;
  std::size_t d_q = 2;
  std::size_t d_e1 = 2;
  std::size_t d_e2 = 2;

  std::size_t system(std::size_t trial) const { return d_s[trial % d_s.size()]; }
  std::size_t environment(std::size_t trial) const { return d_e[trial % d_e.size()]; }
};

/// An operation given literally, either by Kraus operators or by its Choi matrix.
struct OperationLiteral {
  std::vector<ComplexMatrix> kraus;
  std::optional<ComplexMatrix> choi;
};

struct EnsembleLiteral {
  std::vector<double> probs;
  std::vector<OperationLiteral> ops;
};

/// Literal matrices that replace the corresponding random draws in every trial.
struct ExplicitInstance {
  std::optional<ComplexMatrix> u;
  std::optional<ComplexMatrix> rho_se;
  std::optional<OperationLiteral> op;
  std::optional<ComplexMatrix> sigma;
  std::optional<ComplexMatrix> h;
  std::optional<double> beta;
  std::optional<EnsembleLiteral> ensemble;
};

struct Scenario {
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::vector<BoundKind> families;
  ScenarioDims dims;
  /// Tolerance fields set by the scenario file, by field name.
  std::map<std::string, double> tolerance_overrides;
  std::size_t holevo_measurements = 50;
  ExplicitInstance explicit_instance;
  nlohmann::json source;
};

/// Parses a scenario object. Structural problems raise ValidationError with
/// the offending field path (for example "explicit.U[1]").
Scenario parse_scenario(const nlohmann::json& j);
/// Reads and parses a scenario file; unreadable files and invalid JSON raise ParseError.
Scenario load_scenario(const std::filesystem::path& path);

/// Built-in defaults, then ICBOUNDS_SLACK_TOL from the environment, then the
/// scenario overrides, then `slack_tol_flag`.
Tolerances resolve_tolerances(const Scenario& s, std::optional<double> slack_tol_flag = std::nullopt);

/// Complex matrix from row-major nested arrays; entries are numbers or [re, im].
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

}  // namespace icb
