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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "icbounds/bounds.hpp"
#include "icbounds/scenario.hpp"

namespace icb {

struct TrialRecord {
  BoundKind family = BoundKind::spohn;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::size_t> dims;
  std::optional<BoundReport> report;
  /// Set when the trial threw; such trials count as failures.
  std::string error;
  /// Matrices of the drawn instance; filled only on request.
  nlohmann::json instance;

  Verdict verdict() const { return report ? report->verdict : Verdict::fail; }
};

struct CampaignSummary {
  std::size_t trials = 0;
  std::size_t passes = 0;
  std::size_t failures = 0;
  std::size_t flagged_infinite = 0;      // indeterminate verdicts (inf - inf)
  std::size_t infinite_slack_passes = 0;  // passes decided on an infinite branch
  std::optional<double> min_slack;        // over finite slacks
  std::optional<double> max_slack;

  void add(const TrialRecord& r);
  void merge(const CampaignSummary& other);
};

struct FamilySection {
  BoundKind kind = BoundKind::spohn;
  std::vector<TrialRecord> trials;  // sorted by trial index
  CampaignSummary summary;
};

struct CampaignResult {
  std::vector<FamilySection> sections;
  CampaignSummary summary;
  double wall_time_seconds = 0.0;
};

/// Seed of trial `trial` in family `kind`; independent of which other
/// families run and of scheduling.
std::uint64_t trial_seed(std::uint64_t scenario_seed, BoundKind kind, std::size_t trial);

/// Builds every literal in the scenario once and reports the first invalid
/// one as a ValidationError naming its field.
void validate_explicit(const Scenario& s, const Tolerances& tol);

/// Draws and evaluates one trial. With `capture_instance` the drawn matrices
/// are stored in the record.
TrialRecord run_trial(const Scenario& s, const Tolerances& tol, BoundKind kind, std::size_t trial,
                      bool capture_instance = false);

/// Runs every family of the scenario on `jobs` worker threads (0 = hardware
/// concurrency).
CampaignResult run_campaign(const Scenario& s, const Tolerances& tol, std::size_t jobs = 0);

struct ReportOptions {
  bool bits = false;         // lhs, rhs, slack and summary slacks in bits
  bool include_timing = false;
};

nlohmann::json trial_to_json(const TrialRecord& r, bool bits = false);
nlohmann::json campaign_to_json(const Scenario& s, const Tolerances& tol, const CampaignResult& res,
                                const ReportOptions& opt = {});
std::string campaign_to_csv(const CampaignResult& res, bool bits = false);

/// Full dump of one trial, sharing the serializer of the campaign report.
nlohmann::json explain_trial(const Scenario& s, const Tolerances& tol, BoundKind kind, std::size_t trial,
                             bool bits = false);

nlohmann::json tolerances_to_json(const Tolerances& tol);

const char* library_version();

}  // namespace icb
