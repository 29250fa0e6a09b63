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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "icbounds/campaign.hpp"
#include "icbounds/errors.hpp"
#include "icbounds/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBoundFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;

struct VerifyArgs {
  std::string scenario;
  std::string out;
  std::string format = "json";
  std::size_t jobs = 0;
  bool bits = false;
  bool timing = false;
  std::optional<double> slack_tol;
};

struct ExplainArgs {
  std::string scenario;
  std::size_t trial = 0;
  std::string section;
  bool bits = false;
};

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int run_verify(const VerifyArgs& a) {
  const icb::Scenario s = icb::load_scenario(a.scenario);
  const icb::Tolerances tol = icb::resolve_tolerances(s, a.slack_tol);
  icb::validate_explicit(s, tol);
  const icb::CampaignResult res = icb::run_campaign(s, tol, a.jobs);

  std::string text;
  if (a.format == "csv") {
    text = icb::campaign_to_csv(res, a.bits);
  } else {
    icb::ReportOptions opt;
    opt.bits = a.bits;
    opt.include_timing = a.timing;
    text = icb::campaign_to_json(s, tol, res, opt).dump(2) + "\n";
  }
  if (!write_output(a.out, text)) {
    std::cerr << "icb: cannot write " << a.out << "\n";
    return kExitValidation;
  }

  for (const auto& sec : res.sections)
    for (const auto& r : sec.trials)
      if (r.verdict() == icb::Verdict::fail) {
        std::cerr << "icb: " << icb::to_string(sec.kind) << " trial " << r.trial << " failed (seed " << r.seed << ")";
        if (!r.error.empty()) std::cerr << ": " << r.error;
        std::cerr << "\n";
      }
  std::fprintf(stderr, "icb: %zu trials, %zu passed, %zu failed, %zu indeterminate in %.2f s\n", res.summary.trials,
               res.summary.passes, res.summary.failures, res.summary.flagged_infinite, res.wall_time_seconds);
  return res.summary.failures == 0 ? kExitOk : kExitBoundFailure;
}

int run_explain(const ExplainArgs& a) {
  const icb::Scenario s = icb::load_scenario(a.scenario);
  const icb::Tolerances tol = icb::resolve_tolerances(s);
  icb::validate_explicit(s, tol);
  icb::BoundKind kind = s.families.front();
  if (!a.section.empty()) {
    try {
      kind = icb::bound_kind_from_string(a.section);
    } catch (const icb::Error&) {
      throw icb::ValidationError("--section: unknown bound \"" + a.section + "\"");
    }
  }
  std::cout << icb::explain_trial(s, tol, kind, a.trial, a.bits).dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-production bounds for superchannels with initial system-environment correlations"};
  app.require_subcommand(1);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run a randomized or explicit verification campaign");
  v->add_option("--scenario", verify.scenario, "Scenario JSON file")->required();
  v->add_option("--out", verify.out, "Report file (stdout when omitted)");
  v->add_option("--format", verify.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  v->add_option("--jobs", verify.jobs, "Worker threads (0 = all cores)");
  v->add_flag("--bits", verify.bits, "Report entropies in bits instead of nats");
  v->add_flag("--timing", verify.timing, "Include wall time in the JSON summary");
  v->add_option("--slack-tol", verify.slack_tol, "Slack tolerance; overrides scenario and ICBOUNDS_SLACK_TOL");

  ExplainArgs explain;
  auto* e = app.add_subcommand("explain", "Dump every intermediate quantity of one trial");
  e->add_option("--scenario", explain.scenario, "Scenario JSON file")->required();
  e->add_option("--trial", explain.trial, "Trial index")->required();
  e->add_option("--section", explain.section, "Bound family (default: first family of the scenario)");
  e->add_flag("--bits", explain.bits, "Report entropies in bits instead of nats");

  app.add_subcommand("version", "Print the library version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*v) return run_verify(verify);
    if (*e) return run_explain(explain);
    std::cout << "icb " << icb::library_version() << "\n";
    return kExitOk;
  } catch (const icb::ParseError& err) {
    std::cerr << "icb: parse error: " << err.what() << "\n";
    return kExitParse;
  } catch (const icb::Error& err) {
    std::cerr << "icb: invalid input: " << err.what() << "\n";
    return kExitValidation;
  }
}
