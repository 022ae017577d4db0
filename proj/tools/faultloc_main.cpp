// Copyright 2026 The faultloc Authors
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

// Command-line front end: ranks candidate root causes from a test matrix
// (`analyze`), checks covering-array strength (`verify-ca`), produces
// outcomes from a known scenario (`simulate`), and cross-checks single
// posteriors against the exhaustive scenario sum (`oracle`).

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "faultloc/design.hpp"
#include "faultloc/errors.hpp"
#include "faultloc/posterior.hpp"
#include "faultloc/report.hpp"
#include "faultloc/suite_io.hpp"

namespace {

using faultloc::kExitInconsistent;
using faultloc::kExitOk;
using faultloc::kExitUsage;

int run_verify_ca(const std::string& data_path, std::size_t strength) {
  const faultloc::Matrix matrix = faultloc::load_matrix(data_path);
  const faultloc::CoverageReport report =
      faultloc::verify_coverage_strength(matrix.rows, matrix.space, strength);
  std::cout << "rows: " << matrix.rows.size() << '\n'
            << "strength: " << report.strength_checked << '\n'
            << "satisfied: " << (report.satisfied ? "yes" : "no") << '\n';
  if (!report.satisfied) {
    std::cout << "missing: " << report.missing.size() << '\n';
    for (const auto& [cols, levels] : report.missing) {
      std::cout << "  ";
      for (std::size_t k = 0; k < cols.size(); ++k) {
        if (k > 0) std::cout << ", ";
        std::cout << matrix.space.factor(cols[k]).name << '='
                  << matrix.space.factor(cols[k]).levels[levels[k]];
      }
      std::cout << '\n';
    }
  }
  return kExitOk;
}

int run_simulate(const std::string& data_path, const std::string& truth_path,
                 const std::string& out_path) {
  const faultloc::Matrix matrix = faultloc::load_matrix(data_path);
  const faultloc::RootCauseScenario truth =
      faultloc::load_truth(truth_path, matrix.space);
  const std::vector<bool> outcomes =
      faultloc::simulate_outcomes(matrix.rows, truth);
  if (out_path.empty()) {
    faultloc::write_suite(std::cout, matrix.space, matrix.rows, outcomes);
  } else {
    std::ofstream out(out_path);
    if (!out) {
      throw faultloc::ParseError("cannot write " + out_path);
    }
    faultloc::write_suite(out, matrix.space, matrix.rows, outcomes);
  }
  return kExitOk;
}

int run_oracle(const std::string& data_path, const std::string& prior_path,
               double default_prior, std::size_t k_max,
               const std::string& target_text) {
  const faultloc::TestSuite suite = faultloc::load_suite(data_path);
  const faultloc::PriorSpec priors =
      prior_path.empty()
          ? faultloc::PriorSpec(default_prior)
          : faultloc::load_priors(prior_path, suite.space(), default_prior);
  const faultloc::Combination target =
      faultloc::parse_combination(target_text, suite.space());
  const double posterior =
      faultloc::brute_force_posterior(suite, priors, k_max, target);
  std::cout << std::setprecision(17) << posterior << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "faultloc: ranks factor-level combinations by their posterior "
      "probability of causing the observed test failures"};
  app.require_subcommand(1);

  const std::map<std::string, faultloc::Mode> mode_names{
      {"exact", faultloc::Mode::kExact},
      {"second_order", faultloc::Mode::kSecondOrder},
      {"auto", faultloc::Mode::kAuto}};
  const std::map<std::string, faultloc::OutputFormat> format_names{
      {"table", faultloc::OutputFormat::kTable},
      {"json", faultloc::OutputFormat::kJson},
      {"csv", faultloc::OutputFormat::kCsv}};

  // analyze
  faultloc::RunConfig config;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Rank candidate root causes from a test matrix");
  analyze->add_option("data", config.data_path,
                      "Comma-delimited test matrix; the final column "
                      "\"outcome\" holds 0 (pass) or 1 (fail)")
      ->required();
  analyze->add_option("--priors", config.prior_path,
                      "Prior file: lines \"factor.level = p\", "
                      "\"factor.* = p\", or \"*.* = p\"");
  analyze->add_option("--default-prior", config.default_prior,
                      "Prior for pairs the prior file does not map");
  analyze->add_option("--k-max", config.k_max,
                      "Highest combination order considered");
  analyze->add_option("--mode", config.mode, "Denominator computation")
      ->transform(CLI::CheckedTransformer(mode_names, CLI::ignore_case));
  analyze->add_option("--top", config.top_n,
                      "Number of entries to report (0 = all)");
  analyze->add_flag("--include-ut", config.include_ut,
                    "Also report untested combinations above the floor");
  analyze->add_option("--ut-floor", config.ut_floor,
                      "Minimum prior for reported untested combinations");
  analyze->add_option("--format", config.output_format, "Report format")
      ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
  analyze->add_option("--workers", config.workers,
                      "Scoring threads (output is identical for any count)");
  analyze->add_option("--cover-limit", config.cover_limit,
                      "Cap on enumerated minimal covers per denominator");
  analyze->add_option("--prune-epsilon", config.prune_epsilon,
                      "Drop covers whose member-prior product is below this");
  analyze->add_flag("--timing", config.timing,
                    "Report wall-clock runtime (omitted by default so "
                    "machine output is reproducible byte for byte)");

  // verify-ca
  std::string ca_path;
  std::size_t strength = 2;
  CLI::App* verify = app.add_subcommand(
      "verify-ca", "Check covering-array strength of a test matrix");
  verify->add_option("data", ca_path,
                     "Comma-delimited matrix; an \"outcome\" column, if "
                     "present, is ignored")
      ->required();
  verify->add_option("--strength", strength, "Strength s to verify");

  // simulate
  std::string sim_path;
  std::string truth_path;
  std::string sim_out;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Fill in outcomes from a known root-cause scenario");
  simulate->add_option("data", sim_path, "Comma-delimited matrix")
      ->required();
  simulate->add_option("--truth", truth_path,
                       "Scenario file: one \"Factor=level, ...\" combination "
                       "per line")
      ->required();
  simulate->add_option("-o,--output", sim_out,
                       "Write the suite here instead of stdout");

  // oracle
  std::string oracle_path;
  std::string oracle_priors;
  std::string oracle_target;
  double oracle_default_prior = 1.0 / 30.0;
  std::size_t oracle_k_max = 2;
  CLI::App* oracle = app.add_subcommand(
      "oracle",
      "Exhaustive scenario-sum posterior for one combination (small "
      "instances only)");
  oracle->add_option("data", oracle_path, "Comma-delimited test matrix")
      ->required();
  oracle->add_option("--target", oracle_target,
                     "Combination \"Factor=level, Factor=level\"")
      ->required();
  oracle->add_option("--priors", oracle_priors, "Prior file");
  oracle->add_option("--default-prior", oracle_default_prior,
                     "Prior for unmapped pairs");
  oracle->add_option("--k-max", oracle_k_max,
                     "Highest combination order considered");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // app.exit prints help or the error; keep 0 for help requests and fold
    // every real parse failure onto the usage exit code.
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analyze->parsed()) {
      return faultloc::run_analysis(config, std::cout, std::cerr);
    }
    if (verify->parsed()) {
      return run_verify_ca(ca_path, strength);
    }
    if (simulate->parsed()) {
      return run_simulate(sim_path, truth_path, sim_out);
    }
    return run_oracle(oracle_path, oracle_priors, oracle_default_prior,
                      oracle_k_max, oracle_target);
  } catch (const faultloc::InconsistentData& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInconsistent;
  } catch (const faultloc::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
