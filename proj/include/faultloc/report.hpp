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

#ifndef FAULTLOC_REPORT_HPP_
#define FAULTLOC_REPORT_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "faultloc/posterior.hpp"
#include "faultloc/suite_io.hpp"

namespace faultloc {

enum class OutputFormat { kTable, kJson, kCsv };

/// Everything one analysis run needs. Field defaults match the CLI defaults.
struct RunConfig {
  std::string data_path;
  std::string prior_path;            // empty = no prior file
  double default_prior = 1.0 / 30.0;
  std::size_t k_max = 3;
  Mode mode = Mode::kAuto;
  std::size_t top_n = 20;
  bool include_ut = false;
  double ut_floor = 1e-3;
  OutputFormat output_format = OutputFormat::kTable;
  unsigned workers = 1;
  std::uint64_t cover_limit = kDefaultCoverLimit;
  double prune_epsilon = 0.0;
  /// Adds wall-clock runtime to the report. Off by default so identical
  /// inputs always produce byte-identical machine output.
  bool timing = false;
};

/// Exit codes shared by the library entry point and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;         // usage / parse errors
inline constexpr int kExitInconsistent = 2;  // InconsistentData

/// Loads, ranks, and writes the report to `out` (diagnostics and warnings go
/// to `err`). Returns an exit code instead of throwing: kExitUsage for
/// parse/usage problems, kExitInconsistent for unexplainable failures.
int run_analysis(const RunConfig& config, std::ostream& out,
                 std::ostream& err);

/// Report writers over already-computed entries (exposed for tests and for
/// output-agreement checks).
void write_table(std::ostream& out, const FactorSpace& space,
                 const std::vector<PosteriorEntry>& entries);
void write_csv(std::ostream& out, const FactorSpace& space,
               const std::vector<PosteriorEntry>& entries);
struct ReportMeta {
  std::size_t k_max = 0;
  Mode mode = Mode::kAuto;
  std::size_t top_n = 0;
  bool include_ut = false;
  double default_prior = 0.0;
  std::size_t prior_overrides = 0;
  std::size_t rows = 0;
  std::size_t failures = 0;
  std::size_t tp_count = 0;
  std::size_t tf_count = 0;
  std::uint64_t cover_limit = 0;
  double prune_epsilon = 0.0;
  /// Milliseconds; emitted only when set (>= 0).
  long long runtime_ms = -1;
};
void write_json(std::ostream& out, const FactorSpace& space,
                const std::vector<PosteriorEntry>& entries,
                const ReportMeta& meta);

const char* to_string(Mode m);

}  // namespace faultloc

#endif  // FAULTLOC_REPORT_HPP_
