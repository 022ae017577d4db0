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

#ifndef FAULTLOC_SUITE_IO_HPP_
#define FAULTLOC_SUITE_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "faultloc/model.hpp"

namespace faultloc {

/// Loads a comma-delimited test suite: a header row of factor names whose
/// final column is the reserved name "outcome", then one row per test with
/// levels as opaque strings and outcome 0 (pass) or 1 (fail). Level labels
/// get dense indices per column in first-appearance order. Identical
/// duplicate rows are collapsed (TestSuite::collapsed_duplicates reports how
/// many); conflicting duplicates are a ParseError naming both rows, as are
/// ragged rows, non-binary outcomes, and a missing outcome column.
TestSuite load_suite(const std::filesystem::path& path);
TestSuite load_suite(std::istream& in, std::string_view source_name);

/// A suite-shaped file whose outcome column is optional: used by the
/// coverage checker (outcomes irrelevant) and the simulator (outcomes
/// recomputed).
struct Matrix {
  FactorSpace space;
  std::vector<Settings> rows;
  std::optional<std::vector<bool>> outcomes;
};

Matrix load_matrix(const std::filesystem::path& path);
Matrix load_matrix(std::istream& in, std::string_view source_name);

/// Loads single-factor priors. Line format "key = value" where key is
/// "factor.level", "factor.*" (every level of that factor), or "*.*"
/// (replaces the default for all unmapped pairs); '#' starts a comment.
/// Specific keys beat factor wildcards beat "*.*" regardless of file order.
/// Unknown names and probabilities outside (0,1) are ParseErrors naming the
/// line. Factor names must not contain '.' (the key separator).
PriorSpec load_priors(const std::filesystem::path& path,
                      const FactorSpace& space, double default_p);
PriorSpec load_priors(std::istream& in, std::string_view source_name,
                      const FactorSpace& space, double default_p);

/// Parses a combination written as "Factor=level, Factor=level, ...".
/// Throws ParseError for unknown names or malformed syntax.
Combination parse_combination(std::string_view text, const FactorSpace& space);

/// Loads a root-cause scenario: one combination per line in the
/// parse_combination syntax; '#' starts a comment; blank lines skipped.
RootCauseScenario load_truth(const std::filesystem::path& path,
                             const FactorSpace& space);
RootCauseScenario load_truth(std::istream& in, std::string_view source_name,
                             const FactorSpace& space);

/// Writes rows with outcomes in the load_suite format.
void write_suite(std::ostream& out, const FactorSpace& space,
                 const std::vector<Settings>& rows,
                 const std::vector<bool>& outcomes);

}  // namespace faultloc

#endif  // FAULTLOC_SUITE_IO_HPP_
