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

#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "faultloc/design.hpp"
#include "faultloc/posterior.hpp"
#include "faultloc/suite_io.hpp"
#include "test_util.hpp"

using namespace faultloc;
using testutil::combo;
using testutil::data_file;
using testutil::make_space;

namespace {

std::vector<Settings> settings_of(const TestSuite& suite) {
  std::vector<Settings> rows;
  rows.reserve(suite.rows().size());
  for (const TestRow& r : suite.rows()) rows.push_back(r.settings);
  return rows;
}

using MissingTuple =
    std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>;

}  // namespace

TEST_SUITE("design") {

TEST_CASE("full factorial covers every pair") {
  const FactorSpace space = make_space(2, 2);
  const std::vector<Settings> full{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  const CoverageReport ok = verify_coverage_strength(full, space, 2);
  CHECK(ok.satisfied);
  CHECK(ok.missing.empty());
  CHECK(ok.strength_checked == 2);

  // Dropping (1,1) leaves exactly that tuple uncovered.
  const std::vector<Settings> holed{{0, 0}, {0, 1}, {1, 0}};
  const CoverageReport bad = verify_coverage_strength(holed, space, 2);
  CHECK_FALSE(bad.satisfied);
  REQUIRE(bad.missing.size() == 1);
  CHECK(bad.missing[0] == MissingTuple{{0, 1}, {1, 1}});
}

TEST_CASE("strength one only needs every level somewhere") {
  const FactorSpace space = make_space(3, 2);
  CHECK(verify_coverage_strength({{0, 0, 0}, {1, 1, 1}}, space, 1).satisfied);

  const CoverageReport report =
      verify_coverage_strength({{0, 0, 0}, {1, 1, 0}}, space, 1);
  CHECK_FALSE(report.satisfied);
  REQUIRE(report.missing.size() == 1);
  CHECK(report.missing[0] == MissingTuple{{2}, {1}});
}

TEST_CASE("missing tuples come out in deterministic order") {
  const FactorSpace space = make_space(2, 2);
  const CoverageReport report =
      verify_coverage_strength({{0, 0}}, space, 2);
  REQUIRE(report.missing.size() == 3);
  CHECK(report.missing[0] == MissingTuple{{0, 1}, {0, 1}});
  CHECK(report.missing[1] == MissingTuple{{0, 1}, {1, 0}});
  CHECK(report.missing[2] == MissingTuple{{0, 1}, {1, 1}});
}

TEST_CASE("strength and row shape are validated") {
  const FactorSpace space = make_space(2, 2);
  const std::vector<Settings> rows{{0, 0}};
  CHECK_THROWS_AS(verify_coverage_strength(rows, space, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_coverage_strength(rows, space, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_coverage_strength({{0, 0, 0}}, space, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_coverage_strength({{0, 2}}, space, 2),
                  std::invalid_argument);
  CHECK_NOTHROW(verify_coverage_strength(rows, space, 2));
}

TEST_CASE("shipped fixtures at strength two") {
  const TestSuite tcas = load_suite(data_file("tcas.csv"));
  CHECK(verify_coverage_strength(settings_of(tcas), tcas.space(), 2)
            .satisfied);

  // The DOE screening matrix is not a full pairwise design.
  const TestSuite doe = load_suite(data_file("easydoe.csv"));
  const CoverageReport report =
      verify_coverage_strength(settings_of(doe), doe.space(), 2);
  CHECK_FALSE(report.satisfied);
  CHECK(report.missing.size() == 21);
}

TEST_CASE("simulated outcomes fail exactly where a planted cause fits") {
  const std::vector<Settings> rows{
      {0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  RootCauseScenario truth;
  truth.active = {combo({{0, 1}, {1, 1}})};

  const std::vector<bool> failed = simulate_outcomes(rows, truth);
  REQUIRE(failed.size() == 4);
  CHECK_FALSE(failed[0]);
  CHECK(failed[1]);
  CHECK_FALSE(failed[2]);
  CHECK_FALSE(failed[3]);

  // Two causes: a row fails if either is contained.
  truth.active.push_back(combo({{2, 1}}));
  const std::vector<bool> both = simulate_outcomes(rows, truth);
  CHECK_FALSE(both[0]);
  CHECK(both[1]);
  CHECK(both[2]);
  CHECK(both[3]);

  // No causes: everything passes.
  for (bool f : simulate_outcomes(rows, RootCauseScenario{})) CHECK_FALSE(f);
}

TEST_CASE("simulation then analysis recovers a planted cause") {
  const FactorSpace space = make_space(3, 3);
  std::vector<Settings> rows;
  for (std::uint32_t a = 0; a < 3; ++a)
    for (std::uint32_t b = 0; b < 3; ++b)
      for (std::uint32_t c = 0; c < 3; ++c) rows.push_back({a, b, c});
  RootCauseScenario truth;
  truth.active = {combo({{0, 2}, {1, 2}})};
  const std::vector<bool> failed = simulate_outcomes(rows, truth);

  std::vector<TestRow> suite_rows;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    suite_rows.push_back(
        {rows[r], failed[r], static_cast<std::uint32_t>(r + 1)});
  }
  const TestSuite suite(space, std::move(suite_rows));
  const std::vector<PosteriorEntry> entries =
      rank_root_causes(suite, PriorSpec(1.0 / 30.0), {});
  REQUIRE_FALSE(entries.empty());
  CHECK(entries[0].combination == truth.active[0]);
}

}  // TEST_SUITE("design")
