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

#include <cmath>
#include <random>
#include <stdexcept>

#include "faultloc/errors.hpp"
#include "faultloc/posterior.hpp"
#include "faultloc/suite_io.hpp"
#include "test_util.hpp"

using namespace faultloc;
using testutil::combo;
using testutil::data_file;
using testutil::make_space;
using testutil::make_suite;

namespace {

CoverCollection singleton_covers(std::size_t n) {
  CoverCollection c;
  for (std::uint32_t i = 0; i < n; ++i) c.covers.push_back({i});
  return c;
}

bool entries_identical(const std::vector<PosteriorEntry>& a,
                       const std::vector<PosteriorEntry>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i].combination == b[i].combination)) return false;
    if (a[i].category != b[i].category) return false;
    if (a[i].prior != b[i].prior) return false;
    if (a[i].posterior != b[i].posterior) return false;
    if (a[i].explained_prob != b[i].explained_prob) return false;
    if (a[i].clamped != b[i].clamped) return false;
    if (a[i].cover_count != b[i].cover_count) return false;
    if (a[i].approximation != b[i].approximation) return false;
    if (a[i].covers_complete != b[i].covers_complete) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("posterior") {

TEST_CASE("explained probability of disjoint singleton covers") {
  // Six competing explanations that never co-occur in one cover: the union
  // bound collapses to 1 - prod(1 - p).
  const std::vector<double> p{0.1, 0.1, 0.01, 0.01, 0.01, 0.001};
  const CoverCollection covers = singleton_covers(p.size());

  const ExplainedResult exact = prob_explained(covers, p, Mode::kExact);
  CHECK(exact.used == Approx::kExact);
  CHECK(exact.value == doctest::Approx(0.21484375219).epsilon(1e-10));

  // Ratio form: a 0.1 candidate explains with posterior ~0.4655.
  CHECK(0.1 / exact.value == doctest::Approx(0.46545).epsilon(1e-4));

  const ExplainedResult second = prob_explained(covers, p, Mode::kSecondOrder);
  CHECK(second.used == Approx::kSecondOrder);
  double singles = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    singles += p[i];
    for (std::size_t j = i + 1; j < p.size(); ++j) pairs += p[i] * p[j];
  }
  CHECK(second.value == doctest::Approx(singles - pairs).epsilon(1e-12));
  CHECK(second.value <= exact.value);

  CHECK(prob_explained(covers, p, Mode::kAuto).used == Approx::kExact);
}

TEST_CASE("union products count shared members once") {
  CoverCollection covers;
  covers.covers = {{0, 1}, {1, 2}};
  const std::vector<double> p{0.5, 0.5, 0.5};
  // ab + bc - abc, with b multiplied once in the union term.
  const ExplainedResult exact = prob_explained(covers, p, Mode::kExact);
  CHECK(exact.value == doctest::Approx(0.375).epsilon(1e-12));
  // With only two covers the truncated sum is the full expansion.
  const ExplainedResult second = prob_explained(covers, p, Mode::kSecondOrder);
  CHECK(second.value == doctest::Approx(0.375).epsilon(1e-12));
}

TEST_CASE("explained probability guards") {
  const std::vector<double> p(30, 0.01);
  CHECK_THROWS_AS(prob_explained(CoverCollection{}, p, Mode::kAuto),
                  std::logic_error);
  CHECK_THROWS_AS(prob_explained(singleton_covers(26), p, Mode::kExact),
                  std::invalid_argument);
  CHECK(prob_explained(singleton_covers(21), p, Mode::kAuto).used ==
        Approx::kSecondOrder);
  CHECK(prob_explained(singleton_covers(20), p, Mode::kAuto).used ==
        Approx::kExact);
}

TEST_CASE("degenerate categories score degenerately") {
  const TestSuite suite =
      make_suite(make_space(2, 2), {{0, 0}, {1, 1}}, {false, true});
  const Partition part = classify_combinations(suite, 2);
  const PriorSpec priors(0.1);

  const PosteriorEntry tp =
      posterior_probability(combo({{0, 0}}), part, priors, Mode::kAuto);
  CHECK(tp.category == Category::kTP);
  CHECK(tp.posterior == 0.0);
  CHECK_FALSE(tp.explained_prob.has_value());
  CHECK_FALSE(tp.cover_count.has_value());

  const PosteriorEntry ut = posterior_probability(combo({{0, 0}, {1, 1}}),
                                                  part, priors, Mode::kAuto);
  CHECK(ut.category == Category::kUT);
  CHECK(ut.posterior == ut.prior);
  CHECK(ut.prior == prior_probability(combo({{0, 0}, {1, 1}}), priors));
}

TEST_CASE("TF posterior on a hand-worked system") {
  // Passed (0,0), failed (1,1): three candidates (two singles and their
  // pair), each covering the one failure, so three singleton covers.
  const TestSuite suite =
      make_suite(make_space(2, 2), {{0, 0}, {1, 1}}, {false, true});
  const Partition part = classify_combinations(suite, 2);
  const PriorSpec priors(0.1);

  const double explained = 1.0 - 0.9 * 0.9 * (1.0 - 0.01);
  const Combination target = combo({{0, 1}});
  const PosteriorEntry e =
      posterior_probability(target, part, priors, Mode::kExact);
  CHECK(e.category == Category::kTF);
  CHECK(e.prior == doctest::Approx(0.1).epsilon(1e-15));
  REQUIRE(e.explained_prob.has_value());
  CHECK(*e.explained_prob == doctest::Approx(explained).epsilon(1e-12));
  CHECK(e.posterior == doctest::Approx(0.1 / explained).epsilon(1e-12));
  CHECK(e.cover_count == 3);
  CHECK(e.approximation == Approx::kExact);
  CHECK_FALSE(e.clamped);
  CHECK(e.covers_complete);

  // The pair shares the failure set, hence the denominator; only the prior
  // differs.
  const PosteriorEntry pair_entry = posterior_probability(
      combo({{0, 1}, {1, 1}}), part, priors, Mode::kExact);
  CHECK(*pair_entry.explained_prob ==
        doctest::Approx(explained).epsilon(1e-12));
  CHECK(pair_entry.posterior ==
        doctest::Approx(0.01 / explained).epsilon(1e-12));

  // Independent scenario-space oracle agrees (single failure, so the
  // target covers every failure it is involved in).
  const double brute = brute_force_posterior(suite, priors, 2, target);
  CHECK(e.posterior == doctest::Approx(brute).epsilon(1e-11));
}

TEST_CASE("clamping happens only under truncation") {
  // One failed row, no passed rows, three strong singleton candidates: the
  // truncated denominator 3p - 3p^2 = 0.27 falls below the 0.9 prior.
  const TestSuite suite = make_suite(make_space(3, 2), {{1, 1, 1}}, {true});
  const Partition part = classify_combinations(suite, 1);
  const PriorSpec priors(0.9);
  const Combination target = combo({{0, 1}});

  const PosteriorEntry second =
      posterior_probability(target, part, priors, Mode::kSecondOrder);
  CHECK(second.approximation == Approx::kSecondOrder);
  CHECK(second.clamped);
  CHECK(second.posterior == 1.0);
  CHECK(*second.explained_prob ==
        doctest::Approx(3 * 0.9 - 3 * 0.81).epsilon(1e-12));

  const PosteriorEntry exact =
      posterior_probability(target, part, priors, Mode::kExact);
  CHECK_FALSE(exact.clamped);
  CHECK(*exact.explained_prob == doctest::Approx(0.999).epsilon(1e-12));
  CHECK(exact.posterior == doctest::Approx(0.9 / 0.999).epsilon(1e-12));
}

TEST_CASE("cover limit forces the truncated path and flags the entry") {
  const TestSuite suite =
      make_suite(make_space(2, 2), {{0, 0}, {1, 1}}, {false, true});
  const Partition part = classify_combinations(suite, 2);
  const PriorSpec priors(0.1);

  PosteriorOptions options;
  options.mode = Mode::kExact;
  options.cover_limit = 2;  // true count is 3
  const PosteriorEntry e =
      posterior_probability(combo({{0, 1}}), part, priors, options);
  CHECK_FALSE(e.covers_complete);
  CHECK(e.cover_count == 2);
  CHECK(e.approximation == Approx::kSecondOrder);

  // Fewer covers can only shrink the denominator.
  const PosteriorEntry full =
      posterior_probability(combo({{0, 1}}), part, priors, Mode::kExact);
  CHECK(e.posterior >= full.posterior);
}

TEST_CASE("pruning keeps the target's own cover") {
  const TestSuite suite =
      make_suite(make_space(2, 2), {{0, 0}, {1, 1}}, {false, true});
  const Partition part = classify_combinations(suite, 2);
  const PriorSpec priors(0.1);
  const Combination target = combo({{0, 1}});

  const PosteriorEntry base =
      posterior_probability(target, part, priors, Mode::kExact);

  PosteriorOptions mild;
  mild.mode = Mode::kExact;
  mild.prune_epsilon = 1e-9;  // below every cover product: no effect
  const PosteriorEntry unpruned =
      posterior_probability(target, part, priors, mild);
  CHECK(unpruned.posterior == doctest::Approx(base.posterior).epsilon(1e-15));

  PosteriorOptions harsh;
  harsh.mode = Mode::kExact;
  harsh.prune_epsilon = 0.5;  // above every cover product: self only
  const PosteriorEntry pruned =
      posterior_probability(target, part, priors, harsh);
  CHECK(pruned.posterior == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(pruned.clamped);  // denominator equals the prior, not below it
  CHECK(pruned.posterior >= base.posterior);
}

TEST_CASE("explained cache stores pure values") {
  ExplainedCache cache;
  CHECK_FALSE(cache.find({1, 2}).has_value());
  cache.store({1, 2}, {0.25, Approx::kExact, 7, true});
  const auto hit = cache.find({1, 2});
  REQUIRE(hit.has_value());
  CHECK(hit->explained == 0.25);
  CHECK(hit->cover_count == 7);
  CHECK_FALSE(cache.find({1}).has_value());

  // Shared failure sets produce one computation; both targets read the same
  // denominator back.
  const TestSuite suite =
      make_suite(make_space(2, 2), {{0, 0}, {1, 1}}, {false, true});
  const Partition part = classify_combinations(suite, 2);
  const PriorSpec priors(0.1);
  ExplainedCache shared;
  const PosteriorEntry a = posterior_probability(combo({{0, 1}}), part, priors,
                                                 PosteriorOptions{}, &shared);
  const PosteriorEntry b = posterior_probability(combo({{1, 1}}), part, priors,
                                                 PosteriorOptions{}, &shared);
  CHECK(a.explained_prob == b.explained_prob);
  CHECK(a.cover_count == b.cover_count);
}

TEST_CASE("scenario-space oracle on mini systems") {
  SUBCASE("forced root cause") {
    const TestSuite suite =
        make_suite(testutil::make_space({2}), {{0}, {1}}, {false, true});
    const PriorSpec priors(1.0 / 30.0);
    CHECK(brute_force_posterior(suite, priors, 1, combo({{0, 1}})) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(brute_force_posterior(suite, priors, 1, combo({{0, 0}})) == 0.0);
  }
  SUBCASE("refuses large spaces") {
    const TestSuite suite = load_suite(data_file("tcas.csv"));
    CHECK_THROWS_AS(
        brute_force_posterior(suite, PriorSpec(1.0 / 30.0), 1,
                              combo({{0, 0}})),
        std::invalid_argument);
  }
  SUBCASE("no consistent scenario") {
    const TestSuite suite = make_suite(
        make_space(2, 2), {{0, 1}, {1, 0}, {1, 1}}, {false, false, true});
    CHECK_THROWS_AS(brute_force_posterior(suite, PriorSpec(0.1), 1,
                                          combo({{0, 1}})),
                    InconsistentData);
  }
  SUBCASE("target outside the considered space") {
    const TestSuite suite =
        make_suite(make_space(3, 2), {{0, 0, 0}, {1, 1, 1}}, {false, true});
    CHECK_THROWS_AS(brute_force_posterior(suite, PriorSpec(0.1), 2,
                                          combo({{0, 1}, {1, 1}, {2, 1}})),
                    std::invalid_argument);
  }
}

TEST_CASE("tcas fixture: frozen ranking") {
  const TestSuite suite = load_suite(data_file("tcas.csv"));
  const PriorSpec priors(1.0 / 30.0);
  const std::vector<PosteriorEntry> entries =
      rank_root_causes(suite, priors, {});

  REQUIRE(entries.size() == 20);
  const FactorSpace& space = suite.space();

  CHECK(entries[0].combination ==
        parse_combination(
            "Climb_Inhibit=1, Up_Separation=399, Down_Separation=640",
            space));
  CHECK(entries[0].posterior == doctest::Approx(0.3714360396).epsilon(1e-8));
  CHECK(entries[0].approximation == Approx::kSecondOrder);
  CHECK(entries[0].cover_count == 6553);
  CHECK(entries[0].covers_complete);
  CHECK_FALSE(entries[0].clamped);

  const std::vector<std::string> next_three{
      "Alt_Layer_Value=1, Up_Separation=399",
      "Alt_Layer_Value=1, Down_Separation=640",
      "Alt_Layer_Value=1, Other_RAC=0"};
  for (std::size_t i = 0; i < next_three.size(); ++i) {
    CAPTURE(i);
    CHECK(entries[1 + i].combination ==
          parse_combination(next_three[i], space));
    CHECK(entries[1 + i].posterior ==
          doctest::Approx(0.1991649824).epsilon(1e-8));
    CHECK(entries[1 + i].cover_count == 64);
  }

  for (std::size_t i = 4; i <= 10; ++i) {
    CAPTURE(i);
    CHECK(entries[i].posterior ==
          doctest::Approx(0.0979234546).epsilon(1e-8));
    CHECK(entries[i].combination.order() == 2);
    CHECK(entries[i].cover_count == 105);
  }

  CHECK(entries[11].posterior == doctest::Approx(0.0066388327).epsilon(1e-8));
  for (std::size_t i = 11; i < entries.size(); ++i) {
    CHECK(entries[i].posterior < 0.009);
  }
  for (std::size_t i = 1; i < entries.size(); ++i) {
    CHECK(entries[i - 1].posterior >= entries[i].posterior);
    if (entries[i - 1].posterior == entries[i].posterior) {
      CHECK(canonical_less(entries[i - 1].combination,
                           entries[i].combination));
    }
  }
}

TEST_CASE("tcas fixture: explicit exact mode is refused on the big target") {
  const TestSuite suite = load_suite(data_file("tcas.csv"));
  const Partition part = classify_combinations(suite, 3);
  const PriorSpec priors(1.0 / 30.0);
  const Combination top = parse_combination(
      "Climb_Inhibit=1, Up_Separation=399, Down_Separation=640",
      suite.space());
  CHECK_THROWS_AS(posterior_probability(top, part, priors, Mode::kExact),
                  std::invalid_argument);
}

TEST_CASE("tcas fixture: worker count never changes the result") {
  const TestSuite suite = load_suite(data_file("tcas.csv"));
  const PriorSpec priors(1.0 / 30.0);
  RankOptions one;
  one.workers = 1;
  RankOptions four;
  four.workers = 4;
  CHECK(entries_identical(rank_root_causes(suite, priors, one),
                          rank_root_causes(suite, priors, four)));
}

TEST_CASE("easy doe fixture: frozen rankings under both shipped priors") {
  const TestSuite suite = load_suite(data_file("easydoe.csv"));
  const FactorSpace& space = suite.space();
  const Combination top = parse_combination(
      "Model_Type=Main Effects Interact Uncorr, N_Extra_Runs=2", space);

  SUBCASE("prior file 1") {
    const PriorSpec priors =
        load_priors(data_file("easydoe_prior1.conf"), space, 1.0 / 30.0);
    const std::vector<PosteriorEntry> entries =
        rank_root_causes(suite, priors, {});
    REQUIRE(entries.size() == 20);
    CHECK(entries[0].combination == top);
    CHECK(entries[0].posterior ==
          doctest::Approx(0.2760380609).epsilon(1e-8));
    CHECK(entries[0].cover_count == 155);
    CHECK(entries[0].approximation == Approx::kSecondOrder);
    CHECK(entries[1].posterior ==
          doctest::Approx(0.1380190305).epsilon(1e-8));
    for (std::size_t i = 2; i <= 5; ++i) {
      CHECK(entries[i].posterior ==
            doctest::Approx(0.0345047576).epsilon(1e-8));
    }
    for (std::size_t i = 6; i <= 7; ++i) {
      CHECK(entries[i].posterior ==
            doctest::Approx(0.0172523788).epsilon(1e-8));
    }
    CHECK(entries[8].posterior ==
          doctest::Approx(0.0110415224).epsilon(1e-8));
  }

  SUBCASE("prior file 2") {
    const PriorSpec priors =
        load_priors(data_file("easydoe_prior2.conf"), space, 1.0 / 30.0);
    const std::vector<PosteriorEntry> entries =
        rank_root_causes(suite, priors, {});
    REQUIRE(entries.size() == 20);
    CHECK(entries[0].combination == top);
    CHECK(entries[0].posterior ==
          doctest::Approx(0.1462171452).epsilon(1e-8));
    for (std::size_t i = 1; i <= 5; ++i) {
      CHECK(entries[i].posterior ==
            doctest::Approx(0.0731085726).epsilon(1e-8));
    }
    for (std::size_t i = 6; i <= 7; ++i) {
      CHECK(entries[i].posterior ==
            doctest::Approx(0.0365542863).epsilon(1e-8));
    }
    CHECK(entries[8].posterior ==
          doctest::Approx(0.0058486858).epsilon(1e-8));
  }
}

TEST_CASE("ranking options: untested inclusion and truncation") {
  const TestSuite suite = make_suite(make_space(3, 2),
                                     {{0, 0, 0}, {1, 1, 0}}, {false, true});
  const PriorSpec priors(0.05);

  RankOptions plain;
  plain.k_max = 2;
  const std::size_t tf_count = rank_root_causes(suite, priors, plain).size();
  CHECK(tf_count == 5);

  RankOptions with_ut;
  with_ut.k_max = 2;
  with_ut.include_ut = true;
  with_ut.ut_floor = 1e-3;
  with_ut.top_n = 0;  // everything
  const std::vector<PosteriorEntry> all =
      rank_root_causes(suite, priors, with_ut);
  std::size_t ut_seen = 0;
  for (const PosteriorEntry& e : all) {
    if (e.category == Category::kUT) {
      ++ut_seen;
      CHECK(e.posterior == e.prior);
      CHECK(e.prior > 1e-3);
    }
  }
  CHECK(ut_seen > 0);
  CHECK(all.size() == tf_count + ut_seen);

  // A floor above the pair prior keeps only untested singles.
  RankOptions high_floor = with_ut;
  high_floor.ut_floor = 0.01;
  for (const PosteriorEntry& e :
       rank_root_causes(suite, priors, high_floor)) {
    if (e.category == Category::kUT) {
      CHECK(e.combination.order() == 1);
    }
  }

  RankOptions top3 = with_ut;
  top3.top_n = 3;
  CHECK(rank_root_causes(suite, priors, top3).size() == 3);
}

}  // TEST_SUITE("posterior")
