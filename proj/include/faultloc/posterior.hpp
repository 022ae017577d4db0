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

#ifndef FAULTLOC_POSTERIOR_HPP_
#define FAULTLOC_POSTERIOR_HPP_

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "faultloc/classify.hpp"
#include "faultloc/covers.hpp"
#include "faultloc/model.hpp"

namespace faultloc {

/// How the explained probability is computed.
enum class Mode { kExact, kSecondOrder, kAuto };

/// Which computation actually ran (auto resolves to one of these).
enum class Approx { kExact, kSecondOrder };

const char* to_string(Approx a);

/// One scored combination.
struct PosteriorEntry {
  Combination combination;
  Category category = Category::kUT;
  double prior = 0.0;
  double posterior = 0.0;
  /// Probability that every failure the combination appears in is explained
  /// by some active candidate; the posterior's denominator. TF only.
  std::optional<double> explained_prob;
  /// True when the reported posterior was clamped to 1 because the truncated
  /// denominator fell below the prior.
  bool clamped = false;
  /// Number of minimal covers enumerated for the denominator. TF only.
  std::optional<std::uint64_t> cover_count;
  Approx approximation = Approx::kExact;
  /// False when cover enumeration hit its limit; the entry is then scored
  /// from the covers found, which can only overstate suspiciousness.
  bool covers_complete = true;
};

struct ExplainedResult {
  double value = 0.0;
  Approx used = Approx::kExact;
};

/// Probability that at least one enumerated cover is fully active, given the
/// per-member activation probabilities (indexed by candidate position).
///  - exact: full alternating inclusion-exclusion over cover subsets; each
///    term multiplies the priors of the UNION of the subset's members
///    (shared members once). Refused above 25 covers.
///  - second_order: first two term groups only; never exceeds the exact
///    value, so downstream posteriors are overestimated, never missed.
///  - auto: exact up to 20 covers, second_order beyond.
/// Throws std::logic_error on an empty collection (upstream inconsistency)
/// and std::invalid_argument for exact mode above 25 covers.
ExplainedResult prob_explained(const CoverCollection& covers,
                               std::span<const double> member_priors,
                               Mode mode);

struct PosteriorOptions {
  Mode mode = Mode::kAuto;
  std::uint64_t cover_limit = kDefaultCoverLimit;
  /// Covers whose member-prior product falls below this are dropped before
  /// the truncated sum (0 = keep everything). The target's own singleton
  /// cover is always kept so the denominator stays positive.
  double prune_epsilon = 0.0;
};

/// Memo for explained probabilities, keyed by the failure-index set (which
/// determines the candidate set and hence the covers). Safe for concurrent
/// use; the stored value is a pure function of the key, so racing inserts
/// are benign. Bypassed when pruning is active (pruning is target-relative).
class ExplainedCache {
 public:
  struct Value {
    double explained = 0.0;
    Approx used = Approx::kExact;
    std::uint64_t cover_count = 0;
    bool complete = true;
  };

  std::optional<Value> find(const std::vector<std::uint32_t>& failures) const;
  void store(const std::vector<std::uint32_t>& failures, const Value& v);

 private:
  mutable std::mutex mu_;
  std::map<std::vector<std::uint32_t>, Value> memo_;
};

/// Scores one combination:
///  - TP: posterior exactly 0.
///  - UT: posterior exactly its prior.
///  - TF: prior / explained_prob, clamped to 1 and flagged if the truncated
///    denominator undershoots the prior.
/// Throws std::invalid_argument if order(target) > k_max; propagates cover
/// enumeration errors.
PosteriorEntry posterior_probability(const Combination& target,
                                     const Partition& partition,
                                     const PriorSpec& priors,
                                     const PosteriorOptions& options = {},
                                     ExplainedCache* cache = nullptr);

/// Convenience overload matching the four-argument form.
PosteriorEntry posterior_probability(const Combination& target,
                                     const Partition& partition,
                                     const PriorSpec& priors, Mode mode);

struct RankOptions {
  std::size_t k_max = 3;
  Mode mode = Mode::kAuto;
  std::size_t top_n = 20;
  /// Scoring threads. Results are bitwise identical for any value: every
  /// entry is a pure function of the inputs and the final ordering is fixed.
  unsigned workers = 1;
  /// Include untested combinations whose prior exceeds ut_floor. Off by
  /// default: their posteriors are report-only constants equal to the prior.
  bool include_ut = false;
  double ut_floor = 1e-3;
  std::uint64_t cover_limit = kDefaultCoverLimit;
  double prune_epsilon = 0.0;
};

/// End-to-end ranking: classify, score every TF combination (optionally UT
/// above the floor), sort by descending posterior with deterministic
/// tie-breaks (ascending order, then factor indices, then level indices),
/// truncate to top_n, and assign 1-based ranks.
/// Throws InconsistentData via classification.
std::vector<PosteriorEntry> rank_root_causes(const TestSuite& suite,
                                             const PriorSpec& priors,
                                             const RankOptions& options = {});

/// Independent oracle: sums the scenario-space posterior directly. Every
/// subset of the order-<=k_max combination space is weighted by its Bernoulli
/// prior and a deterministic likelihood (1 iff no active combination sits in
/// a passed row and every failed row holds an active combination). Exact but
/// exponential; refused when the combination space exceeds 22.
/// Throws std::invalid_argument when too large, InconsistentData when no
/// scenario is consistent with the outcomes.
double brute_force_posterior(const TestSuite& suite, const PriorSpec& priors,
                             std::size_t k_max, const Combination& target);

}  // namespace faultloc

#endif  // FAULTLOC_POSTERIOR_HPP_
