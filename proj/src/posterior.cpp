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

#include "faultloc/posterior.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <thread>

#include "faultloc/errors.hpp"

namespace faultloc {
namespace {

/// Covers with more members than this are refused by the exact
/// inclusion-exclusion (2^n subset terms).
constexpr std::size_t kExactCoverCap = 25;
/// Above this many covers, auto mode switches to the truncated sum.
constexpr std::size_t kAutoExactThreshold = 20;

/// Full alternating inclusion-exclusion over all nonempty cover subsets.
/// Each subset contributes sign * product of the priors of the UNION of its
/// members (a member shared by several covers is multiplied once). The
/// union product is maintained incrementally with per-member multiplicity
/// counters.
class ExactExpansion {
 public:
  ExactExpansion(const std::vector<std::vector<std::uint32_t>>& covers,
                 std::span<const double> member_priors)
      : covers_(covers),
        priors_(member_priors),
        count_(member_priors.size(), 0) {}

  double run() {
    expand(0, +1.0, 1.0);
    return total_;
  }

 private:
  void expand(std::size_t from, double sign, double prod) {
    for (std::size_t j = from; j < covers_.size(); ++j) {
      double next = prod;
      for (std::uint32_t m : covers_[j]) {
        if (count_[m]++ == 0) next *= priors_[m];
      }
      total_ += sign * next;
      expand(j + 1, -sign, next);
      for (std::uint32_t m : covers_[j]) --count_[m];
    }
  }

  const std::vector<std::vector<std::uint32_t>>& covers_;
  std::span<const double> priors_;
  std::vector<std::uint32_t> count_;
  double total_ = 0.0;
};

/// First- minus second-order terms of the same expansion: sum of single-cover
/// products minus sum over cover pairs of their union products. Truncating an
/// alternating series after a negative term can only undershoot.
double truncated_expansion(
    const std::vector<std::vector<std::uint32_t>>& covers,
    std::span<const double> member_priors) {
  double singles = 0.0;
  std::vector<double> cover_prod(covers.size());
  for (std::size_t i = 0; i < covers.size(); ++i) {
    double p = 1.0;
    for (std::uint32_t m : covers[i]) p *= member_priors[m];
    cover_prod[i] = p;
    singles += p;
  }
  double pairs = 0.0;
  std::vector<bool> in_i(member_priors.size(), false);
  for (std::size_t i = 0; i < covers.size(); ++i) {
    for (std::uint32_t m : covers[i]) in_i[m] = true;
    for (std::size_t j = i + 1; j < covers.size(); ++j) {
      double extra = 1.0;
      for (std::uint32_t m : covers[j]) {
        if (!in_i[m]) extra *= member_priors[m];
      }
      pairs += cover_prod[i] * extra;
    }
    for (std::uint32_t m : covers[i]) in_i[m] = false;
  }
  return singles - pairs;
}

}  // namespace

const char* to_string(Approx a) {
  return a == Approx::kExact ? "exact" : "second_order";
}

ExplainedResult prob_explained(const CoverCollection& covers,
                               std::span<const double> member_priors,
                               Mode mode) {
  const std::size_t n = covers.covers.size();
  if (n == 0) {
    throw std::logic_error(
        "explained probability of an empty cover collection: every "
        "combination under evaluation covers its own failures, so this "
        "indicates a logic error upstream");
  }
  Approx used;
  switch (mode) {
    case Mode::kExact:
      if (n > kExactCoverCap) {
        throw std::invalid_argument(
            "exact expansion over " + std::to_string(n) +
            " covers needs 2^" + std::to_string(n) +
            " terms; use second_order or auto mode for this instance");
      }
      used = Approx::kExact;
      break;
    case Mode::kSecondOrder:
      used = Approx::kSecondOrder;
      break;
    case Mode::kAuto:
      used = n <= kAutoExactThreshold ? Approx::kExact : Approx::kSecondOrder;
      break;
    default:
      used = Approx::kExact;
      break;
  }
  double value = used == Approx::kExact
                     ? ExactExpansion(covers.covers, member_priors).run()
                     : truncated_expansion(covers.covers, member_priors);
  return {value, used};
}

std::optional<ExplainedCache::Value> ExplainedCache::find(
    const std::vector<std::uint32_t>& failures) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = memo_.find(failures);
  if (it == memo_.end()) return std::nullopt;
  return it->second;
}

void ExplainedCache::store(const std::vector<std::uint32_t>& failures,
                           const Value& v) {
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(failures, v);
}

namespace {

PosteriorEntry score_tf(const Combination& target, const Partition& partition,
                        const PriorSpec& priors,
                        const PosteriorOptions& options,
                        ExplainedCache* cache) {
  PosteriorEntry entry;
  entry.combination = target;
  entry.category = Category::kTF;
  entry.prior = prior_probability(target, priors);

  const bool cacheable = options.prune_epsilon == 0.0 && cache != nullptr;
  const std::vector<std::uint32_t>& key = partition.failure_rows(target);

  ExplainedCache::Value val;
  bool have = false;
  if (cacheable) {
    if (auto hit = cache->find(key)) {
      val = *hit;
      have = true;
    }
  }
  if (!have) {
    Incidence inc = build_incidence(partition, target);
    CoverCollection covers =
        enumerate_minimal_covers(inc, options.cover_limit);
    std::vector<double> member_priors(inc.candidates.size());
    for (std::size_t i = 0; i < inc.candidates.size(); ++i) {
      member_priors[i] = prior_probability(inc.candidates[i], priors);
    }
    val.cover_count = covers.covers.size();
    val.complete = covers.complete;

    if (options.prune_epsilon > 0.0) {
      // The target's own singleton cover always survives: it keeps the
      // denominator at least the prior, so pruning can only raise other
      // entries, never sink the target below a sound score.
      std::uint32_t self = 0;
      for (std::size_t i = 0; i < inc.candidates.size(); ++i) {
        if (inc.candidates[i] == target) {
          self = static_cast<std::uint32_t>(i);
          break;
        }
      }
      std::vector<std::vector<std::uint32_t>> kept;
      kept.reserve(covers.covers.size());
      for (auto& cover : covers.covers) {
        double p = 1.0;
        for (std::uint32_t m : cover) p *= member_priors[m];
        const bool is_self =
            cover.size() == 1 && cover.front() == self;
        if (is_self || p >= options.prune_epsilon) {
          kept.push_back(std::move(cover));
        }
      }
      covers.covers = std::move(kept);
    }

    // An incomplete enumeration is already a truncation: scoring it with the
    // truncated sum keeps the result on the conservative (overestimating)
    // side instead of pretending the expansion is exact.
    Mode mode = covers.complete ? options.mode : Mode::kSecondOrder;
    ExplainedResult res = prob_explained(covers, member_priors, mode);
    val.explained = res.value;
    val.used = res.used;
    if (cacheable) cache->store(key, val);
  }

  entry.explained_prob = val.explained;
  entry.cover_count = val.cover_count;
  entry.approximation = val.used;
  entry.covers_complete = val.complete;
  if (val.explained < entry.prior) {
    entry.posterior = 1.0;
    entry.clamped = true;
  } else {
    entry.posterior = entry.prior / val.explained;
  }
  return entry;
}

}  // namespace

PosteriorEntry posterior_probability(const Combination& target,
                                     const Partition& partition,
                                     const PriorSpec& priors,
                                     const PosteriorOptions& options,
                                     ExplainedCache* cache) {
  const Category cat = category_of(target, partition);
  if (cat == Category::kTF) {
    return score_tf(target, partition, priors, options, cache);
  }
  PosteriorEntry entry;
  entry.combination = target;
  entry.category = cat;
  entry.prior = prior_probability(target, priors);
  entry.posterior = cat == Category::kTP ? 0.0 : entry.prior;
  return entry;
}

PosteriorEntry posterior_probability(const Combination& target,
                                     const Partition& partition,
                                     const PriorSpec& priors, Mode mode) {
  PosteriorOptions options;
  options.mode = mode;
  return posterior_probability(target, partition, priors, options, nullptr);
}

std::vector<PosteriorEntry> rank_root_causes(const TestSuite& suite,
                                             const PriorSpec& priors,
                                             const RankOptions& options) {
  const Partition partition = classify_combinations(suite, options.k_max);
  const std::vector<Combination>& tf = partition.tf();

  PosteriorOptions popts;
  popts.mode = options.mode;
  popts.cover_limit = options.cover_limit;
  popts.prune_epsilon = options.prune_epsilon;

  ExplainedCache cache;
  std::vector<PosteriorEntry> entries(tf.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(options.workers,
                                      static_cast<unsigned>(tf.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tf.size(); ++i) {
      entries[i] =
          posterior_probability(tf[i], partition, priors, popts, &cache);
    }
  } else {
    // Each thread owns a contiguous slice and writes into preassigned slots;
    // every entry is a pure function of (target, partition, priors, options),
    // so the outcome is bitwise identical for any worker count.
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mu;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < tf.size(); i += workers) {
            entries[i] =
                posterior_probability(tf[i], partition, priors, popts, &cache);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  if (options.include_ut) {
    CombinationStream stream(suite.space(), options.k_max);
    while (auto c = stream.next()) {
      if (partition.is_tp(*c) || partition.is_tf(*c)) continue;
      const double prior = prior_probability(*c, priors);
      if (prior <= options.ut_floor) continue;
      PosteriorEntry entry;
      entry.combination = std::move(*c);
      entry.category = Category::kUT;
      entry.prior = prior;
      entry.posterior = prior;
      entries.push_back(std::move(entry));
    }
  }

  std::sort(entries.begin(), entries.end(),
            [](const PosteriorEntry& a, const PosteriorEntry& b) {
              if (a.posterior != b.posterior) return a.posterior > b.posterior;
              return canonical_less(a.combination, b.combination);
            });
  if (options.top_n > 0 && entries.size() > options.top_n) {
    entries.resize(options.top_n);
  }
  return entries;
}

double brute_force_posterior(const TestSuite& suite, const PriorSpec& priors,
                             std::size_t k_max, const Combination& target) {
  const std::uint64_t space = combination_space_size(suite.space(), k_max);
  if (space > 22) {
    throw std::invalid_argument(
        "scenario-space oracle is capped at 22 combinations; this space has " +
        std::to_string(space));
  }
  std::vector<Combination> combos;
  combos.reserve(space);
  CombinationStream stream(suite.space(), k_max);
  while (auto c = stream.next()) combos.push_back(std::move(*c));
  const std::size_t n = combos.size();

  std::size_t target_pos = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (combos[i] == target) {
      target_pos = i;
      break;
    }
  }
  if (target_pos == n) {
    throw std::invalid_argument(
        "target combination lies outside the order-<=k_max space");
  }

  // Per-combination evidence footprint.
  std::uint32_t touches_passed = 0;  // bit i: combo i sits in a passed row
  std::vector<std::uint64_t> fail_mask(n, 0);
  std::uint64_t all_failures = 0;
  std::size_t failed_seen = 0;
  for (const TestRow& row : suite.rows()) {
    if (row.failed && failed_seen >= 64) {
      throw std::invalid_argument(
          "scenario-space oracle supports at most 64 failed rows");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!contains(row.settings, combos[i])) continue;
      if (row.failed) {
        fail_mask[i] |= 1ULL << failed_seen;
      } else {
        touches_passed |= 1u << i;
      }
    }
    if (row.failed) {
      all_failures |= 1ULL << failed_seen;
      ++failed_seen;
    }
  }

  // Activating a combination seen in a passed row zeroes the likelihood, so
  // only subsets of the remaining combinations can contribute. The common
  // (1-p) factor of the excluded combinations cancels in the ratio.
  const std::uint32_t free_mask = ~touches_passed & ((n == 32 ? 0xffffffffu
                                                              : (1u << n) - 1));
  std::vector<double> odds(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = prior_probability(combos[i], priors);
    odds[i] = p / (1.0 - p);
  }

  double total = 0.0;
  double with_target = 0.0;
  std::uint32_t sub = free_mask;
  while (true) {
    std::uint64_t covered = 0;
    double weight = 1.0;
    for (std::uint32_t bits = sub; bits != 0; bits &= bits - 1) {
      const unsigned i = static_cast<unsigned>(__builtin_ctz(bits));
      covered |= fail_mask[i];
      weight *= odds[i];
    }
    if (covered == all_failures) {
      total += weight;
      if (sub & (1u << target_pos)) with_target += weight;
    }
    if (sub == 0) break;
    sub = (sub - 1) & free_mask;
  }
  if (total == 0.0) {
    throw InconsistentData(
        "no root-cause scenario is consistent with the observed outcomes");
  }
  return with_target / total;
}

}  // namespace faultloc
