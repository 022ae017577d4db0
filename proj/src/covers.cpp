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

#include "faultloc/covers.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace faultloc {
namespace {

/// Fixed-width bit set over failure positions; one word per 64 failures.
class Mask {
 public:
  explicit Mask(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  void set(std::size_t bit) { words_[bit / 64] |= 1ULL << (bit % 64); }

  void merge(const Mask& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      words_[w] |= other.words_[w];
    }
  }

  bool is_subset_of(const Mask& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & ~other.words_[w]) return false;
    }
    return true;
  }

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

std::vector<Mask> candidate_masks(const Incidence& inc) {
  std::vector<Mask> masks;
  masks.reserve(inc.covers_failure.size());
  for (const auto& positions : inc.covers_failure) {
    Mask m(inc.failures.size());
    for (std::uint32_t pos : positions) m.set(pos);
    masks.push_back(std::move(m));
  }
  return masks;
}

Mask full_mask(std::size_t bits) {
  Mask m(bits);
  for (std::size_t b = 0; b < bits; ++b) m.set(b);
  return m;
}

/// True iff every member covers some failure no other member covers.
bool is_minimal(const std::vector<std::uint32_t>& members,
                const std::vector<Mask>& masks, std::size_t bits) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    Mask others(bits);
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (j != i) others.merge(masks[members[j]]);
    }
    if (masks[members[i]].is_subset_of(others)) return false;
  }
  return true;
}

class CoverSearch {
 public:
  CoverSearch(const Incidence& inc, std::uint64_t limit)
      : masks_(candidate_masks(inc)),
        bits_(inc.failures.size()),
        full_(full_mask(bits_)),
        limit_(limit) {
    // Candidates in descending coverage degree keep the search tree shallow;
    // index ties break by original position for determinism.
    order_.resize(masks_.size());
    std::iota(order_.begin(), order_.end(), 0u);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                       return inc.covers_failure[a].size() >
                              inc.covers_failure[b].size();
                     });
    // suffix_[i] = union of coverage of order_[i..n); lets the search abandon
    // branches whose remaining candidates cannot close the gap.
    suffix_.assign(order_.size() + 1, Mask(bits_));
    for (std::size_t i = order_.size(); i-- > 0;) {
      suffix_[i] = suffix_[i + 1];
      suffix_[i].merge(masks_[order_[i]]);
    }
  }

  CoverCollection run() {
    Mask covered(bits_);
    if (covered == full_) {
      // No failures to cover: the empty set is the one minimal cover.
      result_.covers.push_back({});
      return std::move(result_);
    }
    dfs(0, covered);
    return std::move(result_);
  }

 private:
  void dfs(std::size_t idx, const Mask& covered) {
    if (aborted_) return;
    if (idx == order_.size()) return;
    Mask reachable = covered;
    reachable.merge(suffix_[idx]);
    if (!(reachable == full_)) return;

    const std::uint32_t cand = order_[idx];
    // Include branch, only when the candidate covers something new: a member
    // whose coverage is already present can never be necessary, and every
    // minimal cover lists its members in coverage-adding order.
    if (!masks_[cand].is_subset_of(covered)) {
      chosen_.push_back(cand);
      Mask next = covered;
      next.merge(masks_[cand]);
      if (next == full_) {
        record();
      } else {
        dfs(idx + 1, next);
      }
      chosen_.pop_back();
      if (aborted_) return;
    }
    dfs(idx + 1, covered);
  }

  void record() {
    if (!is_minimal(chosen_, masks_, bits_)) return;
    if (result_.covers.size() >= limit_) {
      result_.complete = false;
      aborted_ = true;
      return;
    }
    std::vector<std::uint32_t> cover = chosen_;
    std::sort(cover.begin(), cover.end());
    result_.covers.push_back(std::move(cover));
  }

  std::vector<Mask> masks_;
  std::size_t bits_;
  Mask full_;
  std::uint64_t limit_;
  std::vector<std::uint32_t> order_;
  std::vector<Mask> suffix_;
  std::vector<std::uint32_t> chosen_;
  CoverCollection result_;
  bool aborted_ = false;
};

}  // namespace

Incidence build_incidence(const Partition& partition,
                          const Combination& target) {
  if (!partition.is_tf(target)) {
    throw std::invalid_argument(
        "incidence is only defined for TF combinations");
  }
  Incidence inc;
  inc.failures = partition.failure_rows(target);

  std::unordered_map<std::uint32_t, std::uint32_t> failure_pos;
  failure_pos.reserve(inc.failures.size());
  for (std::uint32_t t = 0; t < inc.failures.size(); ++t) {
    failure_pos.emplace(inc.failures[t], t);
  }

  std::unordered_set<Combination, CombinationHash> seen;
  for (std::uint32_t row : inc.failures) {
    for (const Combination& c : partition.candidates_of_failure(row)) {
      if (seen.insert(c).second) inc.candidates.push_back(c);
    }
  }
  std::sort(inc.candidates.begin(), inc.candidates.end(), canonical_less);

  inc.covers_failure.resize(inc.candidates.size());
  for (std::size_t i = 0; i < inc.candidates.size(); ++i) {
    for (std::uint32_t row : partition.failure_rows(inc.candidates[i])) {
      auto it = failure_pos.find(row);
      if (it != failure_pos.end()) {
        inc.covers_failure[i].push_back(it->second);
      }
    }
    std::sort(inc.covers_failure[i].begin(), inc.covers_failure[i].end());
  }
  return inc;
}

CoverCollection enumerate_minimal_covers(const Incidence& inc,
                                         std::uint64_t limit) {
  if (limit == 0) {
    throw std::invalid_argument("cover limit must be positive");
  }
  return CoverSearch(inc, limit).run();
}

CoverCollection brute_force_minimal_covers(const Incidence& inc) {
  const std::size_t n = inc.candidates.size();
  if (n > 20) {
    throw std::invalid_argument(
        "brute-force cover search is capped at 20 candidates");
  }
  const std::vector<Mask> masks = candidate_masks(inc);
  const std::size_t bits = inc.failures.size();
  const Mask full = full_mask(bits);

  CoverCollection out;
  for (std::uint64_t subset = 0; subset < (1ULL << n); ++subset) {
    std::vector<std::uint32_t> members;
    Mask covered(bits);
    for (std::size_t i = 0; i < n; ++i) {
      if (subset & (1ULL << i)) {
        members.push_back(static_cast<std::uint32_t>(i));
        covered.merge(masks[i]);
      }
    }
    if (!(covered == full)) continue;
    if (!is_minimal(members, masks, bits)) continue;
    out.covers.push_back(std::move(members));
  }
  return out;
}

}  // namespace faultloc
