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

#include "faultloc/classify.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "faultloc/errors.hpp"

namespace faultloc {
namespace {

/// Calls `fn` with every combination of order 1..k_max contained in the row.
template <typename Fn>
void for_each_contained(const Settings& settings, std::size_t k_max, Fn&& fn) {
  const std::size_t n = settings.size();
  const std::size_t k_cap = std::min(k_max, n);
  std::vector<std::uint32_t> pick;
  pick.reserve(k_cap);
  // Depth-first over factor subsets; emit at every depth so each prefix of
  // the recursion yields its own combination.
  auto rec = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t i = start; i < n; ++i) {
      pick.push_back(static_cast<std::uint32_t>(i));
      std::vector<FactorLevel> entries(pick.size());
      for (std::size_t k = 0; k < pick.size(); ++k) {
        entries[k] = {pick[k], settings[pick[k]]};
      }
      fn(Combination(std::move(entries)));
      if (pick.size() < k_cap) self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

const char* to_string(Category c) {
  switch (c) {
    case Category::kTP:
      return "TP";
    case Category::kTF:
      return "TF";
    case Category::kUT:
      return "UT";
  }
  return "?";
}

const std::vector<std::uint32_t>& Partition::failure_rows(
    const Combination& c) const {
  auto it = tf_failure_index_.find(c);
  if (it == tf_failure_index_.end()) {
    throw std::invalid_argument("combination is not in the TF set");
  }
  return it->second;
}

const std::vector<Combination>& Partition::candidates_of_failure(
    std::uint32_t row) const {
  auto it = per_failure_candidates_.find(row);
  if (it == per_failure_candidates_.end()) {
    throw std::invalid_argument("row " + std::to_string(row) +
                                " is not a failed row");
  }
  return it->second;
}

Partition classify_combinations(const TestSuite& suite, std::size_t k_max) {
  if (k_max < 1 || k_max > suite.space().factor_count()) {
    throw std::invalid_argument("k_max must lie in [1, factor count]");
  }
  Partition part;
  part.k_max_ = k_max;

  // Pass 1: everything contained in a passed row is cleared.
  for (const TestRow& row : suite.rows()) {
    if (row.failed) continue;
    for_each_contained(row.settings, k_max, [&](Combination c) {
      part.tp_.insert(std::move(c));
    });
  }

  // Pass 2: what remains in failed rows is suspect; remember which failed
  // rows contain each survivor.
  for (std::uint32_t r = 0; r < suite.rows().size(); ++r) {
    const TestRow& row = suite.rows()[r];
    if (!row.failed) continue;
    part.failed_rows_.push_back(r);
    std::vector<Combination>& cands = part.per_failure_candidates_[r];
    for_each_contained(row.settings, k_max, [&](Combination c) {
      if (part.tp_.contains(c)) return;
      part.tf_failure_index_[c].push_back(r);
      cands.push_back(std::move(c));
    });
    if (cands.empty()) {
      throw InconsistentData(
          "failed row " + std::to_string(row.source_row) +
          " has no candidate root cause at this order (every contained "
          "combination up to order " +
          std::to_string(k_max) +
          " also appears in a passed row); raise k_max or re-check outcomes");
    }
    std::sort(cands.begin(), cands.end(), canonical_less);
  }

  part.tf_sorted_.reserve(part.tf_failure_index_.size());
  for (const auto& [c, rows] : part.tf_failure_index_) {
    part.tf_sorted_.push_back(c);
  }
  std::sort(part.tf_sorted_.begin(), part.tf_sorted_.end(), canonical_less);
  return part;
}

Category category_of(const Combination& c, const Partition& partition) {
  if (c.order() > partition.k_max()) {
    throw std::invalid_argument(
        "combination order exceeds the partition's k_max");
  }
  if (partition.is_tp(c)) return Category::kTP;
  if (partition.is_tf(c)) return Category::kTF;
  return Category::kUT;
}

}  // namespace faultloc
