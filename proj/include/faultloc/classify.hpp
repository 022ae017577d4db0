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

#ifndef FAULTLOC_CLASSIFY_HPP_
#define FAULTLOC_CLASSIFY_HPP_

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "faultloc/model.hpp"

namespace faultloc {

/// Evidence category of a combination.
///  - TP: contained in at least one passed row; cleared as a root cause.
///  - TF: contained in some failed row and in no passed row; a candidate.
///  - UT: contained in no row at all; untouched by the data.
enum class Category { kTP, kTF, kUT };

const char* to_string(Category c);

/// The TP/TF split of all combinations up to order k_max, plus each TF
/// combination's failure-index set (which failed rows contain it). The UT
/// set is astronomically large and is never materialized: a combination of
/// order <= k_max is UT iff it is in neither tp nor tf.
class Partition {
 public:
  std::size_t k_max() const { return k_max_; }

  bool is_tp(const Combination& c) const { return tp_.contains(c); }
  bool is_tf(const Combination& c) const {
    return tf_failure_index_.contains(c);
  }
  std::size_t tp_count() const { return tp_.size(); }

  /// All TF combinations in canonical_less order.
  const std::vector<Combination>& tf() const { return tf_sorted_; }

  /// Failed-row indices (positions into the suite's rows) containing c.
  /// Sorted ascending and non-empty for every TF combination.
  const std::vector<std::uint32_t>& failure_rows(const Combination& c) const;

  /// All failed-row indices, ascending.
  const std::vector<std::uint32_t>& failed_rows() const {
    return failed_rows_;
  }

  /// Candidate root causes of one failed row: the row's contained
  /// combinations up to order k_max minus TP, in canonical_less order.
  const std::vector<Combination>& candidates_of_failure(
      std::uint32_t row) const;

 private:
  friend Partition classify_combinations(const TestSuite& suite,
                                         std::size_t k_max);

  std::size_t k_max_ = 0;
  std::unordered_set<Combination, CombinationHash> tp_;
  std::unordered_map<Combination, std::vector<std::uint32_t>, CombinationHash>
      tf_failure_index_;
  std::vector<Combination> tf_sorted_;
  std::vector<std::uint32_t> failed_rows_;
  std::unordered_map<std::uint32_t, std::vector<Combination>>
      per_failure_candidates_;
};

/// Splits the candidate space: TP is the union over passed rows of their
/// contained combinations, TF is the union over failed rows minus TP.
/// Throws InconsistentData if some failed row has an empty candidate set
/// (every contained combination up to k_max is cleared by passed rows).
Partition classify_combinations(const TestSuite& suite, std::size_t k_max);

/// Category lookup. Throws std::invalid_argument if order(c) > k_max
/// (outside the considered space).
Category category_of(const Combination& c, const Partition& partition);

}  // namespace faultloc

#endif  // FAULTLOC_CLASSIFY_HPP_
