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

#ifndef FAULTLOC_COVERS_HPP_
#define FAULTLOC_COVERS_HPP_

#include <cstdint>
#include <vector>

#include "faultloc/classify.hpp"
#include "faultloc/model.hpp"

namespace faultloc {

/// Bipartite incidence between the candidate combinations relevant to one
/// target and the failed rows the target appears in. Candidate order is
/// canonical and therefore deterministic.
struct Incidence {
  /// Every TF combination sharing at least one failure with the target,
  /// in canonical_less order. Always includes the target itself.
  std::vector<Combination> candidates;
  /// The target's failure rows, ascending.
  std::vector<std::uint32_t> failures;
  /// Per candidate: positions into `failures` it covers, ascending.
  /// Non-empty for every candidate by construction.
  std::vector<std::vector<std::uint32_t>> covers_failure;
};

/// Builds the incidence for a TF target. Throws std::invalid_argument if the
/// target is not TF.
Incidence build_incidence(const Partition& partition,
                          const Combination& target);

/// All minimal covers found, each a sorted list of candidate positions.
/// `complete` is true iff the search exhausted the instance; false means the
/// limit was hit and callers must treat the collection as a lower bound.
struct CoverCollection {
  std::vector<std::vector<std::uint32_t>> covers;
  bool complete = true;
};

/// Cap on enumerated covers; hitting it flips complete=false and pushes the
/// posterior stage onto its conservative (truncated) path.
inline constexpr std::uint64_t kDefaultCoverLimit = 1'000'000;

/// Exhaustively enumerates every minimal cover of the incidence's failures:
/// member sets that jointly cover all failures and lose coverage when any
/// single member is removed. Depth-first over candidates ordered by
/// descending coverage degree; branches that cannot cover the remaining
/// failures are pruned; each candidate subset is visited at most once, so
/// the output holds no duplicates. Deterministic for fixed input.
/// Throws std::invalid_argument if limit == 0.
CoverCollection enumerate_minimal_covers(const Incidence& inc,
                                         std::uint64_t limit =
                                             kDefaultCoverLimit);

/// Test oracle: scans all 2^n candidate subsets, keeps those covering every
/// failure whose members are all necessary. Throws std::invalid_argument if
/// the incidence has more than 20 candidates.
CoverCollection brute_force_minimal_covers(const Incidence& inc);

}  // namespace faultloc

#endif  // FAULTLOC_COVERS_HPP_
