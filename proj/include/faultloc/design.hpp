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

#ifndef FAULTLOC_DESIGN_HPP_
#define FAULTLOC_DESIGN_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "faultloc/model.hpp"

namespace faultloc {

/// Result of a strength-s coverage check.
struct CoverageReport {
  std::size_t strength_checked = 0;
  /// Uncovered s-tuples: (ascending column indices, level indices per
  /// column), in deterministic order (columns lexicographic, then levels).
  std::vector<std::pair<std::vector<std::uint32_t>,
                        std::vector<std::uint32_t>>>
      missing;
  bool satisfied = false;  // <=> missing.empty()
};

/// Exhaustively checks whether every level tuple over every choice of s
/// columns appears in some row. Exact, no sampling; column subsets are
/// walked lazily. Throws std::invalid_argument unless 1 <= s <= factor
/// count, or if a row has the wrong shape.
CoverageReport verify_coverage_strength(const std::vector<Settings>& rows,
                                        const FactorSpace& space,
                                        std::size_t s);

/// Deterministic outcome simulator: row m fails iff some combination in
/// truth.active is contained in it.
std::vector<bool> simulate_outcomes(const std::vector<Settings>& rows,
                                    const RootCauseScenario& truth);

}  // namespace faultloc

#endif  // FAULTLOC_DESIGN_HPP_
