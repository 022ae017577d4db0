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

#include "faultloc/design.hpp"

#include <algorithm>
#include <stdexcept>

namespace faultloc {

CoverageReport verify_coverage_strength(const std::vector<Settings>& rows,
                                        const FactorSpace& space,
                                        std::size_t s) {
  const std::size_t n = space.factor_count();
  if (s < 1 || s > n) {
    throw std::invalid_argument("strength must lie in [1, factor count]");
  }
  for (const Settings& row : rows) {
    if (row.size() != n) {
      throw std::invalid_argument("row width does not match the factor space");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (row[i] >= space.factor(i).levels.size()) {
        throw std::invalid_argument("level index out of range in row");
      }
    }
  }

  CoverageReport report;
  report.strength_checked = s;

  // Column subsets in lexicographic order.
  std::vector<std::uint32_t> cols(s);
  for (std::size_t k = 0; k < s; ++k) cols[k] = static_cast<std::uint32_t>(k);
  while (true) {
    // Mark the level tuples this column subset realizes, then report the
    // holes in odometer order.
    std::vector<std::size_t> radix(s);
    std::size_t tuples = 1;
    for (std::size_t k = 0; k < s; ++k) {
      radix[k] = space.factor(cols[k]).levels.size();
      tuples *= radix[k];
    }
    std::vector<bool> seen(tuples, false);
    for (const Settings& row : rows) {
      std::size_t code = 0;
      for (std::size_t k = 0; k < s; ++k) {
        code = code * radix[k] + row[cols[k]];
      }
      seen[code] = true;
    }
    for (std::size_t code = 0; code < tuples; ++code) {
      if (seen[code]) continue;
      std::vector<std::uint32_t> levels(s);
      std::size_t rest = code;
      for (std::size_t k = s; k-- > 0;) {
        levels[k] = static_cast<std::uint32_t>(rest % radix[k]);
        rest /= radix[k];
      }
      report.missing.emplace_back(cols, std::move(levels));
    }

    // Advance the column subset.
    std::size_t k = s;
    while (k-- > 0) {
      if (cols[k] + 1 <= n - (s - k)) {
        ++cols[k];
        for (std::size_t j = k + 1; j < s; ++j) cols[j] = cols[j - 1] + 1;
        break;
      }
      if (k == 0) {
        report.satisfied = report.missing.empty();
        return report;
      }
    }
  }
}

std::vector<bool> simulate_outcomes(const std::vector<Settings>& rows,
                                    const RootCauseScenario& truth) {
  std::vector<bool> outcomes(rows.size(), false);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const Combination& c : truth.active) {
      if (contains(rows[r], c)) {
        outcomes[r] = true;
        break;
      }
    }
  }
  return outcomes;
}

}  // namespace faultloc
