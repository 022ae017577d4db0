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

#ifndef FAULTLOC_MODEL_HPP_
#define FAULTLOC_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace faultloc {

/// The tested system's input factors and their admissible levels. Levels are
/// opaque text labels in I/O; everywhere else they are dense 0-based indices.
/// Immutable after construction.
class FactorSpace {
 public:
  struct Factor {
    std::string name;
    std::vector<std::string> levels;
  };

  /// Validates: at least one factor, at least one level per factor, distinct
  /// factor names, distinct level labels within each factor.
  /// Throws ParseError on violation.
  explicit FactorSpace(std::vector<Factor> factors);

  std::size_t factor_count() const { return factors_.size(); }
  const Factor& factor(std::size_t i) const { return factors_[i]; }
  const std::vector<Factor>& factors() const { return factors_; }

  std::optional<std::uint32_t> factor_index(std::string_view name) const;
  std::optional<std::uint32_t> level_index(std::size_t factor,
                                           std::string_view label) const;

 private:
  std::vector<Factor> factors_;
  std::unordered_map<std::string, std::uint32_t> factor_by_name_;
  std::vector<std::unordered_map<std::string, std::uint32_t>> level_by_label_;
};

/// One (factor index, level index) pair of a combination.
struct FactorLevel {
  std::uint32_t factor = 0;
  std::uint32_t level = 0;

  friend bool operator==(const FactorLevel&, const FactorLevel&) = default;
};

/// A candidate root cause: K distinct factors, each pinned to one level.
/// Entries are kept sorted by factor index, which makes equality and hashing
/// canonical, so Combination works as a set/map key.
class Combination {
 public:
  Combination() = default;

  /// Sorts entries by factor index. Throws std::invalid_argument if two
  /// entries name the same factor or the list is empty.
  explicit Combination(std::vector<FactorLevel> entries);

  const std::vector<FactorLevel>& entries() const { return entries_; }
  std::size_t order() const { return entries_.size(); }

  friend bool operator==(const Combination&, const Combination&) = default;

 private:
  std::vector<FactorLevel> entries_;
};

struct CombinationHash {
  std::size_t operator()(const Combination& c) const noexcept;
};

/// Report order: ascending number of factors (lower order first), then
/// lexicographic factor indices, then lexicographic level indices.
bool canonical_less(const Combination& a, const Combination& b);

/// One test row: a level index per factor.
using Settings = std::vector<std::uint32_t>;

/// True iff every factor pinned by `c` takes exactly c's level in `settings`.
bool contains(const Settings& settings, const Combination& c);

struct TestRow {
  Settings settings;
  bool failed = false;
  /// 1-based data-row number in the source file (header excluded); used in
  /// diagnostics so messages match what the user sees in their editor.
  std::uint32_t source_row = 0;
};

/// A test matrix with pass/fail outcomes. Outcomes are assumed deterministic:
/// two rows with identical settings and different outcomes are rejected, and
/// identical duplicates are collapsed (see collapsed_duplicates()).
class TestSuite {
 public:
  /// Validates row shape and level indices; throws ParseError on conflicting
  /// duplicate rows (the message names both source rows).
  TestSuite(FactorSpace space, std::vector<TestRow> rows);

  const FactorSpace& space() const { return space_; }
  const std::vector<TestRow>& rows() const { return rows_; }
  std::size_t failure_count() const { return failure_count_; }

  /// Number of identical duplicate rows dropped during construction.
  std::size_t collapsed_duplicates() const { return collapsed_; }

 private:
  FactorSpace space_;
  std::vector<TestRow> rows_;
  std::size_t failure_count_ = 0;
  std::size_t collapsed_ = 0;
};

/// Elicited single-factor root-cause probabilities with a default for
/// unmapped (factor, level) pairs. All probabilities must lie strictly
/// inside (0,1): the endpoints break the Bernoulli prior and the
/// inclusion-exclusion arithmetic downstream.
class PriorSpec {
 public:
  explicit PriorSpec(double default_p);

  /// Throws ParseError if p is outside (0,1).
  void set(std::uint32_t factor, std::uint32_t level, double p);

  double single(std::uint32_t factor, std::uint32_t level) const;
  double default_p() const { return default_p_; }
  std::size_t override_count() const { return entries_.size(); }

 private:
  std::unordered_map<std::uint64_t, double> entries_;
  double default_p_;
};

/// A concrete assignment of "is a root cause" to combinations; only the
/// simulator and the brute-force oracle ever materialize one.
struct RootCauseScenario {
  std::vector<Combination> active;
};

/// Product of the single-factor probabilities of c's entries.
double prior_probability(const Combination& c, const PriorSpec& prior);

/// Closed-form count of all combinations of order 1..k_max over the space
/// (sum of elementary symmetric polynomials of the per-factor level counts).
/// Throws std::invalid_argument unless 1 <= k_max <= factor count.
std::uint64_t combination_space_size(const FactorSpace& space,
                                     std::size_t k_max);

/// Lazy stream over every combination of order 1..k_max, each exactly once,
/// in canonical_less order. The space must outlive the stream.
class CombinationStream {
 public:
  /// Throws std::invalid_argument unless 1 <= k_max <= factor count.
  CombinationStream(const FactorSpace& space, std::size_t k_max);

  /// Returns the next combination, or nullopt when exhausted.
  std::optional<Combination> next();

 private:
  bool advance();

  const FactorSpace* space_;
  std::size_t k_max_;
  std::size_t order_;
  std::vector<std::uint32_t> factors_;  // current factor subset, ascending
  std::vector<std::uint32_t> levels_;   // current level odometer
  bool done_ = false;
};

}  // namespace faultloc

#endif  // FAULTLOC_MODEL_HPP_
