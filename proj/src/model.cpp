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

#include "faultloc/model.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "faultloc/errors.hpp"

namespace faultloc {

FactorSpace::FactorSpace(std::vector<Factor> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) {
    throw ParseError("factor space needs at least one factor");
  }
  factor_by_name_.reserve(factors_.size());
  level_by_label_.resize(factors_.size());
  for (std::uint32_t i = 0; i < factors_.size(); ++i) {
    const Factor& f = factors_[i];
    if (f.name.empty()) {
      throw ParseError("factor " + std::to_string(i + 1) + " has no name");
    }
    if (!factor_by_name_.emplace(f.name, i).second) {
      throw ParseError("duplicate factor name \"" + f.name + "\"");
    }
    if (f.levels.empty()) {
      throw ParseError("factor \"" + f.name + "\" has no levels");
    }
    for (std::uint32_t j = 0; j < f.levels.size(); ++j) {
      if (!level_by_label_[i].emplace(f.levels[j], j).second) {
        throw ParseError("factor \"" + f.name + "\" repeats level \"" +
                         f.levels[j] + "\"");
      }
    }
  }
}

std::optional<std::uint32_t> FactorSpace::factor_index(
    std::string_view name) const {
  auto it = factor_by_name_.find(std::string(name));
  if (it == factor_by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> FactorSpace::level_index(
    std::size_t factor, std::string_view label) const {
  const auto& m = level_by_label_[factor];
  auto it = m.find(std::string(label));
  if (it == m.end()) return std::nullopt;
  return it->second;
}

Combination::Combination(std::vector<FactorLevel> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw std::invalid_argument("combination needs at least one factor");
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const FactorLevel& a, const FactorLevel& b) {
              return a.factor < b.factor;
            });
  for (std::size_t k = 1; k < entries_.size(); ++k) {
    if (entries_[k - 1].factor == entries_[k].factor) {
      throw std::invalid_argument(
          "combination pins factor " + std::to_string(entries_[k].factor) +
          " twice");
    }
  }
}

std::size_t CombinationHash::operator()(const Combination& c) const noexcept {
  // FNV-1a over the entry words; entries are canonical, so equal
  // combinations hash equally.
  std::uint64_t h = 1469598103934665603ULL;
  for (const FactorLevel& e : c.entries()) {
    std::uint64_t w =
        (static_cast<std::uint64_t>(e.factor) << 32) | e.level;
    for (int b = 0; b < 8; ++b) {
      h ^= (w >> (8 * b)) & 0xff;
      h *= 1099511628211ULL;
    }
  }
  return static_cast<std::size_t>(h);
}

bool canonical_less(const Combination& a, const Combination& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) {
    if (ea[k].factor != eb[k].factor) return ea[k].factor < eb[k].factor;
  }
  for (std::size_t k = 0; k < ea.size(); ++k) {
    if (ea[k].level != eb[k].level) return ea[k].level < eb[k].level;
  }
  return false;
}

bool contains(const Settings& settings, const Combination& c) {
  for (const FactorLevel& e : c.entries()) {
    if (settings[e.factor] != e.level) return false;
  }
  return true;
}

TestSuite::TestSuite(FactorSpace space, std::vector<TestRow> rows)
    : space_(std::move(space)) {
  const std::size_t width = space_.factor_count();
  // Deterministic outcomes: identical settings must agree; repeats carry no
  // information and are dropped.
  std::map<Settings, std::size_t> first_seen;
  rows_.reserve(rows.size());
  for (TestRow& row : rows) {
    if (row.settings.size() != width) {
      throw ParseError("row " + std::to_string(row.source_row) + ": expected " +
                       std::to_string(width) + " settings, got " +
                       std::to_string(row.settings.size()));
    }
    for (std::size_t i = 0; i < width; ++i) {
      if (row.settings[i] >= space_.factor(i).levels.size()) {
        throw ParseError("row " + std::to_string(row.source_row) +
                         ": level index out of range for factor \"" +
                         space_.factor(i).name + "\"");
      }
    }
    auto [it, inserted] = first_seen.emplace(row.settings, rows_.size());
    if (!inserted) {
      const TestRow& prev = rows_[it->second];
      if (prev.failed != row.failed) {
        throw ParseError(
            "rows " + std::to_string(prev.source_row) + " and " +
            std::to_string(row.source_row) +
            " have identical settings but different outcomes");
      }
      ++collapsed_;
      continue;
    }
    if (row.failed) ++failure_count_;
    rows_.push_back(std::move(row));
  }
}

PriorSpec::PriorSpec(double default_p) : default_p_(default_p) {
  if (!(default_p > 0.0 && default_p < 1.0)) {
    throw ParseError("default prior must lie strictly between 0 and 1");
  }
}

void PriorSpec::set(std::uint32_t factor, std::uint32_t level, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ParseError("prior must lie strictly between 0 and 1");
  }
  entries_[(static_cast<std::uint64_t>(factor) << 32) | level] = p;
}

double PriorSpec::single(std::uint32_t factor, std::uint32_t level) const {
  auto it = entries_.find((static_cast<std::uint64_t>(factor) << 32) | level);
  return it == entries_.end() ? default_p_ : it->second;
}

double prior_probability(const Combination& c, const PriorSpec& prior) {
  double p = 1.0;
  for (const FactorLevel& e : c.entries()) {
    p *= prior.single(e.factor, e.level);
  }
  return p;
}

std::uint64_t combination_space_size(const FactorSpace& space,
                                     std::size_t k_max) {
  const std::size_t n = space.factor_count();
  if (k_max < 1 || k_max > n) {
    throw std::invalid_argument("k_max must lie in [1, factor count]");
  }
  // e[k] accumulates the elementary symmetric polynomial of degree k in the
  // per-factor level counts: the number of order-k combinations.
  std::vector<std::uint64_t> e(k_max + 1, 0);
  e[0] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t j = space.factor(i).levels.size();
    for (std::size_t k = std::min(k_max, i + 1); k >= 1; --k) {
      e[k] += e[k - 1] * j;
    }
  }
  std::uint64_t total = 0;
  for (std::size_t k = 1; k <= k_max; ++k) total += e[k];
  return total;
}

CombinationStream::CombinationStream(const FactorSpace& space,
                                     std::size_t k_max)
    : space_(&space), k_max_(k_max), order_(1) {
  if (k_max < 1 || k_max > space.factor_count()) {
    throw std::invalid_argument("k_max must lie in [1, factor count]");
  }
  factors_ = {0};
  levels_ = {0};
}

std::optional<Combination> CombinationStream::next() {
  if (done_) return std::nullopt;
  std::vector<FactorLevel> entries(order_);
  for (std::size_t k = 0; k < order_; ++k) {
    entries[k] = {factors_[k], levels_[k]};
  }
  done_ = !advance();
  return Combination(std::move(entries));
}

bool CombinationStream::advance() {
  const std::size_t n = space_->factor_count();
  // Innermost: level odometer, rightmost position fastest.
  for (std::size_t k = order_; k-- > 0;) {
    if (levels_[k] + 1 < space_->factor(factors_[k]).levels.size()) {
      ++levels_[k];
      std::fill(levels_.begin() + static_cast<std::ptrdiff_t>(k) + 1,
                levels_.end(), 0);
      return true;
    }
  }
  // Next factor subset of the same order, lexicographic.
  for (std::size_t k = order_; k-- > 0;) {
    if (factors_[k] + 1 <= n - (order_ - k)) {
      ++factors_[k];
      for (std::size_t j = k + 1; j < order_; ++j) {
        factors_[j] = factors_[j - 1] + 1;
      }
      std::fill(levels_.begin(), levels_.end(), 0);
      return true;
    }
  }
  // Next order.
  if (order_ + 1 > k_max_) return false;
  ++order_;
  factors_.resize(order_);
  levels_.assign(order_, 0);
  for (std::uint32_t k = 0; k < order_; ++k) factors_[k] = k;
  return true;
}

}  // namespace faultloc
