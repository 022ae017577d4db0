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

#include "faultloc/suite_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "faultloc/errors.hpp"

namespace faultloc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r' || s.front() == '\n')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_cells(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.emplace_back(trim(line.substr(start)));
      return cells;
    }
    cells.emplace_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

/// Raw comma-delimited content: one header, then non-empty data lines.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

RawTable read_table(std::istream& in, std::string_view source_name) {
  RawTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    std::string_view view = line;
    // Byte-order mark from UTF-8 editors.
    if (!have_header && view.starts_with("\xEF\xBB\xBF")) {
      view.remove_prefix(3);
    }
    if (trim(view).empty()) continue;
    if (!have_header) {
      table.header = split_cells(view);
      have_header = true;
    } else {
      table.rows.push_back(split_cells(view));
    }
  }
  if (!have_header) {
    throw ParseError(std::string(source_name) + ": no header row");
  }
  return table;
}

/// Interns level labels per column in first-appearance order and converts
/// rows to dense indices.
struct LevelInterner {
  explicit LevelInterner(std::size_t columns)
      : labels(columns), index(columns) {}

  std::uint32_t intern(std::size_t column, const std::string& label) {
    auto [it, inserted] =
        index[column].emplace(label, static_cast<std::uint32_t>(
                                         labels[column].size()));
    if (inserted) labels[column].push_back(label);
    return it->second;
  }

  std::vector<std::vector<std::string>> labels;
  std::vector<std::unordered_map<std::string, std::uint32_t>> index;
};

FactorSpace make_space(const std::vector<std::string>& names,
                       LevelInterner&& interner,
                       std::string_view source_name) {
  std::vector<FactorSpace::Factor> factors(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].find('.') != std::string::npos) {
      throw ParseError(std::string(source_name) + ": factor name \"" +
                       names[i] +
                       "\" contains '.', which is reserved as the prior-file "
                       "key separator");
    }
    factors[i] = {names[i], std::move(interner.labels[i])};
  }
  return FactorSpace(std::move(factors));
}

bool parse_outcome(const std::string& cell, std::string_view source_name,
                   std::size_t data_row) {
  if (cell == "0") return false;
  if (cell == "1") return true;
  throw ParseError(std::string(source_name) + ": row " +
                   std::to_string(data_row) + ": outcome must be 0 or 1, got \"" +
                   cell + "\"");
}

double parse_probability(std::string_view text, std::string_view source_name,
                         std::size_t line_no) {
  const std::string_view t = trim(text);
  double value = 0.0;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(std::string(source_name) + ":" + std::to_string(line_no) +
                     ": cannot parse probability \"" + std::string(t) + "\"");
  }
  if (!(value > 0.0 && value < 1.0)) {
    throw ParseError(std::string(source_name) + ":" + std::to_string(line_no) +
                     ": probability must lie strictly between 0 and 1, got " +
                     std::string(t));
  }
  return value;
}

}  // namespace

TestSuite load_suite(std::istream& in, std::string_view source_name) {
  RawTable table = read_table(in, source_name);
  if (table.header.size() < 2 || table.header.back() != "outcome") {
    throw ParseError(std::string(source_name) +
                     ": header must end with the reserved column \"outcome\"");
  }
  const std::size_t width = table.header.size() - 1;
  std::vector<std::string> names(table.header.begin(),
                                 table.header.end() - 1);

  LevelInterner interner(width);
  std::vector<TestRow> rows;
  rows.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& cells = table.rows[r];
    if (cells.size() != width + 1) {
      throw ParseError(std::string(source_name) + ": row " +
                       std::to_string(r + 1) + ": expected " +
                       std::to_string(width + 1) + " cells, got " +
                       std::to_string(cells.size()));
    }
    TestRow row;
    row.source_row = static_cast<std::uint32_t>(r + 1);
    row.failed = parse_outcome(cells.back(), source_name, r + 1);
    row.settings.resize(width);
    for (std::size_t i = 0; i < width; ++i) {
      row.settings[i] = interner.intern(i, cells[i]);
    }
    rows.push_back(std::move(row));
  }
  FactorSpace space = make_space(names, std::move(interner), source_name);
  return TestSuite(std::move(space), std::move(rows));
}

TestSuite load_suite(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path.string());
  }
  return load_suite(in, path.string());
}

Matrix load_matrix(std::istream& in, std::string_view source_name) {
  RawTable table = read_table(in, source_name);
  if (table.header.empty()) {
    throw ParseError(std::string(source_name) + ": empty header");
  }
  const bool has_outcome = table.header.back() == "outcome";
  const std::size_t width = table.header.size() - (has_outcome ? 1 : 0);
  if (width == 0) {
    throw ParseError(std::string(source_name) + ": no factor columns");
  }
  std::vector<std::string> names(table.header.begin(),
                                 table.header.begin() + width);

  LevelInterner interner(width);
  std::vector<Settings> rows;
  std::vector<bool> outcomes;
  rows.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& cells = table.rows[r];
    if (cells.size() != table.header.size()) {
      throw ParseError(std::string(source_name) + ": row " +
                       std::to_string(r + 1) + ": expected " +
                       std::to_string(table.header.size()) + " cells, got " +
                       std::to_string(cells.size()));
    }
    if (has_outcome) {
      outcomes.push_back(parse_outcome(cells.back(), source_name, r + 1));
    }
    Settings settings(width);
    for (std::size_t i = 0; i < width; ++i) {
      settings[i] = interner.intern(i, cells[i]);
    }
    rows.push_back(std::move(settings));
  }
  Matrix m{make_space(names, std::move(interner), source_name),
           std::move(rows), std::nullopt};
  if (has_outcome) m.outcomes = std::move(outcomes);
  return m;
}

Matrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path.string());
  }
  return load_matrix(in, path.string());
}

PriorSpec load_priors(std::istream& in, std::string_view source_name,
                      const FactorSpace& space, double default_p) {
  std::optional<double> star_star;
  std::vector<std::optional<double>> factor_star(space.factor_count());
  struct ExactEntry {
    std::uint32_t factor;
    std::uint32_t level;
    double p;
  };
  std::vector<ExactEntry> exact;
  std::unordered_map<std::uint64_t, std::size_t> exact_pos;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) {
      view.remove_prefix(3);
    }
    if (std::size_t hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;

    const std::size_t eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(std::string(source_name) + ":" +
                       std::to_string(line_no) +
                       ": expected \"key = value\"");
    }
    const std::string_view key = trim(view.substr(0, eq));
    const double p = parse_probability(view.substr(eq + 1), source_name,
                                       line_no);

    const std::size_t dot = key.find('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 == key.size()) {
      throw ParseError(std::string(source_name) + ":" +
                       std::to_string(line_no) + ": key \"" +
                       std::string(key) +
                       "\" must look like factor.level, factor.*, or *.*");
    }
    const std::string_view factor_key = key.substr(0, dot);
    const std::string_view level_key = key.substr(dot + 1);

    if (factor_key == "*") {
      if (level_key != "*") {
        throw ParseError(std::string(source_name) + ":" +
                         std::to_string(line_no) +
                         ": \"*.level\" is not a valid key; use \"*.*\"");
      }
      star_star = p;  // last occurrence wins within its layer
      continue;
    }
    const auto f = space.factor_index(factor_key);
    if (!f) {
      throw ParseError(std::string(source_name) + ":" +
                       std::to_string(line_no) + ": unknown factor \"" +
                       std::string(factor_key) + "\"");
    }
    if (level_key == "*") {
      factor_star[*f] = p;
      continue;
    }
    const auto l = space.level_index(*f, level_key);
    if (!l) {
      throw ParseError(std::string(source_name) + ":" +
                       std::to_string(line_no) + ": factor \"" +
                       std::string(factor_key) + "\" has no level \"" +
                       std::string(level_key) + "\"");
    }
    const std::uint64_t id = (static_cast<std::uint64_t>(*f) << 32) | *l;
    if (auto it = exact_pos.find(id); it != exact_pos.end()) {
      exact[it->second].p = p;
    } else {
      exact_pos.emplace(id, exact.size());
      exact.push_back({*f, *l, p});
    }
  }

  // Specific keys beat factor wildcards beat "*.*": apply broad to narrow so
  // narrower layers overwrite, independent of file order.
  PriorSpec prior(star_star.value_or(default_p));
  for (std::uint32_t f = 0; f < factor_star.size(); ++f) {
    if (!factor_star[f]) continue;
    for (std::uint32_t l = 0; l < space.factor(f).levels.size(); ++l) {
      prior.set(f, l, *factor_star[f]);
    }
  }
  for (const ExactEntry& e : exact) {
    prior.set(e.factor, e.level, e.p);
  }
  return prior;
}

PriorSpec load_priors(const std::filesystem::path& path,
                      const FactorSpace& space, double default_p) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path.string());
  }
  return load_priors(in, path.string(), space, default_p);
}

Combination parse_combination(std::string_view text,
                              const FactorSpace& space) {
  std::vector<FactorLevel> entries;
  std::size_t start = 0;
  const std::string all(text);
  while (start <= all.size()) {
    std::size_t comma = all.find(',', start);
    if (comma == std::string::npos) comma = all.size();
    const std::string_view part =
        trim(std::string_view(all).substr(start, comma - start));
    start = comma + 1;
    if (part.empty()) {
      throw ParseError("empty assignment in combination \"" + all + "\"");
    }
    const std::size_t eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected Factor=level in \"" + std::string(part) +
                       "\"");
    }
    const std::string_view fname = trim(part.substr(0, eq));
    const std::string_view label = trim(part.substr(eq + 1));
    const auto f = space.factor_index(fname);
    if (!f) {
      throw ParseError("unknown factor \"" + std::string(fname) + "\"");
    }
    const auto l = space.level_index(*f, label);
    if (!l) {
      throw ParseError("factor \"" + std::string(fname) +
                       "\" has no level \"" + std::string(label) + "\"");
    }
    entries.push_back({*f, *l});
    if (comma == all.size()) break;
  }
  try {
    return Combination(std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError("invalid combination \"" + all + "\": " + e.what());
  }
}

RootCauseScenario load_truth(std::istream& in, std::string_view source_name,
                             const FactorSpace& space) {
  RootCauseScenario truth;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) {
      view.remove_prefix(3);
    }
    if (std::size_t hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    try {
      truth.active.push_back(parse_combination(view, space));
    } catch (const ParseError& e) {
      throw ParseError(std::string(source_name) + ":" +
                       std::to_string(line_no) + ": " + e.what());
    }
  }
  return truth;
}

RootCauseScenario load_truth(const std::filesystem::path& path,
                             const FactorSpace& space) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path.string());
  }
  return load_truth(in, path.string(), space);
}

void write_suite(std::ostream& out, const FactorSpace& space,
                 const std::vector<Settings>& rows,
                 const std::vector<bool>& outcomes) {
  for (std::size_t i = 0; i < space.factor_count(); ++i) {
    out << space.factor(i).name << ',';
  }
  out << "outcome\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < space.factor_count(); ++i) {
      out << space.factor(i).levels[rows[r][i]] << ',';
    }
    out << (outcomes[r] ? '1' : '0') << '\n';
  }
}

}  // namespace faultloc
