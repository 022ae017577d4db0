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

#include "faultloc/report.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "faultloc/classify.hpp"
#include "faultloc/errors.hpp"

namespace faultloc {
namespace {

std::string join_names(const Combination& c, const FactorSpace& space) {
  std::string s;
  for (const FactorLevel& e : c.entries()) {
    if (!s.empty()) s += '|';
    s += space.factor(e.factor).name;
  }
  return s;
}

std::string join_labels(const Combination& c, const FactorSpace& space) {
  std::string s;
  for (const FactorLevel& e : c.entries()) {
    if (!s.empty()) s += '|';
    s += space.factor(e.factor).levels[e.level];
  }
  return s;
}

std::string fixed4(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

/// Row cells for the table and csv writers (which mirror each other).
std::vector<std::vector<std::string>> report_cells(
    const FactorSpace& space, const std::vector<PosteriorEntry>& entries) {
  std::vector<std::vector<std::string>> cells;
  cells.reserve(entries.size() + 1);
  cells.push_back({"rank", "factors", "levels", "category", "prior",
                   "posterior", "approximation", "clamped"});
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const PosteriorEntry& e = entries[i];
    cells.push_back({std::to_string(i + 1), join_names(e.combination, space),
                     join_labels(e.combination, space),
                     to_string(e.category), fixed4(e.prior),
                     fixed4(e.posterior), to_string(e.approximation),
                     e.clamped ? "yes" : "no"});
  }
  return cells;
}

}  // namespace

const char* to_string(Mode m) {
  switch (m) {
    case Mode::kExact:
      return "exact";
    case Mode::kSecondOrder:
      return "second_order";
    case Mode::kAuto:
      return "auto";
  }
  return "?";
}

void write_table(std::ostream& out, const FactorSpace& space,
                 const std::vector<PosteriorEntry>& entries) {
  const auto cells = report_cells(space, entries);
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << "  ";
      out << row[c];
      if (c + 1 < row.size()) {
        out << std::string(width[c] - row[c].size(), ' ');
      }
    }
    out << '\n';
  }
}

void write_csv(std::ostream& out, const FactorSpace& space,
               const std::vector<PosteriorEntry>& entries) {
  for (const auto& row : report_cells(space, entries)) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ',';
      out << row[c];
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const FactorSpace& space,
                const std::vector<PosteriorEntry>& entries,
                const ReportMeta& meta) {
  nlohmann::ordered_json root;
  nlohmann::ordered_json m;
  m["k_max"] = meta.k_max;
  m["mode"] = to_string(meta.mode);
  m["top_n"] = meta.top_n;
  m["include_ut"] = meta.include_ut;
  m["default_prior"] = meta.default_prior;
  m["prior_overrides"] = meta.prior_overrides;
  m["rows"] = meta.rows;
  m["failures"] = meta.failures;
  m["tp_count"] = meta.tp_count;
  m["tf_count"] = meta.tf_count;
  m["cover_limit"] = meta.cover_limit;
  m["prune_epsilon"] = meta.prune_epsilon;
  if (meta.runtime_ms >= 0) m["runtime_ms"] = meta.runtime_ms;
  root["meta"] = std::move(m);

  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const PosteriorEntry& e = entries[i];
    nlohmann::ordered_json item;
    item["rank"] = i + 1;
    nlohmann::ordered_json factors = nlohmann::ordered_json::array();
    nlohmann::ordered_json levels = nlohmann::ordered_json::array();
    for (const FactorLevel& fl : e.combination.entries()) {
      factors.push_back(space.factor(fl.factor).name);
      levels.push_back(space.factor(fl.factor).levels[fl.level]);
    }
    item["factors"] = std::move(factors);
    item["levels"] = std::move(levels);
    item["category"] = to_string(e.category);
    item["prior"] = e.prior;
    item["posterior"] = e.posterior;
    if (e.explained_prob) item["explained_prob"] = *e.explained_prob;
    item["approximation"] = to_string(e.approximation);
    item["clamped"] = e.clamped;
    list.push_back(std::move(item));
  }
  root["entries"] = std::move(list);
  out << root.dump(2) << '\n';
}

int run_analysis(const RunConfig& config, std::ostream& out,
                 std::ostream& err) {
  try {
    if (!(config.default_prior > 0.0 && config.default_prior < 1.0)) {
      err << "error: default prior must lie strictly between 0 and 1\n";
      return kExitUsage;
    }
    if (config.k_max < 1) {
      err << "error: k_max must be at least 1\n";
      return kExitUsage;
    }

    const TestSuite suite = load_suite(config.data_path);
    if (suite.collapsed_duplicates() > 0) {
      err << "warning: collapsed " << suite.collapsed_duplicates()
          << " duplicate row(s) with identical settings and outcome\n";
    }
    const PriorSpec priors =
        config.prior_path.empty()
            ? PriorSpec(config.default_prior)
            : load_priors(config.prior_path, suite.space(),
                          config.default_prior);

    // A request deeper than the factor count cannot be satisfied; cap it so
    // the default depth works on narrow files too.
    const std::size_t k_max =
        std::min(config.k_max, suite.space().factor_count());

    const auto start = std::chrono::steady_clock::now();
    const Partition partition = classify_combinations(suite, k_max);

    RankOptions options;
    options.k_max = k_max;
    options.mode = config.mode;
    options.top_n = config.top_n;
    options.workers = config.workers;
    options.include_ut = config.include_ut;
    options.ut_floor = config.ut_floor;
    options.cover_limit = config.cover_limit;
    options.prune_epsilon = config.prune_epsilon;
    const std::vector<PosteriorEntry> entries =
        rank_root_causes(suite, priors, options);
    const auto elapsed = std::chrono::steady_clock::now() - start;

    if (suite.failure_count() == 0) {
      err << "no failures observed\n";
    }

    ReportMeta meta;
    meta.k_max = k_max;
    meta.mode = config.mode;
    meta.top_n = config.top_n;
    meta.include_ut = config.include_ut;
    meta.default_prior = config.default_prior;
    meta.prior_overrides = priors.override_count();
    meta.rows = suite.rows().size();
    meta.failures = suite.failure_count();
    meta.tp_count = partition.tp_count();
    meta.tf_count = partition.tf().size();
    meta.cover_limit = config.cover_limit;
    meta.prune_epsilon = config.prune_epsilon;
    if (config.timing) {
      meta.runtime_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(elapsed)
              .count();
    }

    switch (config.output_format) {
      case OutputFormat::kTable:
        write_table(out, suite.space(), entries);
        break;
      case OutputFormat::kJson:
        write_json(out, suite.space(), entries, meta);
        break;
      case OutputFormat::kCsv:
        write_csv(out, suite.space(), entries);
        break;
    }
    if (config.timing && config.output_format != OutputFormat::kJson) {
      err << "runtime_ms: " << meta.runtime_ms << '\n';
    }
    return kExitOk;
  } catch (const InconsistentData& e) {
    err << "error: " << e.what() << '\n';
    return kExitInconsistent;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace faultloc
