// Copyright 2026 The isdkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "isdkit/preprocess.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "isdkit/cox.h"
#include "isdkit/errors.h"

namespace isdkit {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct NamedColumn {
  std::string name;
  std::vector<double> values;  // NaN = missing
};

bool contains(const std::vector<std::string>& names, const std::string& n) {
  return std::find(names.begin(), names.end(), n) != names.end();
}

const RawColumn& find_column(const RawDataset& d, const std::string& name) {
  for (const RawColumn& c : d.columns) {
    if (c.name == name) return c;
  }
  throw Error("column '" + name + "' is missing from the data");
}

std::string indicator_name(const std::string& source,
                           const std::string& level) {
  return source + "=" + level;
}

// The post-encoding candidate columns of `d` under the drop and encoding
// decisions recorded in `report`; `wanted`, when given, limits the output.
std::vector<NamedColumn> encode(const PreprocessReport& report,
                                const RawDataset& d,
                                const std::vector<std::string>* wanted) {
  std::map<std::string, const OneHotExpansion*> expansions;
  for (const OneHotExpansion& e : report.encoded) expansions[e.source] = &e;
  const auto keep = [&](const std::string& name) {
    return wanted == nullptr || contains(*wanted, name);
  };

  std::vector<NamedColumn> out;
  for (const std::string& name : report.candidates) {
    if (!keep(name)) continue;
    // Plain numeric column, or one level of an encoded nominal column.
    const auto eq = name.find('=');
    const auto exp_it = eq == std::string::npos
                            ? expansions.end()
                            : expansions.find(name.substr(0, eq));
    if (exp_it == expansions.end()) {
      const RawColumn& c = find_column(d, name);
      if (c.kind != ColumnKind::kNumeric) {
        throw Error("column '" + name + "' was numeric in training data");
      }
      out.push_back({name, c.numbers});
      continue;
    }
    const RawColumn& c = find_column(d, exp_it->first);
    const std::string level = name.substr(eq + 1);
    NamedColumn col{name, std::vector<double>(d.size(), 0.0)};
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (c.is_missing(i)) {
        col.values[i] = kNaN;
        continue;
      }
      const std::string value = c.kind == ColumnKind::kNominal
                                    ? c.labels[i]
                                    : format_double(c.numbers[i]);
      col.values[i] = value == level ? 1.0 : 0.0;
    }
    out.push_back(std::move(col));
  }
  return out;
}

SurvivalDataset assemble(const PreprocessReport& report,
                         const std::vector<NamedColumn>& cols,
                         const std::vector<Outcome>& outcomes) {
  const std::size_t n = outcomes.size();
  std::vector<Instance> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].time = outcomes[i].time;
    rows[i].event = outcomes[i].event;
    rows[i].features.resize(cols.size());
  }
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      double v = cols[j].values[i];
      if (std::isnan(v)) v = report.imputation_means[j];
      rows[i].features[j] = (v - report.means[j]) / report.sds[j];
    }
  }
  return SurvivalDataset(report.selected, std::move(rows));
}

}  // namespace

PreprocessResult preprocess(const RawDataset& train,
                            const RawDataset& validate,
                            const PreprocessOptions& options) {
  if (train.size() == 0) throw Error("training data is empty");
  PreprocessReport report;

  // 1. Drop sparse and single-valued columns.
  for (const RawColumn& c : train.columns) {
    if (c.missing_fraction() > options.max_missing_fraction) {
      report.dropped_missing.push_back(c.name);
    } else if (c.distinct_count() <= 1) {
      report.dropped_single_valued.push_back(c.name);
    } else if (c.kind == ColumnKind::kNominal) {
      // 2. One-hot with the training levels.
      std::set<std::string> levels(c.labels.begin(), c.labels.end());
      levels.erase("");
      OneHotExpansion e{c.name, {levels.begin(), levels.end()}};
      for (const std::string& level : e.levels) {
        report.candidates.push_back(indicator_name(c.name, level));
      }
      report.encoded.push_back(std::move(e));
    } else {
      report.candidates.push_back(c.name);
    }
  }

  // 3. Univariate Cox filter on each candidate.
  const std::vector<NamedColumn> cols = encode(report, train, nullptr);
  for (const NamedColumn& c : cols) {
    const double p = univariate_cox_pvalue(c.values, train.outcomes);
    report.candidate_pvalues.push_back(p);
    if (p <= options.p_cut) report.selected.push_back(c.name);
  }
  // A nominal feature whose every level passed would be exactly collinear;
  // its last level becomes the reference.
  for (const OneHotExpansion& e : report.encoded) {
    const bool all = std::all_of(
        e.levels.begin(), e.levels.end(), [&](const std::string& level) {
          return contains(report.selected, indicator_name(e.source, level));
        });
    if (all) {
      std::erase(report.selected, indicator_name(e.source, e.levels.back()));
    }
  }
  if (report.selected.empty()) {
    throw Error("no feature passed the univariate Cox filter (p <= " +
                format_double(options.p_cut) + "); try a larger p_cut");
  }

  // 4-5. Mean imputation and standardization, train statistics only.
  const std::vector<NamedColumn> kept =
      encode(report, train, &report.selected);
  for (const NamedColumn& c : kept) {
    double sum = 0.0;
    std::size_t count = 0;
    for (double v : c.values) {
      if (std::isnan(v)) continue;
      sum += v;
      ++count;
    }
    const double mean = count == 0 ? 0.0 : sum / static_cast<double>(count);
    double ss = 0.0;
    for (double v : c.values) {
      const double x = std::isnan(v) ? mean : v;
      ss += (x - mean) * (x - mean);
    }
    const std::size_t n = c.values.size();
    const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    report.imputation_means.push_back(mean);
    report.means.push_back(mean);
    report.sds.push_back(sd > 0.0 ? sd : 1.0);
  }

  PreprocessResult out;
  out.train = assemble(report, kept, train.outcomes);
  out.validate = apply_preprocessing(report, validate);
  out.report = std::move(report);
  return out;
}

SurvivalDataset apply_preprocessing(const PreprocessReport& report,
                                    const RawDataset& d) {
  return assemble(report, encode(report, d, &report.selected), d.outcomes);
}

}  // namespace isdkit
