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

#include "report.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cli.h"
#include "isdkit/csv.h"
#include "isdkit/errors.h"

namespace isdkit::cli {
namespace {

namespace fs = std::filesystem;

constexpr std::size_t kCurveSamples = 3;

struct Summary {
  double mean = std::nan("");
  double sd = std::nan("");
};

struct Run {
  fs::path dir;
  std::string dataset;
  std::string model;
  std::vector<std::pair<std::string, Summary>> metrics;  // file order
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table read_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw Error(path.string() + " is empty");
  t.header = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != t.header.size()) {
      throw ParseError(path.string() + ": row has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

double to_number(const std::string& s) {
  if (s.empty()) return std::nan("");
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + s + "'");
  }
}

Run load_run(const fs::path& dir) {
  const fs::path metrics = dir / "metrics.csv";
  if (!fs::exists(metrics)) {
    throw Error("no metrics.csv in " + dir.string());
  }
  const Table t = read_table(metrics);
  const std::vector<std::string> expected = {"dataset", "model", "fold",
                                             "metric", "value"};
  if (t.header != expected) {
    throw ParseError(metrics.string() + ": unexpected header");
  }
  if (t.rows.empty()) throw Error(metrics.string() + " has no rows");
  Run r;
  r.dir = dir;
  r.dataset = t.rows.front()[0];
  r.model = t.rows.front()[1];
  for (const auto& row : t.rows) {
    const std::string& fold = row[2];
    if (fold != "mean" && fold != "sd") continue;
    auto it = std::find_if(r.metrics.begin(), r.metrics.end(),
                           [&](const auto& m) { return m.first == row[3]; });
    if (it == r.metrics.end()) {
      r.metrics.push_back({row[3], Summary{}});
      it = std::prev(r.metrics.end());
    }
    (fold == "mean" ? it->second.mean : it->second.sd) = to_number(row[4]);
  }
  return r;
}

bool higher_is_better(const std::string& metric) {
  return metric == "concordance";
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::string prefix(const Run& r) {
  return csv_escape(r.dataset) + "," + csv_escape(r.model) + ",";
}

void copy_rows(const Run& r, const fs::path& file, std::ostream& out) {
  if (!fs::exists(file)) return;
  const Table t = read_table(file);
  for (const auto& row : t.rows) {
    out << prefix(r);
    for (std::size_t k = 0; k < row.size(); ++k) {
      out << (k ? "," : "") << csv_escape(row[k]);
    }
    out << '\n';
  }
}

void write_curve_samples(const Run& r, std::ostream& out) {
  const fs::path file = r.dir / "curves" / "fold_1.csv";
  if (!fs::exists(file)) return;
  const Table t = read_table(file);
  std::set<std::string> kept;
  for (const auto& row : t.rows) {
    if (!kept.contains(row[0])) {
      if (kept.size() == kCurveSamples) continue;
      kept.insert(row[0]);
    }
    out << prefix(r) << row[0] << ',' << row[1] << ',' << row[2] << '\n';
  }
}

}  // namespace

int run_report(const ReportOptions& opts, std::ostream& out) {
  std::vector<Run> runs;
  std::set<std::pair<std::string, std::string>> seen;
  for (const std::string& path : opts.runs) {
    Run r = load_run(path);
    if (!seen.insert({r.dataset, r.model}).second) {
      throw Error("two runs hold " + r.model + " on " + r.dataset);
    }
    runs.push_back(std::move(r));
  }

  const fs::path dir = opts.out;
  for (const char* f : {"comparison.csv", "calibration.csv",
                        "dcal_histograms.csv", "curve_samples.csv"}) {
    if (fs::exists(dir / f) && !opts.force) {
      throw UsageError("refusing to overwrite " + (dir / f).string() +
                       " (pass --force)");
    }
  }
  fs::create_directories(dir);

  // dataset -> metric -> (run index, summary), in first-seen order.
  std::vector<std::string> datasets;
  std::map<std::string, std::vector<std::string>> metric_order;
  std::map<std::pair<std::string, std::string>,
           std::vector<std::pair<std::size_t, Summary>>>
      cells;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const Run& r = runs[i];
    if (std::find(datasets.begin(), datasets.end(), r.dataset) ==
        datasets.end()) {
      datasets.push_back(r.dataset);
    }
    auto& order = metric_order[r.dataset];
    for (const auto& [metric, s] : r.metrics) {
      if (std::find(order.begin(), order.end(), metric) == order.end()) {
        order.push_back(metric);
      }
      cells[{r.dataset, metric}].push_back({i, s});
    }
  }

  std::ofstream cmp = open_out(dir / "comparison.csv");
  cmp << "dataset,metric,model,mean,sd,best\n";
  for (const std::string& ds : datasets) {
    out << ds << '\n';
    for (const std::string& metric : metric_order[ds]) {
      const auto& entries = cells[{ds, metric}];
      double best = std::nan("");
      for (const auto& [i, s] : entries) {
        if (!std::isfinite(s.mean)) continue;
        if (!std::isfinite(best) ||
            (higher_is_better(metric) ? s.mean > best : s.mean < best)) {
          best = s.mean;
        }
      }
      out << "  " << metric << '\n';
      for (const auto& [i, s] : entries) {
        const bool is_best = std::isfinite(best) && s.mean == best;
        cmp << csv_escape(ds) << ',' << csv_escape(metric) << ','
            << csv_escape(runs[i].model) << ',' << format_double(s.mean) << ','
            << format_double(s.sd) << ',' << (is_best ? 1 : 0) << '\n';
        out << "    " << (is_best ? '*' : ' ') << ' ' << runs[i].model << ": "
            << format_double(s.mean) << " +- " << format_double(s.sd) << '\n';
      }
    }
  }

  std::ofstream cal = open_out(dir / "calibration.csv");
  cal << "dataset,model,test,percentile,tstar,statistic,dof,p_value,error\n";
  std::ofstream dcal = open_out(dir / "dcal_histograms.csv");
  dcal << "dataset,model,bin,lower,upper,count,fraction\n";
  std::ofstream curves = open_out(dir / "curve_samples.csv");
  curves << "dataset,model,row,time,survival\n";
  for (const Run& r : runs) {
    copy_rows(r, r.dir / "calibration.csv", cal);
    copy_rows(r, r.dir / "dcal_histogram.csv", dcal);
    write_curve_samples(r, curves);
  }
  return kExitOk;
}

}  // namespace isdkit::cli
