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

#include "isdkit/csv.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "isdkit/errors.h"

namespace isdkit {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool is_missing_token(std::string_view s) { return s.empty() || s == "NA"; }

// Whole-string parse of a finite real.
bool parse_real(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

std::string where(std::size_t row, std::string_view column) {
  return "row " + std::to_string(row) + ", column '" + std::string(column) +
         "'";
}

}  // namespace

std::size_t RawColumn::size() const {
  return kind == ColumnKind::kNumeric ? numbers.size() : labels.size();
}

bool RawColumn::is_missing(std::size_t row) const {
  return kind == ColumnKind::kNumeric ? std::isnan(numbers[row])
                                      : labels[row].empty();
}

double RawColumn::missing_fraction() const {
  const std::size_t n = size();
  if (n == 0) return 0.0;
  std::size_t missing = 0;
  for (std::size_t i = 0; i < n; ++i) missing += is_missing(i) ? 1 : 0;
  return static_cast<double>(missing) / static_cast<double>(n);
}

std::size_t RawColumn::distinct_count() const {
  if (kind == ColumnKind::kNumeric) {
    std::set<double> seen;
    for (double v : numbers) {
      if (!std::isnan(v)) seen.insert(v);
    }
    return seen.size();
  }
  std::set<std::string> seen;
  for (const std::string& v : labels) {
    if (!v.empty()) seen.insert(v);
  }
  return seen.size();
}

RawDataset RawDataset::subset(std::span<const std::size_t> rows) const {
  RawDataset out;
  out.time_column = time_column;
  out.event_column = event_column;
  out.outcomes.reserve(rows.size());
  for (std::size_t r : rows) out.outcomes.push_back(outcomes.at(r));
  out.columns.reserve(columns.size());
  for (const RawColumn& c : columns) {
    RawColumn picked{c.name, c.kind, {}, {}};
    for (std::size_t r : rows) {
      if (c.kind == ColumnKind::kNumeric) {
        picked.numbers.push_back(c.numbers.at(r));
      } else {
        picked.labels.push_back(c.labels.at(r));
      }
    }
    out.columns.push_back(std::move(picked));
  }
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (quoted) throw ParseError("unterminated quoted field");
  fields.push_back(std::move(current));
  return fields;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf, ptr);
}

RawDataset parse_csv(std::istream& in, std::string_view time_col,
                     std::string_view event_col) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty file: header required");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    line.erase(0, 3);  // UTF-8 BOM
  }
  std::vector<std::string> header = split_csv_line(line);
  for (std::string& h : header) h = std::string(trim(h));

  std::ptrdiff_t time_idx = -1;
  std::ptrdiff_t event_idx = -1;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == time_col) time_idx = static_cast<std::ptrdiff_t>(j);
    if (header[j] == event_col) event_idx = static_cast<std::ptrdiff_t>(j);
  }
  if (time_idx < 0) {
    throw ParseError("time column '" + std::string(time_col) + "' not found");
  }
  if (event_idx < 0) {
    throw ParseError("event column '" + std::string(event_col) +
                     "' not found");
  }

  // Collect cells column-wise first; typing needs the whole column.
  std::vector<std::vector<std::string>> cells(header.size());
  RawDataset out;
  out.time_column = std::string(time_col);
  out.event_column = std::string(event_col);
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    try {
      fields = split_csv_line(line);
    } catch (const ParseError& e) {
      throw ParseError("row " + std::to_string(row) + ": " + e.what());
    }
    if (fields.size() != header.size()) {
      throw ParseError("row " + std::to_string(row) + ": expected " +
                       std::to_string(header.size()) + " fields, found " +
                       std::to_string(fields.size()));
    }
    const std::string_view time_text = trim(fields[time_idx]);
    double t = 0.0;
    if (!parse_real(time_text, t)) {
      throw ParseError(where(row, time_col) + ": '" + std::string(time_text) +
                       "' is not a number");
    }
    if (t < 0.0) {
      throw ParseError(where(row, time_col) + ": negative time " +
                       std::string(time_text));
    }
    const std::string_view event_text = trim(fields[event_idx]);
    double e = 0.0;
    if (!parse_real(event_text, e) || (e != 0.0 && e != 1.0)) {
      throw ParseError(where(row, event_col) + ": event must be 0 or 1, got '" +
                       std::string(event_text) + "'");
    }
    out.outcomes.push_back({t, e == 1.0});
    for (std::size_t j = 0; j < header.size(); ++j) {
      cells[j].push_back(std::string(trim(fields[j])));
    }
  }

  for (std::size_t j = 0; j < header.size(); ++j) {
    if (static_cast<std::ptrdiff_t>(j) == time_idx ||
        static_cast<std::ptrdiff_t>(j) == event_idx) {
      continue;
    }
    RawColumn col{header[j], ColumnKind::kNumeric, {}, {}};
    bool numeric = true;
    for (const std::string& cell : cells[j]) {
      double v = 0.0;
      if (is_missing_token(cell)) {
        col.numbers.push_back(kNaN);
      } else if (parse_real(cell, v)) {
        col.numbers.push_back(v);
      } else {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      col.kind = ColumnKind::kNominal;
      col.numbers.clear();
      for (const std::string& cell : cells[j]) {
        col.labels.push_back(is_missing_token(cell) ? std::string() : cell);
      }
    }
    out.columns.push_back(std::move(col));
  }
  return out;
}

RawDataset load_csv(const std::filesystem::path& path,
                    std::string_view time_col, std::string_view event_col) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return parse_csv(in, time_col, event_col);
}

void write_csv(const RawDataset& d, std::ostream& out) {
  for (const RawColumn& c : d.columns) out << csv_escape(c.name) << ',';
  out << csv_escape(d.time_column) << ',' << csv_escape(d.event_column)
      << '\n';
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (const RawColumn& c : d.columns) {
      if (c.kind == ColumnKind::kNumeric) {
        out << format_double(c.numbers[i]);
      } else {
        out << csv_escape(c.labels[i]);
      }
      out << ',';
    }
    out << format_double(d.outcomes[i].time) << ','
        << (d.outcomes[i].event ? 1 : 0) << '\n';
  }
}

void write_csv(const RawDataset& d, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_csv(d, out);
  if (!out) throw Error("write failed: " + path.string());
}

RawDataset to_raw(const SurvivalDataset& d, std::string time_col,
                  std::string event_col) {
  RawDataset out;
  out.time_column = std::move(time_col);
  out.event_column = std::move(event_col);
  out.outcomes = d.outcomes();
  for (std::size_t j = 0; j < d.num_features(); ++j) {
    out.columns.push_back(
        {d.feature_names()[j], ColumnKind::kNumeric, d.feature_column(j), {}});
  }
  return out;
}

SurvivalDataset to_dataset(const RawDataset& d) {
  std::vector<std::string> names;
  for (const RawColumn& c : d.columns) {
    if (c.kind != ColumnKind::kNumeric) {
      throw Error("column '" + c.name + "' is nominal; preprocess first");
    }
    names.push_back(c.name);
  }
  std::vector<Instance> instances(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    instances[i].time = d.outcomes[i].time;
    instances[i].event = d.outcomes[i].event;
    instances[i].features.reserve(d.columns.size());
    for (const RawColumn& c : d.columns) {
      if (std::isnan(c.numbers[i])) {
        throw Error("column '" + c.name + "' has missing cells; preprocess " +
                    "first");
      }
      instances[i].features.push_back(c.numbers[i]);
    }
  }
  return SurvivalDataset(std::move(names), std::move(instances));
}

}  // namespace isdkit
