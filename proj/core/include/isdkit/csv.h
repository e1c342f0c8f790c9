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

#ifndef ISDKIT_CSV_H_
#define ISDKIT_CSV_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "isdkit/dataset.h"

namespace isdkit {

enum class ColumnKind { kNumeric, kNominal };

// A covariate column as read from disk, before any encoding. Numeric columns
// mark missing cells with NaN; nominal columns mark them with "".
struct RawColumn {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
  std::vector<double> numbers;
  std::vector<std::string> labels;

  std::size_t size() const;
  bool is_missing(std::size_t row) const;
  double missing_fraction() const;
  // Distinct non-missing values, in first-seen order.
  std::size_t distinct_count() const;
};

// Ingested survival data: outcomes plus untouched covariate columns.
struct RawDataset {
  std::vector<RawColumn> columns;
  std::vector<Outcome> outcomes;
  std::string time_column = "time";
  std::string event_column = "event";

  std::size_t size() const { return outcomes.size(); }
  RawDataset subset(std::span<const std::size_t> rows) const;
};

// Reads a header-first CSV. Rows are patients; the time and event columns are
// picked by name and every other column becomes a covariate. A column is
// numeric when every non-empty cell parses as a real number. Throws
// ParseError naming the row (1-based, header is row 1) and column.
RawDataset load_csv(const std::filesystem::path& path,
                    std::string_view time_col, std::string_view event_col);
RawDataset parse_csv(std::istream& in, std::string_view time_col,
                     std::string_view event_col);

void write_csv(const RawDataset& d, const std::filesystem::path& path);
void write_csv(const RawDataset& d, std::ostream& out);

// Lossless conversions between the raw and numeric forms. to_dataset throws
// when a column is nominal or has missing cells.
RawDataset to_raw(const SurvivalDataset& d, std::string time_col = "time",
                  std::string event_col = "event");
SurvivalDataset to_dataset(const RawDataset& d);

// Splits one CSV record; handles double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(std::string_view line);
// Quotes a field when it contains a comma, quote or newline.
std::string csv_escape(std::string_view field);
// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace isdkit

#endif  // ISDKIT_CSV_H_
