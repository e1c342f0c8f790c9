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

#include "isdkit/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "isdkit/csv.h"
#include "isdkit/errors.h"

namespace isdkit {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    const auto comma = v.find(',', start);
    const std::string item =
        trim(std::string_view(v).substr(start, comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ParseError("config key '" + key + "': '" + v + "' is not a number");
  }
  return out;
}

std::uint64_t to_count(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ParseError("config key '" + key + "': '" + v +
                     "' is not a non-negative integer");
  }
  return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const std::string& item : split_list(v)) {
    out.push_back(to_double(key, item));
  }
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += (i ? "," : "") + format_double(values[i]);
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(line_no) +
                       ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    try {
      if (key == "model") {
        base.model = parse_model_kind(value);
      } else if (key == "metrics") {
        base.metrics = split_list(value);
      } else if (key == "percentiles") {
        base.percentiles = to_doubles(key, value);
      } else if (key == "bins") {
        base.bins = static_cast<int>(to_count(key, value));
      } else if (key == "folds") {
        base.folds = to_count(key, value);
      } else if (key == "seed") {
        base.seed = to_count(key, value);
      } else if (key == "jobs") {
        base.jobs = to_count(key, value);
      } else if (key == "tstar_source") {
        if (value == "all") {
          base.tstar_source = TstarSource::kAllTimes;
        } else if (value == "deaths") {
          base.tstar_source = TstarSource::kDeathTimes;
        } else {
          throw ParseError("tstar_source must be 'all' or 'deaths'");
        }
      } else if (key == "risk") {
        if (value == "median") {
          base.risk = RiskKind::kNegativeMedian;
        } else if (value == "mean") {
          base.risk = RiskKind::kNegativeMean;
        } else {
          throw ParseError("risk must be 'median' or 'mean'");
        }
      } else if (key == "p_cut") {
        base.preprocess.p_cut = to_double(key, value);
      } else if (key == "max_missing") {
        base.preprocess.max_missing_fraction = to_double(key, value);
      } else if (key == "mtlr_c_grid") {
        base.mtlr_c_grid = to_doubles(key, value);
      } else if (key == "mtlr_grid_size") {
        base.mtlr_grid_size = to_count(key, value);
      } else if (key == "inner_folds") {
        base.inner_folds = to_count(key, value);
      } else {
        throw ParseError("unknown key '" + key + "'");
      }
    } catch (const Error& e) {
      throw ParseError("config line " + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  try {
    base.validate();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path.string());
  return parse_config(in, std::move(base));
}

void write_config(const ExperimentConfig& cfg, std::ostream& out) {
  std::string metrics;
  for (std::size_t i = 0; i < cfg.metrics.size(); ++i) {
    metrics += (i ? "," : "") + cfg.metrics[i];
  }
  out << "model = " << model_name(cfg.model) << '\n'
      << "metrics = " << metrics << '\n'
      << "percentiles = " << join(cfg.percentiles) << '\n'
      << "bins = " << cfg.bins << '\n'
      << "folds = " << cfg.folds << '\n'
      << "seed = " << cfg.seed << '\n'
      << "jobs = " << cfg.jobs << '\n'
      << "tstar_source = "
      << (cfg.tstar_source == TstarSource::kAllTimes ? "all" : "deaths")
      << '\n'
      << "risk = "
      << (cfg.risk == RiskKind::kNegativeMedian ? "median" : "mean") << '\n'
      << "p_cut = " << format_double(cfg.preprocess.p_cut) << '\n'
      << "max_missing = "
      << format_double(cfg.preprocess.max_missing_fraction) << '\n'
      << "mtlr_c_grid = " << join(cfg.mtlr_c_grid) << '\n'
      << "mtlr_grid_size = " << cfg.mtlr_grid_size << '\n'
      << "inner_folds = " << cfg.inner_folds << '\n';
}

}  // namespace isdkit
