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

#ifndef ISDKIT_TOOLS_REPORT_H_
#define ISDKIT_TOOLS_REPORT_H_

#include <ostream>
#include <string>
#include <vector>

namespace isdkit::cli {

struct ReportOptions {
  std::vector<std::string> runs;  // evaluate output directories
  std::string out;
  bool force = false;
};

// Writes comparison.csv, calibration.csv, dcal_histograms.csv and
// curve_samples.csv under opts.out and prints the comparison table. Throws
// isdkit::Error when a run directory lacks metrics.csv.
int run_report(const ReportOptions& opts, std::ostream& out);

}  // namespace isdkit::cli

#endif  // ISDKIT_TOOLS_REPORT_H_
