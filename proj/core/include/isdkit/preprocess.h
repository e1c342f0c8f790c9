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

#ifndef ISDKIT_PREPROCESS_H_
#define ISDKIT_PREPROCESS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "isdkit/csv.h"
#include "isdkit/dataset.h"

namespace isdkit {

struct PreprocessOptions {
  double max_missing_fraction = 0.25;
  double p_cut = 0.10;
};

struct OneHotExpansion {
  std::string source;
  std::vector<std::string> levels;  // one indicator column per level
};

// Everything learned from the training fold. Applying it to new rows never
// reads their labels.
struct PreprocessReport {
  std::vector<std::string> dropped_missing;       // > 25% missing
  std::vector<std::string> dropped_single_valued;
  std::vector<OneHotExpansion> encoded;
  std::vector<std::string> candidates;  // after encoding, before the filter
  std::vector<double> candidate_pvalues;
  std::vector<std::string> selected;
  std::vector<double> imputation_means;  // per selected feature
  std::vector<double> means;             // standardization, per selected
  std::vector<double> sds;
};

struct PreprocessResult {
  SurvivalDataset train;
  SurvivalDataset validate;
  PreprocessReport report;
};

// Drop (>25% missing or single-valued) -> one-hot -> univariate Cox filter
// (keep p <= p_cut) -> mean impute -> standardize. All statistics come from
// `train`. Throws isdkit::Error when no feature survives.
PreprocessResult preprocess(const RawDataset& train, const RawDataset& validate,
                            const PreprocessOptions& options = {});

// Applies a fitted report to other rows.
SurvivalDataset apply_preprocessing(const PreprocessReport& report,
                                    const RawDataset& d);

}  // namespace isdkit

#endif  // ISDKIT_PREPROCESS_H_
