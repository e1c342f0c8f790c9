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

#ifndef ISDKIT_PIPELINE_H_
#define ISDKIT_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isdkit/calibration.h"
#include "isdkit/csv.h"
#include "isdkit/curve_tools.h"
#include "isdkit/dataset.h"
#include "isdkit/discrimination.h"
#include "isdkit/model.h"
#include "isdkit/preprocess.h"

namespace isdkit {

enum class ModelKind { kKaplanMeier, kCoxKP, kAftWeibull, kMtlr };

ModelKind parse_model_kind(std::string_view name);
std::string_view model_name(ModelKind kind);

// Where the 1-Calibration evaluation times come from.
enum class TstarSource { kAllTimes, kDeathTimes };

struct ExperimentConfig {
  ModelKind model = ModelKind::kMtlr;
  // Any of: concordance, ibs, l1, one-cal, d-cal.
  std::vector<std::string> metrics = {"concordance", "ibs", "l1", "one-cal",
                                      "d-cal"};
  std::vector<double> percentiles = {10, 25, 50, 75, 90};
  int bins = 10;
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  TstarSource tstar_source = TstarSource::kAllTimes;
  RiskKind risk = RiskKind::kNegativeMedian;
  PreprocessOptions preprocess;
  std::vector<double> mtlr_c_grid = {0.01, 0.1, 1.0, 10.0, 100.0};
  std::size_t mtlr_grid_size = 0;  // 0 = default_grid_size(n_train)
  std::size_t inner_folds = 5;

  bool wants(std::string_view metric) const;
  // Throws isdkit::Error describing the first invalid field.
  void validate() const;
};

// Fits the configured model on an already preprocessed training set.
std::unique_ptr<FittedModel> fit_model(const SurvivalDataset& train,
                                       const ExperimentConfig& cfg);

struct FoldMetrics {
  std::size_t fold = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  double t0_km = 0.0;
  // NaN when not requested or not computable on this fold.
  double concordance;
  double ibs;
  double l1_margin;
  double l1_uncensored;
  double l1_hinge;
  double log_l1_margin;
};

struct Aggregate {
  std::string metric;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation across folds
  std::size_t folds = 0;
};

// One pooled calibration test. `result` is empty when the test could not be
// evaluated; `error` then says why.
struct CalibrationRow {
  std::string test;
  double percentile = 0.0;
  double tstar = 0.0;
  std::optional<TestResult> result;
  std::string error;
};

// A validation patient's cross-validated prediction.
struct PatientCurve {
  std::size_t row = 0;
  std::size_t fold = 0;
  Outcome outcome;
  double median = 0.0;
  ExtendedCurve curve;
};

struct MetricReport {
  ModelKind model = ModelKind::kKaplanMeier;
  std::vector<FoldMetrics> folds;
  std::vector<Aggregate> aggregates;
  std::vector<CalibrationRow> calibration;
  std::optional<DCalHistogram> dcal;
  std::optional<TestResult> dcal_result;
  std::vector<PatientCurve> curves;  // ordered by row
  std::vector<PreprocessReport> preprocessing;  // per fold
};

// Percentile (0-100) of the values, linear interpolation between order
// statistics.
double percentile(std::vector<double> values, double pct);

// Outer k-fold protocol: per fold preprocess, fit, predict and extend
// validation curves, score Concordance / IBS / L1 family; then one pooled
// D'Agostino-Nam test per percentile and one pooled D-Calibration test.
// Errors from a fold are rethrown as isdkit::Error naming the fold.
MetricReport run_experiment(const RawDataset& d, const ExperimentConfig& cfg);

// Mean and sample sd of each per-fold metric.
std::vector<Aggregate> aggregate_folds(const std::vector<FoldMetrics>& folds);

}  // namespace isdkit

#endif  // ISDKIT_PIPELINE_H_
