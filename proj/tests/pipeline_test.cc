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

#include <cmath>
#include <numeric>
#include <string>

#include "gtest/gtest.h"
#include "isdkit/calibration.h"
#include "isdkit/csv.h"
#include "isdkit/errors.h"
#include "isdkit/folds.h"
#include "isdkit/pipeline.h"
#include "isdkit/simulate.h"

namespace isdkit {
namespace {

RawDataset synthetic(std::size_t n, std::uint64_t seed,
                     std::size_t noise = 2) {
  GeneratorConfig cfg;
  cfg.beta = {1.0, -0.7};
  cfg.noise_features = noise;
  cfg.censor_rate = 0.05;
  return to_raw(simulate_cohort(cfg, n, seed).data);
}

TEST(PipelineTest, KaplanMeierConcordanceIsHalf) {
  ExperimentConfig cfg;
  cfg.model = ModelKind::kKaplanMeier;
  const MetricReport r = run_experiment(synthetic(300, 1), cfg);
  ASSERT_EQ(r.folds.size(), 5u);
  for (const FoldMetrics& f : r.folds) EXPECT_EQ(f.concordance, 0.5);
  ASSERT_FALSE(r.aggregates.empty());
  EXPECT_EQ(r.aggregates[0].metric, "concordance");
  EXPECT_EQ(r.aggregates[0].mean, 0.5);
  EXPECT_EQ(r.aggregates[0].sd, 0.0);
  ASSERT_TRUE(r.dcal_result.has_value());
  EXPECT_GE(r.dcal_result->p_value, 0.05);
  EXPECT_EQ(r.curves.size(), 300u);
  EXPECT_EQ(r.calibration.size(), cfg.percentiles.size());
}

TEST(PipelineTest, CoxSeparatesRisk) {
  ExperimentConfig cfg;
  cfg.model = ModelKind::kCoxKP;
  const MetricReport r = run_experiment(synthetic(400, 2), cfg);
  EXPECT_GT(r.aggregates[0].mean, 0.65);
  for (const PreprocessReport& p : r.preprocessing) {
    EXPECT_FALSE(p.selected.empty());
  }
  for (const CalibrationRow& row : r.calibration) {
    EXPECT_TRUE(row.result.has_value()) << row.error;
  }
}

TEST(PipelineTest, PooledDCalibrationMatchesPerFoldMerge) {
  ExperimentConfig cfg;
  cfg.model = ModelKind::kAftWeibull;
  const MetricReport r = run_experiment(synthetic(250, 3), cfg);
  DCalHistogram merged(cfg.bins);
  for (std::size_t f = 0; f < cfg.folds; ++f) {
    std::vector<Outcome> v;
    std::vector<ExtendedCurve> c;
    for (const PatientCurve& p : r.curves) {
      if (p.fold != f) continue;
      v.push_back(p.outcome);
      c.push_back(p.curve);
    }
    merged.merge(dcal_histogram(v, c, cfg.bins));
  }
  ASSERT_TRUE(r.dcal.has_value());
  for (int k = 0; k < cfg.bins; ++k) {
    EXPECT_NEAR(merged.counts()[k], r.dcal->counts()[k], 1e-9);
  }
  EXPECT_NEAR(dcal_test(merged).statistic, r.dcal_result->statistic, 1e-9);
}

TEST(PipelineTest, AggregatesRecomputeFromFolds) {
  ExperimentConfig cfg;
  cfg.model = ModelKind::kCoxKP;
  const MetricReport r = run_experiment(synthetic(200, 4), cfg);
  for (const Aggregate& a : r.aggregates) {
    if (a.metric != "ibs") continue;
    std::vector<double> v;
    for (const FoldMetrics& f : r.folds) v.push_back(f.ibs);
    const double mean =
        std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    EXPECT_EQ(a.mean, mean);
    EXPECT_EQ(a.sd, std::sqrt(ss / static_cast<double>(v.size() - 1)));
    EXPECT_EQ(a.folds, 5u);
  }
}

TEST(PipelineTest, ParallelFoldsMatchSequential) {
  ExperimentConfig cfg;
  cfg.model = ModelKind::kMtlr;
  cfg.mtlr_c_grid = {1.0, 10.0};
  const RawDataset d = synthetic(200, 5);
  const MetricReport a = run_experiment(d, cfg);
  cfg.jobs = 3;
  const MetricReport b = run_experiment(d, cfg);
  for (std::size_t f = 0; f < a.folds.size(); ++f) {
    EXPECT_EQ(a.folds[f].concordance, b.folds[f].concordance);
    EXPECT_EQ(a.folds[f].ibs, b.folds[f].ibs);
  }
  for (std::size_t i = 0; i < a.curves.size(); ++i) {
    EXPECT_EQ(a.curves[i].median, b.curves[i].median);
  }
}

TEST(PipelineTest, ValidationLabelsNeverReachTraining) {
  ExperimentConfig cfg;
  cfg.model = ModelKind::kCoxKP;
  const RawDataset d = synthetic(200, 6);
  const FoldAssignment folds = make_folds(d.outcomes, cfg.folds, cfg.seed);
  const RawDataset train = d.subset(folds.train_rows(0));
  RawDataset test = d.subset(folds.test_rows(0));
  const PreprocessResult a = preprocess(train, test);
  for (Outcome& o : test.outcomes) o.time *= 3.0;
  const PreprocessResult b = preprocess(train, test);
  EXPECT_EQ(a.report.candidate_pvalues, b.report.candidate_pvalues);
  for (std::size_t i = 0; i < a.train.size(); ++i) {
    EXPECT_EQ(a.train[i].features, b.train[i].features);
  }
  for (std::size_t i = 0; i < a.validate.size(); ++i) {
    EXPECT_EQ(a.validate[i].features, b.validate[i].features);
  }
}

TEST(PipelineTest, FoldErrorsNameTheFold) {
  RawDataset d;
  for (int i = 1; i <= 10; ++i) {
    d.outcomes.push_back({static_cast<double>(i), i == 4});
  }
  ExperimentConfig cfg;
  cfg.model = ModelKind::kKaplanMeier;
  cfg.folds = 2;
  try {
    run_experiment(d, cfg);
    ADD_FAILURE() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(std::string(e.what()).rfind("fold 1: ", 0), 0u) << e.what();
  }
}

TEST(PipelineTest, UncomputableCalibrationBecomesRow) {
  ExperimentConfig cfg;
  cfg.model = ModelKind::kKaplanMeier;
  cfg.bins = 60;
  const MetricReport r = run_experiment(synthetic(50, 7), cfg);
  EXPECT_TRUE(r.dcal_result.has_value());
  for (const CalibrationRow& row : r.calibration) {
    EXPECT_FALSE(row.result.has_value());
    EXPECT_FALSE(row.error.empty());
  }
}

TEST(PipelineTest, Percentile) {
  EXPECT_DOUBLE_EQ(percentile({4, 1, 3, 2, 5}, 50), 3.0);
  EXPECT_DOUBLE_EQ(percentile({1, 2, 3, 4}, 50), 2.5);
  EXPECT_DOUBLE_EQ(percentile({1, 2, 3, 4}, 0), 1.0);
  EXPECT_DOUBLE_EQ(percentile({1, 2, 3, 4}, 100), 4.0);
  EXPECT_THROW(percentile({}, 50), Error);
}

TEST(PipelineTest, ConfigValidation) {
  ExperimentConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.metrics = {"auc"};
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.bins = 1;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.percentiles = {0};
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_EQ(parse_model_kind("aft-weibull"), ModelKind::kAftWeibull);
  EXPECT_THROW(parse_model_kind("rsf"), Error);
}

}  // namespace
}  // namespace isdkit
