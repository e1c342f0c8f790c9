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

#include "isdkit/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>

#include "isdkit/aft_weibull.h"
#include "isdkit/cox.h"
#include "isdkit/errors.h"
#include "isdkit/folds.h"
#include "isdkit/kaplan_meier.h"
#include "isdkit/mtlr.h"

namespace isdkit {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::string_view kMetrics[] = {"concordance", "ibs", "l1", "one-cal",
                                         "d-cal"};

// Runs `f` and returns NaN instead of propagating a domain error.
template <typename F>
double or_nan(F&& f) {
  try {
    return f();
  } catch (const Error&) {
    return kNaN;
  }
}

SurvivalDataset outcomes_only(const RawDataset& d) {
  std::vector<Instance> rows(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    rows[i].time = d.outcomes[i].time;
    rows[i].event = d.outcomes[i].event;
  }
  return SurvivalDataset({}, std::move(rows));
}

struct FoldResult {
  FoldMetrics metrics;
  PreprocessReport report;
  std::vector<PatientCurve> curves;
};

FoldResult run_fold(const RawDataset& d, const FoldAssignment& folds,
                    std::size_t fold, const ExperimentConfig& cfg, double tau,
                    double eta) {
  const std::vector<std::size_t> train_rows = folds.train_rows(fold);
  const std::vector<std::size_t> test_rows = folds.test_rows(fold);
  const RawDataset train_raw = d.subset(train_rows);
  const RawDataset test_raw = d.subset(test_rows);

  FoldResult out;
  SurvivalDataset train;
  SurvivalDataset test;
  if (cfg.model == ModelKind::kKaplanMeier) {
    train = outcomes_only(train_raw);
    test = outcomes_only(test_raw);
  } else {
    PreprocessResult p = preprocess(train_raw, test_raw, cfg.preprocess);
    train = std::move(p.train);
    test = std::move(p.validate);
    out.report = std::move(p.report);
  }

  if (train.num_events() == 0) throw Error("training fold has no deaths");
  const KMCurve train_km = fit_km(train);
  const ExtendedCurve km_ext = extend_linear(train_km.curve, 0.0);
  const double t0_km = km_ext.zero_time();

  const std::unique_ptr<FittedModel> model = fit_model(train, cfg);
  std::vector<SurvivalCurve> curves;
  curves.reserve(test.size());
  for (const Instance& x : test.instances()) {
    curves.push_back(model->predict_curve(x));
  }
  PredictionSet preds = make_predictions(curves, t0_km, cfg.risk);
  const std::vector<Outcome> v = test.outcomes();

  FoldMetrics& m = out.metrics;
  m.fold = fold;
  m.n_train = train.size();
  m.n_test = test.size();
  m.t0_km = t0_km;
  m.concordance = m.ibs = m.l1_margin = m.l1_uncensored = m.l1_hinge =
      m.log_l1_margin = kNaN;
  if (cfg.wants("concordance")) {
    m.concordance = or_nan([&] { return concordance(v, preds); });
  }
  if (cfg.wants("ibs")) {
    std::vector<ExtendedCurve> ext;
    ext.reserve(preds.size());
    for (const Prediction& p : preds) ext.push_back(p.curve);
    const KMCurve g_hat = fit_censoring_km(train);
    m.ibs = or_nan([&] { return integrated_brier(v, ext, tau, g_hat); });
  }
  if (cfg.wants("l1")) {
    m.l1_margin = or_nan([&] { return l1_margin(v, preds, km_ext); });
    m.l1_uncensored = or_nan([&] { return l1_uncensored(v, preds); });
    m.l1_hinge = or_nan([&] { return l1_hinge(v, preds); });
    m.log_l1_margin = or_nan(
        [&] { return l1_log(v, preds, L1Variant::kMargin, eta, &km_ext); });
  }

  for (std::size_t i = 0; i < test_rows.size(); ++i) {
    out.curves.push_back({test_rows[i], fold, v[i], preds[i].median,
                          std::move(preds[i].curve)});
  }
  return out;
}

}  // namespace

ModelKind parse_model_kind(std::string_view name) {
  if (name == "km") return ModelKind::kKaplanMeier;
  if (name == "cox-kp") return ModelKind::kCoxKP;
  if (name == "aft-weibull") return ModelKind::kAftWeibull;
  if (name == "mtlr") return ModelKind::kMtlr;
  throw Error("unknown model '" + std::string(name) +
              "' (expected km, cox-kp, aft-weibull or mtlr)");
}

std::string_view model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kKaplanMeier:
      return "km";
    case ModelKind::kCoxKP:
      return "cox-kp";
    case ModelKind::kAftWeibull:
      return "aft-weibull";
    case ModelKind::kMtlr:
      return "mtlr";
  }
  return "?";
}

bool ExperimentConfig::wants(std::string_view metric) const {
  return std::find(metrics.begin(), metrics.end(), metric) != metrics.end();
}

void ExperimentConfig::validate() const {
  for (const std::string& m : metrics) {
    if (std::find(std::begin(kMetrics), std::end(kMetrics), m) ==
        std::end(kMetrics)) {
      throw Error("unknown metric '" + m +
                  "' (expected concordance, ibs, l1, one-cal or d-cal)");
    }
  }
  for (double p : percentiles) {
    if (!(p > 0.0 && p < 100.0)) throw Error("percentiles must lie in (0, 100)");
  }
  if (bins < 2) throw Error("bins must be at least 2");
  if (folds < 2) throw Error("folds must be at least 2");
  if (inner_folds < 2) throw Error("inner_folds must be at least 2");
  if (jobs < 1) throw Error("jobs must be at least 1");
  if (!(preprocess.p_cut > 0.0 && preprocess.p_cut <= 1.0)) {
    throw Error("p_cut must lie in (0, 1]");
  }
  if (!(preprocess.max_missing_fraction >= 0.0 &&
        preprocess.max_missing_fraction <= 1.0)) {
    throw Error("max_missing must lie in [0, 1]");
  }
  if (mtlr_c_grid.empty()) throw Error("mtlr_c_grid must not be empty");
  for (double c : mtlr_c_grid) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw Error("mtlr_c_grid values must be positive");
    }
  }
  if (mtlr_grid_size == 1) throw Error("mtlr_grid_size must be 0 or >= 2");
}

std::unique_ptr<FittedModel> fit_model(const SurvivalDataset& train,
                                       const ExperimentConfig& cfg) {
  const auto grid = [&] {
    const std::size_t m = cfg.mtlr_grid_size == 0
                              ? default_grid_size(train.size())
                              : cfg.mtlr_grid_size;
    return make_grid(train, m);
  };
  switch (cfg.model) {
    case ModelKind::kKaplanMeier:
      return std::make_unique<KaplanMeierModel>(fit_km(train));
    case ModelKind::kCoxKP:
      return std::make_unique<CoxModel>(fit_cox(train));
    case ModelKind::kAftWeibull: {
      AftFitOptions options;
      options.grid = grid().points;
      return std::make_unique<AftWeibullModel>(fit_aft_weibull(train, options));
    }
    case ModelKind::kMtlr: {
      if (train.num_events() == 0) throw FitError("MTLR needs a death");
      MtlrFitOptions options;
      options.c_candidates = cfg.mtlr_c_grid;
      options.cv_folds = cfg.inner_folds;
      return std::make_unique<MtlrModel>(fit_mtlr(train, grid(), options));
    }
  }
  throw Error("unknown model kind");
}

double percentile(std::vector<double> values, double pct) {
  if (values.empty()) throw Error("percentile of an empty set");
  if (!(pct >= 0.0 && pct <= 100.0)) throw Error("percentile outside [0,100]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * pct / 100.0;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<Aggregate> aggregate_folds(const std::vector<FoldMetrics>& folds) {
  const std::pair<const char*, double FoldMetrics::*> fields[] = {
      {"concordance", &FoldMetrics::concordance},
      {"ibs", &FoldMetrics::ibs},
      {"l1_margin", &FoldMetrics::l1_margin},
      {"l1_uncensored", &FoldMetrics::l1_uncensored},
      {"l1_hinge", &FoldMetrics::l1_hinge},
      {"log_l1_margin", &FoldMetrics::log_l1_margin},
  };
  std::vector<Aggregate> out;
  for (const auto& [name, field] : fields) {
    std::vector<double> values;
    for (const FoldMetrics& f : folds) {
      if (std::isfinite(f.*field)) values.push_back(f.*field);
    }
    if (values.empty()) continue;
    Aggregate a{name, 0.0, 0.0, values.size()};
    a.mean = std::accumulate(values.begin(), values.end(), 0.0) /
             static_cast<double>(values.size());
    if (values.size() > 1) {
      double ss = 0.0;
      for (double v : values) ss += (v - a.mean) * (v - a.mean);
      a.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    out.push_back(std::move(a));
  }
  return out;
}

MetricReport run_experiment(const RawDataset& d, const ExperimentConfig& cfg) {
  cfg.validate();
  const FoldAssignment folds = make_folds(d.outcomes, cfg.folds, cfg.seed);
  double tau = 0.0;
  for (const Outcome& o : d.outcomes) tau = std::max(tau, o.time);
  const double eta = eta_for(d.outcomes);

  std::vector<FoldResult> results(folds.k);
  std::vector<std::exception_ptr> errors(folds.k);
  const auto work = [&](std::size_t f) {
    try {
      results[f] = run_fold(d, folds, f, cfg, tau, eta);
    } catch (...) {
      errors[f] = std::current_exception();
    }
  };
  const std::size_t jobs = std::min(cfg.jobs, folds.k);
  if (jobs <= 1) {
    for (std::size_t f = 0; f < folds.k; ++f) work(f);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) {
      pool.emplace_back([&] {
        for (std::size_t f; (f = next++) < folds.k;) work(f);
      });
    }
    for (std::thread& t : pool) t.join();
  }
  for (std::size_t f = 0; f < folds.k; ++f) {
    if (!errors[f]) continue;
    try {
      std::rethrow_exception(errors[f]);
    } catch (const std::exception& e) {
      throw Error("fold " + std::to_string(f + 1) + ": " + e.what());
    }
  }

  MetricReport report;
  report.model = cfg.model;
  for (FoldResult& r : results) {
    report.folds.push_back(r.metrics);
    report.preprocessing.push_back(std::move(r.report));
    for (PatientCurve& c : r.curves) report.curves.push_back(std::move(c));
  }
  std::sort(report.curves.begin(), report.curves.end(),
            [](const PatientCurve& a, const PatientCurve& b) {
              return a.row < b.row;
            });
  report.aggregates = aggregate_folds(report.folds);

  std::vector<Outcome> pooled;
  std::vector<ExtendedCurve> pooled_curves;
  for (const PatientCurve& c : report.curves) {
    pooled.push_back(c.outcome);
    pooled_curves.push_back(c.curve);
  }
  if (cfg.wants("one-cal")) {
    std::vector<double> times;
    for (const Outcome& o : d.outcomes) {
      if (cfg.tstar_source == TstarSource::kAllTimes || o.event) {
        times.push_back(o.time);
      }
    }
    for (double pct : cfg.percentiles) {
      CalibrationRow row{"one-cal-dn", pct, kNaN, std::nullopt, {}};
      try {
        row.tstar = percentile(times, pct);
        std::vector<double> surv;
        for (const ExtendedCurve& c : pooled_curves) surv.push_back(c.at(row.tstar));
        row.result = one_calibration_dn(pooled, surv, row.tstar, cfg.bins);
      } catch (const Error& e) {
        row.error = e.what();
      }
      report.calibration.push_back(std::move(row));
    }
  }
  if (cfg.wants("d-cal")) {
    report.dcal = dcal_histogram(pooled, pooled_curves, cfg.bins);
    report.dcal_result = dcal_test(*report.dcal);
  }
  return report;
}

}  // namespace isdkit
