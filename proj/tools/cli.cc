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

#include "cli.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isdkit/config.h"
#include "isdkit/csv.h"
#include "isdkit/curve_tools.h"
#include "isdkit/errors.h"
#include "isdkit/kaplan_meier.h"
#include "isdkit/pipeline.h"
#include "isdkit/preprocess.h"
#include "isdkit/simulate.h"
#include "report.h"

namespace isdkit::cli {
namespace {

namespace fs = std::filesystem;

struct RunOptions {
  std::string dataset;
  std::string config;
  std::string time_col = "time";
  std::string event_col = "event";
  std::string model = "mtlr";
  std::vector<std::string> metrics;
  std::vector<double> percentiles;
  int bins = 10;
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string out;
  bool force = false;
};

struct Flags {
  CLI::Option* model = nullptr;
  CLI::Option* metrics = nullptr;
  CLI::Option* percentiles = nullptr;
  CLI::Option* bins = nullptr;
  CLI::Option* folds = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* jobs = nullptr;
};

struct SimulateOptions {
  std::size_t n = 1000;
  std::string family = "exp-ph";
  std::vector<double> beta = {1.0};
  std::size_t noise = 0;
  double base_rate = 0.1;
  double shape = 1.5;
  double scale = 10.0;
  double censor_rate = 0.0;
  double admin_censor = 0.0;
  bool binary_first = false;
  std::uint64_t seed = 0;
  std::string time_col = "time";
  std::string event_col = "event";
  std::string out;
  bool force = false;
};

Flags add_run_options(CLI::App* app, RunOptions& o, bool experiment) {
  Flags f;
  app->add_option("--dataset", o.dataset, "Input CSV, one patient per row")
      ->required();
  app->add_option("--config", o.config, "key = value experiment file");
  app->add_option("--time-col", o.time_col, "Name of the time column")
      ->capture_default_str();
  app->add_option("--event-col", o.event_col,
                  "Name of the event column (1 = death, 0 = censored)")
      ->capture_default_str();
  f.model = app->add_option("--model", o.model, "Model to fit")
                ->check(CLI::IsMember({"km", "cox-kp", "aft-weibull", "mtlr"}))
                ->capture_default_str();
  f.seed = app->add_option("--seed", o.seed,
                           "Random seed (falls back to ISDKIT_SEED)");
  app->add_option("--out", o.out, "Output directory")->required();
  app->add_flag("--force", o.force, "Overwrite existing outputs");
  if (experiment) {
    f.metrics = app->add_option("--metrics", o.metrics,
                                "Comma list of concordance,ibs,l1,one-cal,"
                                "d-cal")
                    ->delimiter(',');
    f.percentiles =
        app->add_option("--percentiles", o.percentiles,
                        "Comma list of 1-Calibration time percentiles")
            ->delimiter(',');
    f.bins = app->add_option("--bins", o.bins, "Calibration bins");
    f.folds = app->add_option("--folds", o.folds, "Cross-validation folds");
    f.jobs = app->add_option("--jobs", o.jobs, "Folds evaluated in parallel");
  }
  return f;
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("ISDKIT_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string_view s(raw);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError("ISDKIT_SEED must be a non-negative integer, got '" +
                     std::string(s) + "'");
  }
  return v;
}

ExperimentConfig make_config(const RunOptions& o, const Flags& f) {
  ExperimentConfig cfg;
  if (!o.config.empty()) cfg = load_config(o.config);
  if (f.model->count() > 0 || o.config.empty()) {
    cfg.model = parse_model_kind(o.model);
  }
  if (f.metrics != nullptr && f.metrics->count() > 0) cfg.metrics = o.metrics;
  if (f.percentiles != nullptr && f.percentiles->count() > 0) {
    cfg.percentiles = o.percentiles;
  }
  if (f.bins != nullptr && f.bins->count() > 0) cfg.bins = o.bins;
  if (f.folds != nullptr && f.folds->count() > 0) cfg.folds = o.folds;
  if (f.jobs != nullptr && f.jobs->count() > 0) cfg.jobs = o.jobs;
  if (f.seed->count() > 0) {
    cfg.seed = o.seed;
  } else if (const auto s = env_seed()) {
    cfg.seed = *s;
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

// Creates `dir` and refuses to touch any existing target unless forced.
void prepare_output(const fs::path& dir, const std::vector<fs::path>& targets,
                    bool force) {
  for (const fs::path& t : targets) {
    if (fs::exists(dir / t) && !force) {
      throw UsageError("refusing to overwrite " + (dir / t).string() +
                       " (pass --force)");
    }
  }
  fs::create_directories(dir);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void write_curve_rows(std::ostream& out, std::size_t row,
                      const ExtendedCurve& c) {
  double last_t = -1.0;
  double last_s = -1.0;
  const auto emit = [&](double t, double s) {
    if (t == last_t && s == last_s) return;
    out << row << ',' << format_double(t) << ',' << format_double(s) << '\n';
    last_t = t;
    last_s = s;
  };
  const auto pieces = c.pieces();
  if (pieces.empty() || pieces.front().lo > 0.0) emit(0.0, 1.0);
  for (const ExtendedCurve::Piece& p : pieces) {
    emit(p.lo, p.value_lo);
    emit(p.hi, p.value_hi);
  }
  emit(c.zero_time(), 0.0);
}

std::string dataset_name(const std::string& path) {
  return fs::path(path).stem().string();
}

void write_metrics(const fs::path& path, const std::string& dataset,
                   const MetricReport& r) {
  std::ofstream out = open_out(path);
  out << "dataset,model,fold,metric,value\n";
  const std::string prefix =
      csv_escape(dataset) + "," + std::string(model_name(r.model)) + ",";
  const std::pair<const char*, double FoldMetrics::*> fields[] = {
      {"concordance", &FoldMetrics::concordance},
      {"ibs", &FoldMetrics::ibs},
      {"l1_margin", &FoldMetrics::l1_margin},
      {"l1_uncensored", &FoldMetrics::l1_uncensored},
      {"l1_hinge", &FoldMetrics::l1_hinge},
      {"log_l1_margin", &FoldMetrics::log_l1_margin},
  };
  for (const FoldMetrics& f : r.folds) {
    for (const auto& [name, field] : fields) {
      if (!std::isfinite(f.*field)) continue;
      out << prefix << f.fold + 1 << ',' << name << ','
          << format_double(f.*field) << '\n';
    }
  }
  for (const Aggregate& a : r.aggregates) {
    out << prefix << "mean," << a.metric << ',' << format_double(a.mean)
        << '\n';
    out << prefix << "sd," << a.metric << ',' << format_double(a.sd) << '\n';
  }
}

void write_calibration(const fs::path& path, const MetricReport& r) {
  std::ofstream out = open_out(path);
  out << "test,percentile,tstar,statistic,dof,p_value,error\n";
  for (const CalibrationRow& row : r.calibration) {
    out << row.test << ',' << format_double(row.percentile) << ','
        << format_double(row.tstar) << ',';
    if (row.result) {
      out << format_double(row.result->statistic) << ',' << row.result->dof
          << ',' << format_double(row.result->p_value) << ",\n";
    } else {
      out << ",,," << csv_escape(row.error) << '\n';
    }
  }
  if (r.dcal_result) {
    out << "d-cal,,," << format_double(r.dcal_result->statistic) << ','
        << r.dcal_result->dof << ',' << format_double(r.dcal_result->p_value)
        << ",\n";
  }
}

void write_dcal(const fs::path& path, const DCalHistogram& h) {
  std::ofstream out = open_out(path);
  out << "bin,lower,upper,count,fraction\n";
  const std::vector<double> edges = h.edges();
  for (int k = 0; k < h.bins(); ++k) {
    const double c = h.counts()[static_cast<std::size_t>(k)];
    out << k + 1 << ',' << format_double(edges[k]) << ','
        << format_double(edges[k + 1]) << ',' << format_double(c) << ','
        << format_double(c / h.n_total()) << '\n';
  }
}

int cmd_evaluate(const RunOptions& o, const Flags& f, std::ostream& out) {
  const ExperimentConfig cfg = make_config(o, f);
  const fs::path dir = o.out;
  prepare_output(dir,
                 {"metrics.csv", "calibration.csv", "dcal_histogram.csv",
                  "predictions.csv", "run.cfg", "curves"},
                 o.force);
  const RawDataset raw = load_csv(o.dataset, o.time_col, o.event_col);
  const MetricReport r = run_experiment(raw, cfg);

  fs::remove_all(dir / "curves");
  fs::create_directories(dir / "curves");
  write_metrics(dir / "metrics.csv", dataset_name(o.dataset), r);
  write_calibration(dir / "calibration.csv", r);
  if (r.dcal) {
    write_dcal(dir / "dcal_histogram.csv", *r.dcal);
  } else {
    fs::remove(dir / "dcal_histogram.csv");
  }
  {
    std::ofstream run_cfg = open_out(dir / "run.cfg");
    write_config(cfg, run_cfg);
  }
  std::ofstream pred = open_out(dir / "predictions.csv");
  pred << "row,fold,time,event,median\n";
  std::vector<std::ofstream> curve_files;
  for (std::size_t k = 0; k < cfg.folds; ++k) {
    curve_files.push_back(open_out(dir / "curves" /
                                   ("fold_" + std::to_string(k + 1) + ".csv")));
    curve_files.back() << "row,time,survival\n";
  }
  for (const PatientCurve& p : r.curves) {
    pred << p.row + 1 << ',' << p.fold + 1 << ','
         << format_double(p.outcome.time) << ',' << (p.outcome.event ? 1 : 0)
         << ',' << format_double(p.median) << '\n';
    write_curve_rows(curve_files[p.fold], p.row + 1, p.curve);
  }

  out << model_name(r.model) << " on " << dataset_name(o.dataset) << " ("
      << raw.size() << " patients, " << cfg.folds << " folds)\n";
  for (const Aggregate& a : r.aggregates) {
    out << "  " << a.metric << ": " << format_double(a.mean) << " +- "
        << format_double(a.sd) << '\n';
  }
  if (r.dcal_result) {
    out << "  d-cal p: " << format_double(r.dcal_result->p_value) << '\n';
  }
  return kExitOk;
}

int cmd_fit(const RunOptions& o, const Flags& f, std::ostream& out) {
  const ExperimentConfig cfg = make_config(o, f);
  const fs::path dir = o.out;
  prepare_output(dir,
                 {"model.txt", "preprocessing.csv", "curves.csv",
                  "predictions.csv"},
                 o.force);
  const RawDataset raw = load_csv(o.dataset, o.time_col, o.event_col);
  std::size_t deaths = 0;
  for (const Outcome& x : raw.outcomes) deaths += x.event ? 1 : 0;
  if (deaths == 0 && cfg.model != ModelKind::kKaplanMeier) {
    throw FitError(std::string(model_name(cfg.model)) +
                   " needs at least one uncensored patient");
  }

  SurvivalDataset train;
  std::optional<PreprocessReport> report;
  if (cfg.model == ModelKind::kKaplanMeier) {
    std::vector<Instance> rows;
    for (const Outcome& x : raw.outcomes) rows.push_back({{}, x.time, x.event});
    train = SurvivalDataset({}, std::move(rows));
  } else {
    PreprocessResult p = preprocess(raw, raw, cfg.preprocess);
    train = std::move(p.train);
    report = std::move(p.report);
  }
  const auto model = fit_model(train, cfg);
  const double t0_km = extend_linear(fit_km(train).curve, 0.0).zero_time();

  {
    std::ofstream m = open_out(dir / "model.txt");
    model->serialize(m);
  }
  if (report) {
    std::ofstream p = open_out(dir / "preprocessing.csv");
    p << "feature,imputation_mean,mean,sd\n";
    for (std::size_t j = 0; j < report->selected.size(); ++j) {
      p << csv_escape(report->selected[j]) << ','
        << format_double(report->imputation_means[j]) << ','
        << format_double(report->means[j]) << ','
        << format_double(report->sds[j]) << '\n';
    }
  } else {
    fs::remove(dir / "preprocessing.csv");
  }
  std::ofstream curves = open_out(dir / "curves.csv");
  std::ofstream pred = open_out(dir / "predictions.csv");
  curves << "row,time,survival\n";
  pred << "row,time,event,median\n";
  for (std::size_t i = 0; i < train.size(); ++i) {
    const ExtendedCurve c = extend_linear(model->predict_curve(train[i]), t0_km);
    write_curve_rows(curves, i + 1, c);
    pred << i + 1 << ',' << format_double(train[i].time) << ','
         << (train[i].event ? 1 : 0) << ','
         << format_double(median_survival(c, t0_km)) << '\n';
  }
  out << "fitted " << model->name() << " on " << train.size() << " patients, "
      << train.num_features() << " features\n";
  return kExitOk;
}

int cmd_simulate(SimulateOptions o, bool seed_flag, std::ostream& out) {
  if (!seed_flag) {
    if (const auto s = env_seed()) o.seed = *s;
  }
  GeneratorConfig g;
  if (o.family == "exp-ph") {
    g.family = DeathFamily::kExponentialPH;
  } else if (o.family == "weibull-ph") {
    g.family = DeathFamily::kWeibullPH;
  } else {
    g.family = DeathFamily::kWeibullAFT;
  }
  g.beta = o.beta;
  g.noise_features = o.noise;
  g.base_rate = o.base_rate;
  g.shape = o.shape;
  g.scale = o.scale;
  g.censor_rate = o.censor_rate;
  g.admin_censor = o.admin_censor;
  g.binary_first_feature = o.binary_first;
  const fs::path path = o.out;
  if (fs::exists(path) && !o.force) {
    throw UsageError("refusing to overwrite " + path.string() +
                     " (pass --force)");
  }
  const SimulatedCohort c = simulate_cohort(g, o.n, o.seed);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_csv(to_raw(c.data, o.time_col, o.event_col), path);
  out << "wrote " << c.data.size() << " patients (" << c.data.num_events()
      << " deaths) to " << path.string() << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Individual survival distribution models and their evaluation"};
  app.name("isdkit");
  app.require_subcommand(1);

  RunOptions fit_opts;
  CLI::App* fit = app.add_subcommand(
      "fit", "Fit one model on the full dataset and write it with its curves");
  const Flags fit_flags = add_run_options(fit, fit_opts, false);

  RunOptions eval_opts;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Cross-validate a model and write metrics and plot data");
  const Flags eval_flags = add_run_options(evaluate, eval_opts, true);

  SimulateOptions sim;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Write a synthetic survival cohort");
  simulate->add_option("--n", sim.n, "Patients")->capture_default_str();
  simulate
      ->add_option("--family", sim.family, "Death time distribution")
      ->check(CLI::IsMember({"exp-ph", "weibull-ph", "weibull-aft"}))
      ->capture_default_str();
  simulate->add_option("--beta", sim.beta, "Informative coefficients")
      ->delimiter(',');
  simulate->add_option("--noise", sim.noise, "Extra pure-noise features");
  simulate->add_option("--base-rate", sim.base_rate, "Exponential base rate");
  simulate->add_option("--shape", sim.shape, "Weibull shape");
  simulate->add_option("--scale", sim.scale, "Weibull scale");
  simulate->add_option("--censor-rate", sim.censor_rate,
                       "Exponential censoring hazard (0 = none)");
  simulate->add_option("--admin-censor", sim.admin_censor,
                       "Study end time (0 = none)");
  simulate->add_flag("--binary-first", sim.binary_first,
                     "Draw the first feature from Bernoulli(0.5)");
  CLI::Option* sim_seed =
      simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("--time-col", sim.time_col)->capture_default_str();
  simulate->add_option("--event-col", sim.event_col)->capture_default_str();
  simulate->add_option("--out", sim.out, "Output CSV")->required();
  simulate->add_flag("--force", sim.force, "Overwrite an existing file");

  ReportOptions rep;
  CLI::App* report = app.add_subcommand(
      "report", "Compare evaluate runs and gather plot data");
  report->add_option("runs", rep.runs, "evaluate output directories")
      ->required()
      ->expected(1, -1);
  report->add_option("--out", rep.out, "Output directory")->required();
  report->add_flag("--force", rep.force, "Overwrite existing outputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (*fit) return cmd_fit(fit_opts, fit_flags, out);
    if (*evaluate) return cmd_evaluate(eval_opts, eval_flags, out);
    if (*simulate) {
      return cmd_simulate(sim, sim_seed->count() > 0, out);
    }
    return run_report(rep, out);
  } catch (const UsageError& e) {
    err << "isdkit: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const Error& e) {
    err << "isdkit: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "isdkit: " << e.what() << '\n';
    return kExitDomainError;
  }
}

}  // namespace isdkit::cli
