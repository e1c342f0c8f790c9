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

#include "isdkit/mtlr.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "isdkit/errors.h"
#include "isdkit/folds.h"
#include "isdkit/optimize.h"
#include "text_io.h"

namespace isdkit {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Eigen::MatrixXd design_with_bias(const SurvivalDataset& d) {
  const std::size_t p = d.num_features();
  Eigen::MatrixXd x(d.size(), p + 1);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i].features.size() != p) {
      throw Error("instance " + std::to_string(i) + " has wrong arity");
    }
    x(i, 0) = 1.0;
    for (std::size_t j = 0; j < p; ++j) x(i, j + 1) = d[i].features[j];
  }
  return x;
}

// Sequence scores f_k = sum_{i > k} a_i for k = 0..m.
void sequence_scores(const double* a, std::size_t m, std::vector<double>& f) {
  f.assign(m + 1, 0.0);
  for (std::size_t k = m; k-- > 0;) f[k] = f[k + 1] + a[k];
}

double log_sum_exp(const std::vector<double>& f, std::size_t first,
                   std::size_t last) {
  double mx = kNegInf;
  for (std::size_t k = first; k <= last; ++k) mx = std::max(mx, f[k]);
  double s = 0.0;
  for (std::size_t k = first; k <= last; ++k) s += std::exp(f[k] - mx);
  return mx + std::log(s);
}

// Unpenalized log-likelihood; fills the gradient when `grad` is non-null.
double loglik(const Eigen::MatrixXd& theta, const SurvivalDataset& d,
              const TimeGrid& grid, Eigen::MatrixXd* grad) {
  const std::size_t m = grid.size();
  if (static_cast<std::size_t>(theta.rows()) != m ||
      static_cast<std::size_t>(theta.cols()) != d.num_features() + 1) {
    throw Error("theta must be " + std::to_string(m) + " x " +
                std::to_string(d.num_features() + 1));
  }
  const Eigen::MatrixXd x = design_with_bias(d);
  // Row-major scores so each patient's a-vector is contiguous.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      a = x * theta.transpose();
  Eigen::MatrixXd coef;
  if (grad != nullptr) coef.setZero(d.size(), m);

  double total = 0.0;
  std::vector<double> f;
  std::vector<double> w(m + 1);
  for (std::size_t r = 0; r < d.size(); ++r) {
    sequence_scores(a.row(r).data(), m, f);
    const SequenceLabel label = encode_label(d[r].time, d[r].event, grid);
    const double log_z = log_sum_exp(f, 0, m);
    const double log_num = log_sum_exp(f, label.first, label.last);
    total += log_num - log_z;
    if (grad == nullptr) continue;
    // d f_k / d a_i = 1[k < i + 1] for row i (0-based); accumulate
    // w_k = q_k - P_k and take prefix sums from the top.
    for (std::size_t k = 0; k <= m; ++k) {
      w[k] = -std::exp(f[k] - log_z);
      if (k >= label.first && k <= label.last) w[k] += std::exp(f[k] - log_num);
    }
    double prefix = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      prefix += w[i];
      coef(r, i) = prefix;
    }
  }
  if (grad != nullptr) *grad = coef.transpose() * x;
  return total;
}

}  // namespace

std::size_t default_grid_size(std::size_t n) {
  const auto root =
      static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  return std::clamp<std::size_t>(root, 2, 50);
}

TimeGrid make_grid(std::span<const Outcome> outcomes, std::size_t m) {
  if (outcomes.empty()) throw Error("cannot build a time grid from no data");
  if (m < 2) throw Error("time grid needs at least 2 points");
  std::vector<double> times;
  times.reserve(outcomes.size());
  for (const Outcome& o : outcomes) times.push_back(o.time);
  std::sort(times.begin(), times.end());
  const std::size_t n = times.size();
  TimeGrid grid;
  for (std::size_t j = 1; j <= m; ++j) {
    const std::size_t rank = (j * n + m - 1) / m;  // ceil(j n / m)
    const double q = times[rank - 1];
    if (q > 0.0 && (grid.points.empty() || q > grid.points.back())) {
      grid.points.push_back(q);
    }
  }
  if (grid.points.size() < 2) {
    const double t_max = times.back();
    if (!(t_max > 0.0)) throw Error("time grid needs a positive time");
    grid.points.clear();
    for (std::size_t j = 1; j <= m; ++j) {
      grid.points.push_back(t_max * static_cast<double>(j) /
                            static_cast<double>(m));
    }
  }
  return grid;
}

TimeGrid make_grid(const SurvivalDataset& d, std::size_t m) {
  const std::vector<Outcome> o = d.outcomes();
  return make_grid(o, m);
}

SequenceLabel encode_label(double t, bool event, const TimeGrid& grid) {
  const auto before = static_cast<std::size_t>(
      std::lower_bound(grid.points.begin(), grid.points.end(), t) -
      grid.points.begin());
  return {before, event ? before : grid.size()};
}

std::vector<int> status_sequence(std::size_t k, std::size_t m) {
  std::vector<int> y(m, 0);
  for (std::size_t i = k; i < m; ++i) y[i] = 1;
  return y;
}

MtlrObjective mtlr_loglik_grad(const Eigen::MatrixXd& theta,
                               const SurvivalDataset& d, const TimeGrid& grid,
                               double c) {
  MtlrObjective out;
  out.value = loglik(theta, d, grid, &out.gradient) -
              0.5 * c * theta.squaredNorm();
  out.gradient -= c * theta;
  return out;
}

MtlrModel::MtlrModel(Eigen::MatrixXd theta, TimeGrid grid, double reg_c)
    : theta_(std::move(theta)), grid_(std::move(grid)), reg_c_(reg_c) {
  if (static_cast<std::size_t>(theta_.rows()) != grid_.size() ||
      theta_.cols() < 1) {
    throw Error("theta shape does not match the time grid");
  }
  if (!theta_.allFinite()) throw Error("MTLR parameters must be finite");
}

std::vector<double> MtlrModel::sequence_probabilities(
    std::span<const double> x) const {
  if (static_cast<Eigen::Index>(x.size()) + 1 != theta_.cols()) {
    throw Error("covariate vector has " + std::to_string(x.size()) +
                " entries, model expects " +
                std::to_string(theta_.cols() - 1));
  }
  const std::size_t m = grid_.size();
  Eigen::VectorXd xt(theta_.cols());
  xt(0) = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) xt(j + 1) = x[j];
  const Eigen::VectorXd a = theta_ * xt;
  std::vector<double> f;
  sequence_scores(a.data(), m, f);
  const double log_z = log_sum_exp(f, 0, m);
  for (double& v : f) v = std::exp(v - log_z);
  return f;
}

SurvivalCurve MtlrModel::predict_curve(std::span<const double> x) const {
  const std::vector<double> prob = sequence_probabilities(x);
  const std::size_t m = grid_.size();
  std::vector<double> surv(m);
  double tail = prob[m];
  for (std::size_t i = m; i-- > 0;) {
    surv[i] = std::min(1.0, tail);  // S(t_{i+1}) = P(k >= i + 1)
    tail += prob[i];
  }
  return SurvivalCurve(grid_.points, std::move(surv), Interpolation::kLinear);
}

void MtlrModel::serialize(std::ostream& out) const {
  out << name() << '\n';
  text_io::write_scalar(out, "reg_c", reg_c_);
  text_io::write_values(out, "grid", grid_.points);
  text_io::write_matrix(out, "theta", theta_);
}

MtlrModel fit_mtlr_fixed(const SurvivalDataset& d, const TimeGrid& grid,
                         double c, const MtlrFitOptions& options,
                         const Eigen::MatrixXd* warm_start) {
  if (d.empty()) throw FitError("MTLR fit needs data");
  if (!(c >= 0.0)) throw Error("MTLR regularization must be >= 0");
  const Eigen::Index rows = static_cast<Eigen::Index>(grid.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(d.num_features()) + 1;
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(rows * cols);
  if (warm_start != nullptr && warm_start->rows() == rows &&
      warm_start->cols() == cols) {
    x0 = Eigen::Map<const Eigen::VectorXd>(warm_start->data(), rows * cols);
  }
  const double inv_n = 1.0 / static_cast<double>(d.size());
  const Objective f = [&](const Eigen::VectorXd& v, Eigen::VectorXd& g) {
    const Eigen::Map<const Eigen::MatrixXd> theta(v.data(), rows, cols);
    const MtlrObjective obj = mtlr_loglik_grad(theta, d, grid, c);
    g = -inv_n * Eigen::Map<const Eigen::VectorXd>(obj.gradient.data(),
                                                   rows * cols);
    return -inv_n * obj.value;
  };
  LbfgsOptions lopt;
  lopt.gradient_tolerance = options.tol;
  lopt.max_iterations = options.max_iter;
  const LbfgsResult r = minimize_lbfgs(f, std::move(x0), lopt);
  if (!r.converged) {
    throw FitError("MTLR fit (C = " + std::to_string(c) +
                       ") did not converge: gradient norm " +
                       std::to_string(r.gradient_norm) + " after " +
                       std::to_string(r.iterations) + " iterations",
                   r.iterations, r.gradient_norm);
  }
  return MtlrModel(Eigen::Map<const Eigen::MatrixXd>(r.x.data(), rows, cols),
                   grid, c);
}

double mtlr_loglik(const MtlrModel& m, const SurvivalDataset& d) {
  return loglik(m.theta(), d, m.grid(), nullptr);
}

MtlrModel fit_mtlr(const SurvivalDataset& d, const TimeGrid& grid,
                   const MtlrFitOptions& options,
                   std::vector<MtlrCvScore>* cv_scores) {
  if (options.c_candidates.empty()) throw Error("no MTLR C candidates");
  std::vector<double> cs = options.c_candidates;
  // Largest C first: strongly regularized fits converge fastest and
  // warm-start the rest.
  std::sort(cs.begin(), cs.end(), std::greater<>());

  std::vector<double> scores(cs.size(), 0.0);
  if (cs.size() > 1) {
    const std::vector<Outcome> outcomes = d.outcomes();
    const FoldAssignment folds = make_folds(outcomes, options.cv_folds);
    for (std::size_t f = 0; f < folds.k; ++f) {
      const std::vector<std::size_t> tr = folds.train_rows(f);
      const std::vector<std::size_t> te = folds.test_rows(f);
      const SurvivalDataset train = d.subset(tr);
      const SurvivalDataset test = d.subset(te);
      Eigen::MatrixXd warm;
      for (std::size_t j = 0; j < cs.size(); ++j) {
        if (scores[j] == kNegInf) continue;
        try {
          const MtlrModel m = fit_mtlr_fixed(
              train, grid, cs[j], options, warm.size() ? &warm : nullptr);
          scores[j] += mtlr_loglik(m, test);
          warm = m.theta();
        } catch (const FitError&) {
          scores[j] = kNegInf;
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t j = 1; j < cs.size(); ++j) {
    if (scores[j] > scores[best]) best = j;  // strict: ties keep larger C
  }
  if (cv_scores != nullptr) {
    cv_scores->clear();
    for (std::size_t j = 0; j < cs.size(); ++j) {
      cv_scores->push_back({cs[j], scores[j]});
    }
  }
  if (scores[best] == kNegInf) {
    throw FitError("MTLR failed to converge for every C candidate");
  }
  return fit_mtlr_fixed(d, grid, cs[best], options);
}

}  // namespace isdkit
