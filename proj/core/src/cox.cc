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

#include "isdkit/cox.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include <Eigen/Cholesky>

#include "isdkit/errors.h"
#include "isdkit/stats.h"
#include "text_io.h"

namespace isdkit {
namespace {

constexpr double kStepFloor = 1e-12;
// Likelihood decreases within rounding of the sum are not real decreases.
constexpr double kValueSlack = 1e-12;

Eigen::Map<const Eigen::VectorXd> as_vector(std::span<const double> x) {
  return {x.data(), static_cast<Eigen::Index>(x.size())};
}

// Row indices ordered by decreasing time.
std::vector<std::size_t> by_time_desc(const SurvivalDataset& d) {
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    return d[a].time > d[b].time;
  });
  return order;
}

Eigen::MatrixXd design(const SurvivalDataset& d) {
  Eigen::MatrixXd x(d.size(), d.num_features());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i].features.size() != d.num_features()) {
      throw Error("instance " + std::to_string(i) + " has wrong arity");
    }
    for (std::size_t j = 0; j < d.num_features(); ++j) {
      x(i, j) = d[i].features[j];
    }
  }
  return x;
}

}  // namespace

PartialLikelihood cox_partial_loglik(const SurvivalDataset& d,
                                     const Eigen::VectorXd& beta,
                                     bool with_hessian) {
  const Eigen::Index p = static_cast<Eigen::Index>(d.num_features());
  if (beta.size() != p) throw Error("beta has the wrong length");
  const Eigen::MatrixXd x = design(d);
  const Eigen::VectorXd eta = x * beta;
  const double shift = eta.size() == 0 ? 0.0 : eta.maxCoeff();

  PartialLikelihood out;
  out.gradient = Eigen::VectorXd::Zero(p);
  if (with_hessian) out.hessian = Eigen::MatrixXd::Zero(p, p);

  double s0 = 0.0;
  Eigen::VectorXd s1 = Eigen::VectorXd::Zero(p);
  Eigen::MatrixXd s2 = Eigen::MatrixXd::Zero(p, p);
  const std::vector<std::size_t> order = by_time_desc(d);
  for (std::size_t pos = 0; pos < order.size();) {
    const double t = d[order[pos]].time;
    std::size_t deaths = 0;
    Eigen::VectorXd death_x = Eigen::VectorXd::Zero(p);
    double death_eta = 0.0;
    for (; pos < order.size() && d[order[pos]].time == t; ++pos) {
      const std::size_t i = order[pos];
      const double r = std::exp(eta(i) - shift);
      s0 += r;
      s1 += r * x.row(i).transpose();
      if (with_hessian) {
        s2.noalias() += r * x.row(i).transpose() * x.row(i);
      }
      if (d[i].event) {
        ++deaths;
        death_x += x.row(i).transpose();
        death_eta += eta(i);
      }
    }
    if (deaths == 0) continue;
    const double dd = static_cast<double>(deaths);
    const Eigen::VectorXd mean = s1 / s0;
    out.value += death_eta - dd * (std::log(s0) + shift);
    out.gradient += death_x - dd * mean;
    if (with_hessian) {
      out.hessian -= dd * (s2 / s0 - mean * mean.transpose());
    }
  }
  return out;
}

CoxModel::CoxModel(Eigen::VectorXd beta, SurvivalCurve baseline,
                   int iterations, double gradient_norm,
                   Eigen::VectorXd standard_errors)
    : beta_(std::move(beta)),
      baseline_(std::move(baseline)),
      iterations_(iterations),
      gradient_norm_(gradient_norm),
      standard_errors_(std::move(standard_errors)) {}

double CoxModel::linear_predictor(std::span<const double> x) const {
  if (static_cast<Eigen::Index>(x.size()) != beta_.size()) {
    throw Error("covariate vector has " + std::to_string(x.size()) +
                " entries, model expects " + std::to_string(beta_.size()));
  }
  return beta_.dot(as_vector(x));
}

SurvivalCurve CoxModel::predict_curve(std::span<const double> x) const {
  const double r = std::exp(linear_predictor(x));
  std::vector<double> times(baseline_.times().begin(),
                            baseline_.times().end());
  std::vector<double> probs;
  probs.reserve(times.size());
  for (double s0 : baseline_.probs()) {
    probs.push_back(s0 <= 0.0 ? 0.0 : std::exp(r * std::log(s0)));
  }
  return SurvivalCurve(std::move(times), std::move(probs),
                       Interpolation::kStep);
}

void CoxModel::serialize(std::ostream& out) const {
  out << name() << '\n';
  text_io::write_values(out, "beta", {beta_.data(), std::size_t(beta_.size())});
  text_io::write_values(out, "times", baseline_.times());
  text_io::write_values(out, "probs", baseline_.probs());
}

SurvivalCurve kalbfleisch_prentice_baseline(const SurvivalDataset& d,
                                            const Eigen::VectorXd& beta) {
  if (d.empty()) throw Error("baseline needs at least one patient");
  const Eigen::MatrixXd x = design(d);
  const Eigen::VectorXd r = (x * beta).array().exp();
  const std::vector<std::size_t> order = by_time_desc(d);

  // Walk from the latest time down, accumulating the risk-set sum; then
  // reverse to emit the product in time order.
  std::vector<double> death_times;
  std::vector<double> alphas;
  double risk_sum = 0.0;
  for (std::size_t pos = 0; pos < order.size();) {
    const double t = d[order[pos]].time;
    std::vector<double> death_r;
    for (; pos < order.size() && d[order[pos]].time == t; ++pos) {
      const std::size_t i = order[pos];
      risk_sum += r(i);
      if (d[i].event) death_r.push_back(r(i));
    }
    if (death_r.empty()) continue;
    const double death_sum =
        std::accumulate(death_r.begin(), death_r.end(), 0.0);
    double alpha = 0.0;
    if (death_sum >= risk_sum * (1.0 - 1e-14)) {
      alpha = 0.0;
    } else if (death_r.size() == 1) {
      const double rd = death_r[0];
      alpha = std::pow(1.0 - rd / risk_sum, 1.0 / rd);
    } else {
      // Solve sum_D r / (1 - a^r) = risk_sum for u = log a < 0; the left side
      // increases in u.
      const auto lhs = [&](double u) {
        double s = 0.0;
        for (double rd : death_r) s += rd / -std::expm1(rd * u);
        return s;
      };
      double lo = -1.0;
      while (lhs(lo) >= risk_sum && lo > -1e6) lo *= 2.0;
      double hi = 0.0;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo));
           ++it) {
        const double mid = 0.5 * (lo + hi);
        if (lhs(mid) < risk_sum) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      alpha = std::exp(0.5 * (lo + hi));
    }
    death_times.push_back(t);
    alphas.push_back(alpha);
  }

  std::vector<double> times;
  std::vector<double> probs;
  double s = 1.0;
  for (std::size_t k = death_times.size(); k-- > 0;) {
    s *= alphas[k];
    times.push_back(death_times[k]);
    probs.push_back(s);
  }
  const double t_max = d[order.front()].time;
  if (times.empty() || times.back() < t_max) {
    times.push_back(t_max);
    probs.push_back(s);
  }
  return SurvivalCurve(std::move(times), std::move(probs),
                       Interpolation::kStep);
}

CoxModel fit_cox(const SurvivalDataset& d, const CoxFitOptions& options) {
  if (d.num_events() == 0) throw FitError("Cox fit needs at least one death");
  const Eigen::Index p = static_cast<Eigen::Index>(d.num_features());
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  PartialLikelihood pl = cox_partial_loglik(d, beta);
  double grad_norm = p == 0 ? 0.0 : pl.gradient.lpNorm<Eigen::Infinity>();
  int iter = 0;

  const auto factor = [&](const Eigen::MatrixXd& info) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
    const Eigen::VectorXd diag = ldlt.vectorD().cwiseAbs();
    if (p > 0 && (ldlt.info() != Eigen::Success ||
                  diag.minCoeff() <= 1e-10 * diag.maxCoeff() ||
                  diag.maxCoeff() == 0.0)) {
      throw SingularMatrixError(
          "Cox information matrix is singular; remove constant or collinear "
          "features",
          iter, grad_norm);
    }
    return ldlt;
  };

  while (grad_norm >= options.tol) {
    if (iter >= options.max_iter) {
      throw FitError("Cox fit did not converge after " + std::to_string(iter) +
                         " iterations (gradient norm " +
                         std::to_string(grad_norm) + ")",
                     iter, grad_norm);
    }
    ++iter;
    const Eigen::VectorXd step = factor(-pl.hessian).solve(pl.gradient);
    // A step below rounding resolution cannot reduce the gradient further.
    if (step.lpNorm<Eigen::Infinity>() <=
        kStepFloor * (1.0 + beta.lpNorm<Eigen::Infinity>())) {
      break;
    }
    double scale = 1.0;
    const double accept_floor = pl.value - kValueSlack * (1.0 + std::abs(pl.value));
    PartialLikelihood next;
    Eigen::VectorXd candidate;
    for (int h = 0; h < 40; ++h) {
      candidate = beta + scale * step;
      next = cox_partial_loglik(d, candidate);
      if (std::isfinite(next.value) && next.value >= accept_floor) break;
      scale *= 0.5;
    }
    if (!(std::isfinite(next.value) && next.value >= accept_floor)) {
      throw FitError("Cox fit stalled: no ascent along the Newton direction",
                     iter, grad_norm);
    }
    beta = std::move(candidate);
    pl = std::move(next);
    grad_norm = pl.gradient.lpNorm<Eigen::Infinity>();
  }

  Eigen::VectorXd se;
  if (p > 0) {
    const Eigen::MatrixXd cov =
        factor(-pl.hessian).solve(Eigen::MatrixXd::Identity(p, p));
    se = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  }
  return CoxModel(beta, kalbfleisch_prentice_baseline(d, beta), iter,
                  grad_norm, std::move(se));
}

double univariate_cox_pvalue(std::span<const double> feature,
                             std::span<const Outcome> outcomes) {
  if (feature.size() != outcomes.size()) {
    throw Error("feature and outcomes differ in length");
  }
  std::vector<double> values;
  std::vector<Outcome> kept;
  for (std::size_t i = 0; i < feature.size(); ++i) {
    if (std::isnan(feature[i])) continue;
    values.push_back(feature[i]);
    kept.push_back(outcomes[i]);
  }
  if (values.size() < 2) return 1.0;
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  if (*mn == *mx) return 1.0;

  // Centre and scale for conditioning; the Wald statistic is invariant.
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(values.size()));
  std::vector<Instance> rows(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    rows[i] = {{(values[i] - mean) / sd}, kept[i].time, kept[i].event};
  }
  try {
    const CoxModel m = fit_cox(SurvivalDataset({"x"}, std::move(rows)));
    const double se = m.standard_errors()(0);
    if (!(se > 0.0) || !std::isfinite(se)) return 1.0;
    return 2.0 * normal_cdf(-std::abs(m.beta()(0)) / se);
  } catch (const Error&) {
    return 1.0;
  }
}

double univariate_cox_pvalue(const SurvivalDataset& d,
                             std::size_t feature_index) {
  const std::vector<double> column = d.feature_column(feature_index);
  const std::vector<Outcome> outcomes = d.outcomes();
  return univariate_cox_pvalue(column, outcomes);
}

}  // namespace isdkit
