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

#include "isdkit/aft_weibull.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include <Eigen/Cholesky>

#include "isdkit/errors.h"
#include "isdkit/mtlr.h"
#include "text_io.h"

namespace isdkit {
namespace {

constexpr double kStepFloor = 1e-12;
// Likelihood decreases within rounding of the sum are not real decreases.
constexpr double kValueSlack = 1e-12;

}  // namespace

AftWeibullModel::AftWeibullModel(double intercept, Eigen::VectorXd coeffs,
                                 double log_scale, std::vector<double> grid)
    : intercept_(intercept),
      coeffs_(std::move(coeffs)),
      log_scale_(log_scale),
      grid_(std::move(grid)) {
  if (!std::isfinite(intercept_) || !std::isfinite(log_scale_) ||
      !coeffs_.allFinite()) {
    throw Error("AFT parameters must be finite");
  }
}

double AftWeibullModel::linear_predictor(std::span<const double> x) const {
  if (static_cast<Eigen::Index>(x.size()) != coeffs_.size()) {
    throw Error("covariate vector has " + std::to_string(x.size()) +
                " entries, model expects " + std::to_string(coeffs_.size()));
  }
  double eta = intercept_;
  for (std::size_t j = 0; j < x.size(); ++j) eta += coeffs_(j) * x[j];
  return eta;
}

double AftWeibullModel::shape() const { return std::exp(-log_scale_); }

double AftWeibullModel::scale(std::span<const double> x) const {
  return std::exp(linear_predictor(x));
}

double AftWeibullModel::survival(double t, std::span<const double> x) const {
  if (t <= 0.0) return 1.0;
  const double z = (std::log(t) - linear_predictor(x)) / std::exp(log_scale_);
  return std::exp(-std::exp(z));
}

SurvivalCurve AftWeibullModel::predict_curve(std::span<const double> x) const {
  if (grid_.empty()) throw Error("AFT model has no prediction grid");
  return predict_curve_aft(*this, x, grid_);
}

void AftWeibullModel::serialize(std::ostream& out) const {
  out << name() << '\n';
  text_io::write_scalar(out, "intercept", intercept_);
  text_io::write_scalar(out, "log_scale", log_scale_);
  text_io::write_values(out, "coeffs",
                        {coeffs_.data(), std::size_t(coeffs_.size())});
  text_io::write_values(out, "grid", grid_);
}

SurvivalCurve predict_curve_aft(const AftWeibullModel& m,
                                std::span<const double> x,
                                std::span<const double> grid) {
  std::vector<double> times(grid.begin(), grid.end());
  std::vector<double> probs;
  probs.reserve(times.size());
  for (double t : times) probs.push_back(m.survival(t, x));
  return SurvivalCurve(std::move(times), std::move(probs),
                       Interpolation::kLinear);
}

AftLikelihood aft_weibull_loglik(const SurvivalDataset& d,
                                 const Eigen::VectorXd& params,
                                 bool with_hessian) {
  const Eigen::Index p = static_cast<Eigen::Index>(d.num_features());
  if (params.size() != p + 2) throw Error("AFT parameter vector has wrong size");
  const std::vector<Outcome> outcomes = d.outcomes();
  const bool has_zero = std::any_of(outcomes.begin(), outcomes.end(),
                                    [](const Outcome& o) { return o.time <= 0; });
  const double eta_zero = has_zero ? eta_for(outcomes) : 0.0;

  const double s = params(p + 1);
  const double sigma = std::exp(s);
  AftLikelihood out;
  out.gradient = Eigen::VectorXd::Zero(p + 2);
  if (with_hessian) out.hessian = Eigen::MatrixXd::Zero(p + 2, p + 2);
  Eigen::VectorXd xt(p + 1);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Instance& inst = d[i];
    xt(0) = 1.0;
    for (Eigen::Index j = 0; j < p; ++j) xt(j + 1) = inst.features[j];
    const double eta = params.head(p + 1).dot(xt);
    const double log_t = std::log(inst.time > 0.0 ? inst.time : eta_zero);
    const double z = (log_t - eta) / sigma;
    const double ez = std::exp(z);
    const double delta = inst.event ? 1.0 : 0.0;
    const double g = delta - ez;
    out.value += delta * (z - s - log_t) - ez;
    out.gradient.head(p + 1) += (-g / sigma) * xt;
    out.gradient(p + 1) += -delta - z * g;
    if (with_hessian) {
      const double h_ee = -ez / (sigma * sigma);
      const double h_es = -z * ez / sigma + g / sigma;
      const double h_ss = z * g - z * z * ez;
      out.hessian.topLeftCorner(p + 1, p + 1).noalias() +=
          h_ee * xt * xt.transpose();
      out.hessian.col(p + 1).head(p + 1) += h_es * xt;
      out.hessian.row(p + 1).head(p + 1) += h_es * xt.transpose();
      out.hessian(p + 1, p + 1) += h_ss;
    }
  }
  return out;
}

AftWeibullModel fit_aft_weibull(const SurvivalDataset& d,
                                const AftFitOptions& options) {
  if (d.num_events() == 0) throw FitError("AFT fit needs at least one death");
  const Eigen::Index p = static_cast<Eigen::Index>(d.num_features());
  const std::vector<double> times = d.times();
  Eigen::VectorXd params = Eigen::VectorXd::Zero(p + 2);
  params(0) = std::log(std::accumulate(times.begin(), times.end(), 0.0) /
                       static_cast<double>(times.size()));
  if (!std::isfinite(params(0))) params(0) = 0.0;

  AftLikelihood ll = aft_weibull_loglik(d, params);
  double grad_norm = ll.gradient.lpNorm<Eigen::Infinity>();
  double lambda = 0.0;
  int iter = 0;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(p + 2, p + 2);
  while (grad_norm >= options.tol) {
    if (iter >= options.max_iter) {
      throw FitError("AFT fit did not converge after " + std::to_string(iter) +
                         " iterations (gradient norm " +
                         std::to_string(grad_norm) + ")",
                     iter, grad_norm);
    }
    ++iter;
    bool accepted = false;
    bool converged = false;
    for (int attempt = 0; attempt < 60; ++attempt) {
      Eigen::LLT<Eigen::MatrixXd> llt(-ll.hessian + lambda * eye);
      if (llt.info() == Eigen::Success) {
        const Eigen::VectorXd step = llt.solve(ll.gradient);
        // A step below rounding resolution cannot reduce the gradient further.
        if (lambda == 0.0 && step.lpNorm<Eigen::Infinity>() <=
                                 kStepFloor *
                                     (1.0 + params.lpNorm<Eigen::Infinity>())) {
          converged = true;
          break;
        }
        const Eigen::VectorXd candidate = params + step;
        AftLikelihood next = aft_weibull_loglik(d, candidate);
        if (std::isfinite(next.value) &&
            next.value >=
                ll.value - kValueSlack * (1.0 + std::abs(ll.value))) {
          params = candidate;
          ll = std::move(next);
          lambda *= 0.1;
          if (lambda < 1e-12) lambda = 0.0;
          accepted = true;
          break;
        }
      }
      lambda = lambda == 0.0 ? 1e-6 * (1.0 + ll.hessian.diagonal().cwiseAbs()
                                                 .maxCoeff())
                             : lambda * 10.0;
    }
    if (converged) break;
    if (!accepted) {
      throw FitError("AFT fit stalled: no ascent step found", iter, grad_norm);
    }
    grad_norm = ll.gradient.lpNorm<Eigen::Infinity>();
  }

  std::vector<double> grid = options.grid;
  if (grid.empty()) grid = make_grid(d, default_grid_size(d.size())).points;
  return AftWeibullModel(params(0), params.segment(1, p), params(p + 1),
                         std::move(grid));
}

}  // namespace isdkit
