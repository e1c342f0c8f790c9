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

#ifndef ISDKIT_AFT_WEIBULL_H_
#define ISDKIT_AFT_WEIBULL_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "isdkit/dataset.h"
#include "isdkit/model.h"

namespace isdkit {

// Weibull accelerated failure time model in log-time form:
//   log T = intercept + coeffs . x + sigma * W,  W ~ standard minimum
//   extreme value,  sigma = exp(log_scale).
// Equivalently S(t | x) = exp(-(t / lambda(x))^k), k = 1 / sigma,
// lambda(x) = exp(intercept + coeffs . x).
class AftWeibullModel final : public FittedModel {
 public:
  AftWeibullModel(double intercept, Eigen::VectorXd coeffs, double log_scale,
                  std::vector<double> grid = {});

  // Piecewise-linear curve sampled on the model's grid.
  using FittedModel::predict_curve;
  SurvivalCurve predict_curve(std::span<const double> x) const override;
  std::optional<double> risk(std::span<const double> x) const override {
    return -linear_predictor(x);
  }
  std::string_view name() const override { return "aft-weibull"; }
  void serialize(std::ostream& out) const override;

  double linear_predictor(std::span<const double> x) const;
  double survival(double t, std::span<const double> x) const;
  double shape() const;                          // k
  double scale(std::span<const double> x) const;  // lambda(x)

  double intercept() const { return intercept_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  double log_scale() const { return log_scale_; }
  const std::vector<double>& grid() const { return grid_; }

 private:
  double intercept_;
  Eigen::VectorXd coeffs_;
  double log_scale_;
  std::vector<double> grid_;
};

// Parameter vector layout: [intercept, coeffs..., log_scale].
struct AftLikelihood {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

// Censored log-likelihood sum_U log f(t | x) + sum_C log S(t | x). Zero times
// are replaced by eta_for(d) first.
AftLikelihood aft_weibull_loglik(const SurvivalDataset& d,
                                 const Eigen::VectorXd& params,
                                 bool with_hessian = true);

struct AftFitOptions {
  double tol = 1e-8;  // gradient infinity-norm
  int max_iter = 200;
  std::vector<double> grid;  // emitted-curve knots; empty = derive from data
};

// Damped Newton ascent from intercept = log(mean time), coeffs = 0,
// log_scale = 0. Throws FitError without deaths or on non-convergence.
AftWeibullModel fit_aft_weibull(const SurvivalDataset& d,
                                const AftFitOptions& options = {});

SurvivalCurve predict_curve_aft(const AftWeibullModel& m,
                                std::span<const double> x,
                                std::span<const double> grid);

}  // namespace isdkit

#endif  // ISDKIT_AFT_WEIBULL_H_
