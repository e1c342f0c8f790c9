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

#ifndef ISDKIT_COX_H_
#define ISDKIT_COX_H_

#include <cstddef>
#include <span>

#include <Eigen/Core>

#include "isdkit/curve.h"
#include "isdkit/dataset.h"
#include "isdkit/model.h"

namespace isdkit {

struct CoxFitOptions {
  int max_iter = 100;
  double tol = 1e-8;  // gradient infinity-norm
};

// Log partial likelihood with Breslow ties, and its derivatives.
struct PartialLikelihood {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;  // filled only when requested
};

PartialLikelihood cox_partial_loglik(const SurvivalDataset& d,
                                     const Eigen::VectorXd& beta,
                                     bool with_hessian = true);

// Proportional hazards with a Kalbfleisch-Prentice baseline:
// S(t | x) = S0(t)^exp(beta . x).
class CoxModel final : public FittedModel {
 public:
  CoxModel(Eigen::VectorXd beta, SurvivalCurve baseline, int iterations = 0,
           double gradient_norm = 0.0, Eigen::VectorXd standard_errors = {});

  using FittedModel::predict_curve;
  SurvivalCurve predict_curve(std::span<const double> x) const override;
  std::optional<double> risk(std::span<const double> x) const override {
    return linear_predictor(x);
  }
  std::string_view name() const override { return "cox-kp"; }
  void serialize(std::ostream& out) const override;

  double linear_predictor(std::span<const double> x) const;
  const Eigen::VectorXd& beta() const { return beta_; }
  const SurvivalCurve& baseline() const { return baseline_; }
  // sqrt(diag(I^-1)) at the fitted beta; empty for hand-built models.
  const Eigen::VectorXd& standard_errors() const { return standard_errors_; }
  int iterations() const { return iterations_; }
  double gradient_norm() const { return gradient_norm_; }

 private:
  Eigen::VectorXd beta_;
  SurvivalCurve baseline_;
  int iterations_;
  double gradient_norm_;
  Eigen::VectorXd standard_errors_;
};

// Safeguarded Newton-Raphson (step halving on likelihood decrease), then the
// KP baseline. Throws SingularMatrixError when the information matrix is
// singular and FitError on non-convergence.
CoxModel fit_cox(const SurvivalDataset& d, const CoxFitOptions& options = {});

// KP baseline survival for a fixed coefficient vector. At each distinct death
// time the conditional survival factor solves
//   sum_{deaths} r_j / (1 - a^r_j) = sum_{risk set} r_j,   r_j = exp(beta.x_j).
SurvivalCurve kalbfleisch_prentice_baseline(const SurvivalDataset& d,
                                            const Eigen::VectorXd& beta);

// Two-sided Wald p-value of a one-feature Cox fit. Returns 1 for a feature
// with fewer than two distinct values or when the fit fails. NaN entries of
// `feature` are skipped.
double univariate_cox_pvalue(std::span<const double> feature,
                             std::span<const Outcome> outcomes);
double univariate_cox_pvalue(const SurvivalDataset& d,
                             std::size_t feature_index);

}  // namespace isdkit

#endif  // ISDKIT_COX_H_
