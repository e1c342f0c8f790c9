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

#ifndef ISDKIT_MTLR_H_
#define ISDKIT_MTLR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "isdkit/dataset.h"
#include "isdkit/model.h"

namespace isdkit {

// Strictly increasing positive time points t_1 < ... < t_m.
struct TimeGrid {
  std::vector<double> points;

  std::size_t size() const { return points.size(); }
};

// min(ceil(sqrt(n)), 50), and never below 2.
std::size_t default_grid_size(std::size_t n);

// The m empirical quantiles (levels j/m, inverse-ECDF) of all observed times,
// de-duplicated. Falls back to m evenly spaced points on (0, t_max] when fewer
// than two distinct quantiles remain. Throws on empty input or m < 2.
TimeGrid make_grid(std::span<const Outcome> outcomes, std::size_t m);
TimeGrid make_grid(const SurvivalDataset& d, std::size_t m);

// Sequence k (0..m) is the status vector with y_i = 1 exactly for i > k:
// death in (t_k, t_{k+1}] with t_0 = 0 and t_{m+1} = infinity.
// A label is the contiguous range of sequences consistent with an outcome:
// a death pins one sequence, a censoring admits every sequence whose death
// interval is not known to have passed.
struct SequenceLabel {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive; always m for censored outcomes
};

SequenceLabel encode_label(double t, bool event, const TimeGrid& grid);
// The m binary statuses of sequence k.
std::vector<int> status_sequence(std::size_t k, std::size_t m);

// Objective (to maximize) and its gradient with respect to theta.
struct MtlrObjective {
  double value = 0.0;
  Eigen::MatrixXd gradient;
};

// theta is m x (p + 1): column 0 is the per-time bias, the rest multiply the
// features. value = sum of per-patient log-likelihoods (censored patients
// marginalized over their consistent sequences) - c/2 * ||theta||_F^2.
MtlrObjective mtlr_loglik_grad(const Eigen::MatrixXd& theta,
                               const SurvivalDataset& d, const TimeGrid& grid,
                               double c);

class MtlrModel final : public FittedModel {
 public:
  MtlrModel(Eigen::MatrixXd theta, TimeGrid grid, double reg_c);

  // Linear through (0, 1) and (t_i, S(t_i)), S(t_i) = P(sequence >= i).
  using FittedModel::predict_curve;
  SurvivalCurve predict_curve(std::span<const double> x) const override;
  std::string_view name() const override { return "mtlr"; }
  void serialize(std::ostream& out) const override;

  // P(sequence k | x) for k = 0..m.
  std::vector<double> sequence_probabilities(std::span<const double> x) const;

  const Eigen::MatrixXd& theta() const { return theta_; }
  const TimeGrid& grid() const { return grid_; }
  double reg_c() const { return reg_c_; }

 private:
  Eigen::MatrixXd theta_;
  TimeGrid grid_;
  double reg_c_;
};

struct MtlrFitOptions {
  std::vector<double> c_candidates = {0.01, 0.1, 1.0, 10.0, 100.0};
  std::size_t cv_folds = 5;
  double tol = 1e-6;
  int max_iter = 5000;
};

// Maximizes the objective for one regularization constant. The optimizer
// works on the objective divided by n, so `tol` bounds the gradient of the
// per-patient average. Throws FitError on non-convergence.
MtlrModel fit_mtlr_fixed(const SurvivalDataset& d, const TimeGrid& grid,
                         double c, const MtlrFitOptions& options = {},
                         const Eigen::MatrixXd* warm_start = nullptr);

// Per-candidate held-out log-likelihood, summed over the internal folds.
struct MtlrCvScore {
  double c;
  double heldout_loglik;
};

// Picks C by internal k-fold CV on held-out marginal log-likelihood (ties go
// to the larger C), then refits on all of d.
MtlrModel fit_mtlr(const SurvivalDataset& d, const TimeGrid& grid,
                   const MtlrFitOptions& options = {},
                   std::vector<MtlrCvScore>* cv_scores = nullptr);

// Marginal log-likelihood of d under a fitted model (no penalty).
double mtlr_loglik(const MtlrModel& m, const SurvivalDataset& d);

inline SurvivalCurve predict_curve_mtlr(const MtlrModel& m,
                                        std::span<const double> x) {
  return m.predict_curve(x);
}

}  // namespace isdkit

#endif  // ISDKIT_MTLR_H_
