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

#ifndef ISDKIT_CALIBRATION_H_
#define ISDKIT_CALIBRATION_H_

#include <cstddef>
#include <span>
#include <vector>

#include "isdkit/curve_tools.h"
#include "isdkit/dataset.h"
#include "isdkit/kaplan_meier.h"

namespace isdkit {

// Goodness-of-fit outcome: statistic, degrees of freedom, chi-square p-value.
struct TestResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

// Patients sorted by predicted survival at t* (highest first, stable) and cut
// into `bins` groups; the first n % bins groups hold one extra patient.
struct CalibrationBins {
  std::vector<std::size_t> n;
  std::vector<double> pbar;      // mean predicted event probability
  std::vector<double> observed;  // deaths by t*, or n_j (1 - KM_j(t*))
  std::vector<std::vector<std::size_t>> members;
};

CalibrationBins make_calibration_bins(std::span<const double> surv_at_tstar,
                                      int bins);

// Hosmer-Lemeshow on uncensored patients, dof = bins - 2. Throws when a
// patient is censored, n < bins, or a bin has pbar (1 - pbar) = 0.
TestResult one_calibration_hl(std::span<const Outcome> v_u,
                              std::span<const double> surv_at_tstar,
                              double tstar, int bins);

// D'Agostino-Nam: observed deaths per bin replaced by n_j (1 - KM_j(t*)),
// dof = bins - 1. Throws when all predictions are equal, when a bin consists
// solely of patients censored before t*, or on the HL degeneracies.
TestResult one_calibration_dn(std::span<const Outcome> v,
                              std::span<const double> surv_at_tstar,
                              double tstar, int bins);

// Mean squared error with target 0 for a death by t* and 1 otherwise. Every
// patient must be uncensored.
double brier_uncensored(std::span<const Outcome> v_u,
                        std::span<const double> surv_at_tstar, double tstar);

// IPCW Brier score: deaths by t* weighted 1 / G(t_i), patients still at risk
// after t* weighted 1 / G(t*), censored-before-t* patients contribute 0.
// Throws when G(t*) = 0.
double brier_censored(std::span<const Outcome> v,
                      std::span<const double> surv_at_tstar, double tstar,
                      const KMCurve& g_hat);

// (1 / tau) * integral of the censored Brier score over [0, tau]. The
// integrand is piecewise polynomial between knots, so each piece is
// integrated exactly. When G reaches 0 before tau the integral is truncated
// there (and normalized by the truncated length).
double integrated_brier(std::span<const Outcome> v,
                        std::span<const ExtendedCurve> curves, double tau,
                        const KMCurve& g_hat);

// Calibration histogram on [0, 1] cut into equal bins. The top bin is closed.
class DCalHistogram {
 public:
  explicit DCalHistogram(int bins);

  // A death whose predicted survival at death was s.
  void add_uncensored(double s);
  // A censored patient with predicted survival s at censoring: blurred over
  // its own bin and every lower one.
  void add_censored(double s);
  void merge(const DCalHistogram& other);

  int bins() const { return static_cast<int>(counts_.size()); }
  std::vector<double> edges() const;
  const std::vector<double>& counts() const { return counts_; }
  double n_total() const { return n_total_; }

 private:
  std::vector<double> counts_;
  double n_total_ = 0.0;
};

// Index of the bin containing s, with the top bin closed.
int dcal_bin_index(double s, int bins);

// Weights a censored patient adds to each bin; they sum to 1.
std::vector<double> censored_blur_weights(double s, int bins);

// Deaths placed at S(d | x); censorings blurred from S(c | x).
DCalHistogram dcal_histogram(std::span<const Outcome> v,
                             std::span<const ExtendedCurve> curves, int bins);

// Pearson chi-square against the uniform expectation, dof = bins - 1.
TestResult dcal_test(const DCalHistogram& h);

}  // namespace isdkit

#endif  // ISDKIT_CALIBRATION_H_
