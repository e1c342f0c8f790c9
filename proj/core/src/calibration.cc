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

#include "isdkit/calibration.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "isdkit/errors.h"
#include "isdkit/stats.h"

namespace isdkit {
namespace {

void check_sizes(std::size_t outcomes, std::size_t preds) {
  if (outcomes != preds) {
    throw Error("have " + std::to_string(outcomes) + " outcomes but " +
                std::to_string(preds) + " predictions");
  }
}

TestResult hl_statistic(const CalibrationBins& b, int dof) {
  TestResult r;
  for (std::size_t j = 0; j < b.n.size(); ++j) {
    const double n = static_cast<double>(b.n[j]);
    const double var = n * b.pbar[j] * (1.0 - b.pbar[j]);
    if (!(var > 0.0)) {
      throw Error("1-Calibration bin " + std::to_string(j + 1) +
                  " has zero variance (mean prediction " +
                  std::to_string(b.pbar[j]) + ")");
    }
    const double gap = b.observed[j] - n * b.pbar[j];
    r.statistic += gap * gap / var;
  }
  r.dof = dof;
  r.p_value = chi2_sf(r.statistic, dof);
  return r;
}

void check_bins(std::size_t n, int bins, int min_bins) {
  if (bins < min_bins) {
    throw Error("1-Calibration needs at least " + std::to_string(min_bins) +
                " bins");
  }
  if (n < static_cast<std::size_t>(bins)) {
    throw Error("1-Calibration needs at least one patient per bin");
  }
}

}  // namespace

CalibrationBins make_calibration_bins(std::span<const double> surv_at_tstar,
                                      int bins) {
  if (bins < 1) throw Error("bin count must be positive");
  const std::size_t n = surv_at_tstar.size();
  const auto b = static_cast<std::size_t>(bins);
  if (n < b) throw Error("fewer patients than bins");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) {
                     return surv_at_tstar[x] > surv_at_tstar[y];
                   });
  CalibrationBins out;
  std::size_t pos = 0;
  for (std::size_t j = 0; j < b; ++j) {
    const std::size_t size = n / b + (j < n % b ? 1 : 0);
    std::vector<std::size_t> members(order.begin() + pos,
                                     order.begin() + pos + size);
    pos += size;
    double sum = 0.0;
    for (std::size_t i : members) sum += 1.0 - surv_at_tstar[i];
    out.n.push_back(size);
    out.pbar.push_back(sum / static_cast<double>(size));
    out.observed.push_back(0.0);
    out.members.push_back(std::move(members));
  }
  return out;
}

TestResult one_calibration_hl(std::span<const Outcome> v_u,
                              std::span<const double> surv_at_tstar,
                              double tstar, int bins) {
  check_sizes(v_u.size(), surv_at_tstar.size());
  check_bins(v_u.size(), bins, 3);
  for (const Outcome& o : v_u) {
    if (!o.event) throw Error("Hosmer-Lemeshow needs uncensored patients");
  }
  CalibrationBins b = make_calibration_bins(surv_at_tstar, bins);
  for (std::size_t j = 0; j < b.n.size(); ++j) {
    for (std::size_t i : b.members[j]) {
      b.observed[j] += v_u[i].time <= tstar ? 1.0 : 0.0;
    }
  }
  return hl_statistic(b, bins - 2);
}

TestResult one_calibration_dn(std::span<const Outcome> v,
                              std::span<const double> surv_at_tstar,
                              double tstar, int bins) {
  check_sizes(v.size(), surv_at_tstar.size());
  check_bins(v.size(), bins, 2);
  const auto [lo, hi] =
      std::minmax_element(surv_at_tstar.begin(), surv_at_tstar.end());
  if (*lo == *hi) {
    throw Error("all predictions at t* are equal; the patients cannot be " +
                std::string("binned for 1-Calibration"));
  }
  CalibrationBins b = make_calibration_bins(surv_at_tstar, bins);
  for (std::size_t j = 0; j < b.n.size(); ++j) {
    std::vector<Outcome> group;
    bool informative = false;
    for (std::size_t i : b.members[j]) {
      group.push_back(v[i]);
      informative = informative || v[i].event || v[i].time >= tstar;
    }
    if (!informative) {
      throw Error("1-Calibration bin " + std::to_string(j + 1) +
                  " holds only patients censored before t*");
    }
    const double km = fit_km(group).at(tstar);
    b.observed[j] = static_cast<double>(b.n[j]) * (1.0 - km);
  }
  return hl_statistic(b, bins - 1);
}

double brier_uncensored(std::span<const Outcome> v_u,
                        std::span<const double> surv_at_tstar, double tstar) {
  check_sizes(v_u.size(), surv_at_tstar.size());
  if (v_u.empty()) throw Error("Brier score needs at least one patient");
  double sum = 0.0;
  for (std::size_t i = 0; i < v_u.size(); ++i) {
    if (!v_u[i].event) throw Error("uncensored Brier got a censored patient");
    const double target = v_u[i].time <= tstar ? 0.0 : 1.0;
    const double gap = target - surv_at_tstar[i];
    sum += gap * gap;
  }
  return sum / static_cast<double>(v_u.size());
}

double brier_censored(std::span<const Outcome> v,
                      std::span<const double> surv_at_tstar, double tstar,
                      const KMCurve& g_hat) {
  check_sizes(v.size(), surv_at_tstar.size());
  if (v.empty()) throw Error("Brier score needs at least one patient");
  const double g_star = g_hat.at(tstar);
  if (!(g_star > 0.0)) {
    throw Error("censoring survival is 0 at t*; the IPCW Brier score is " +
                std::string("undefined there"));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double s = surv_at_tstar[i];
    if (v[i].time <= tstar) {
      if (v[i].event) sum += s * s / g_hat.at(v[i].time);
    } else {
      sum += (1.0 - s) * (1.0 - s) / g_star;
    }
  }
  return sum / static_cast<double>(v.size());
}

double integrated_brier(std::span<const Outcome> v,
                        std::span<const ExtendedCurve> curves, double tau,
                        const KMCurve& g_hat) {
  check_sizes(v.size(), curves.size());
  if (v.empty()) throw Error("Brier score needs at least one patient");
  if (!(tau > 0.0)) throw Error("integrated Brier needs tau > 0");

  const auto g_times = g_hat.curve.times();
  const auto g_probs = g_hat.curve.probs();
  double horizon = tau;
  for (std::size_t k = 0; k < g_times.size(); ++k) {
    if (g_probs[k] <= 0.0) {
      horizon = std::min(horizon, g_times[k]);
      break;
    }
  }
  if (!(horizon > 0.0)) {
    throw Error("censoring survival is 0 from the start; integrated Brier " +
                std::string("undefined"));
  }

  // Two-point Gauss-Legendre is exact for the piecewise quadratic integrand.
  const double node = 0.5 / std::sqrt(3.0);
  double total = 0.0;
  std::vector<double> cuts;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const ExtendedCurve& c = curves[i];
    const double t_i = v[i].time;
    const double g_i = t_i <= horizon ? g_hat.at(t_i) : 1.0;
    cuts.assign({0.0, horizon});
    if (t_i < horizon) cuts.push_back(t_i);
    for (double t : g_times) {
      if (t < horizon) cuts.push_back(t);
    }
    for (const ExtendedCurve::Piece& p : c.pieces()) {
      if (p.lo < horizon) cuts.push_back(p.lo);
      if (p.hi < horizon) cuts.push_back(p.hi);
    }
    if (c.zero_time() < horizon) cuts.push_back(c.zero_time());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const auto integrand = [&](double t) {
      const double s = c.at(t);
      if (t < t_i) return (1.0 - s) * (1.0 - s) / g_hat.at(t);
      return v[i].event ? s * s / g_i : 0.0;
    };
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double a = cuts[k];
      const double b = cuts[k + 1];
      const double mid = 0.5 * (a + b);
      const double half = b - a;
      total += 0.5 * half *
               (integrand(mid - node * half) + integrand(mid + node * half));
    }
  }
  return total / (static_cast<double>(v.size()) * horizon);
}

DCalHistogram::DCalHistogram(int bins) {
  if (bins < 2) throw Error("D-Calibration needs at least 2 bins");
  counts_.assign(static_cast<std::size_t>(bins), 0.0);
}

void DCalHistogram::add_uncensored(double s) {
  counts_[static_cast<std::size_t>(dcal_bin_index(s, bins()))] += 1.0;
  n_total_ += 1.0;
}

void DCalHistogram::add_censored(double s) {
  const std::vector<double> w = censored_blur_weights(s, bins());
  for (std::size_t k = 0; k < w.size(); ++k) counts_[k] += w[k];
  n_total_ += 1.0;
}

void DCalHistogram::merge(const DCalHistogram& other) {
  if (other.bins() != bins()) throw Error("D-Cal histograms differ in bins");
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    counts_[k] += other.counts_[k];
  }
  n_total_ += other.n_total_;
}

std::vector<double> DCalHistogram::edges() const {
  std::vector<double> e;
  const int b = bins();
  for (int k = 0; k <= b; ++k) e.push_back(static_cast<double>(k) / b);
  return e;
}

int dcal_bin_index(double s, int bins) {
  if (!(s >= 0.0 && s <= 1.0)) throw Error("survival probability outside [0,1]");
  return std::min(static_cast<int>(std::floor(s * bins)), bins - 1);
}

std::vector<double> censored_blur_weights(double s, int bins) {
  if (bins < 2) throw Error("D-Calibration needs at least 2 bins");
  std::vector<double> w(static_cast<std::size_t>(bins), 0.0);
  if (s <= 0.0) {
    w[0] = 1.0;
    return w;
  }
  // Worked in units of bin widths so that grid-aligned inputs stay exact.
  const int own = dcal_bin_index(s, bins);
  const double scaled = s * bins;
  w[static_cast<std::size_t>(own)] = (scaled - own) / scaled;
  for (int k = 0; k < own; ++k) w[static_cast<std::size_t>(k)] = 1.0 / scaled;
  return w;
}

DCalHistogram dcal_histogram(std::span<const Outcome> v,
                             std::span<const ExtendedCurve> curves, int bins) {
  check_sizes(v.size(), curves.size());
  DCalHistogram h(bins);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double s = curves[i].at(v[i].time);
    if (v[i].event) {
      h.add_uncensored(s);
    } else {
      h.add_censored(s);
    }
  }
  return h;
}

TestResult dcal_test(const DCalHistogram& h) {
  if (!(h.n_total() > 0.0)) throw Error("D-Calibration histogram is empty");
  const double expected = h.n_total() / h.bins();
  TestResult r;
  for (double c : h.counts()) r.statistic += (c - expected) * (c - expected);
  r.statistic /= expected;
  r.dof = h.bins() - 1;
  r.p_value = chi2_sf(r.statistic, r.dof);
  return r;
}

}  // namespace isdkit
