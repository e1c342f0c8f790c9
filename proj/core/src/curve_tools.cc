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

#include "isdkit/curve_tools.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "isdkit/errors.h"

namespace isdkit {

double ExtendedCurve::at(double t) const {
  if (pieces_.empty()) return t < zero_time_ ? 1.0 : 0.0;
  if (t < pieces_.front().lo) return 1.0;
  if (t >= zero_time_) return 0.0;
  if (!base_.empty() && t <= base_.last_time()) return base_.at(t);
  const auto it = std::upper_bound(
      pieces_.begin(), pieces_.end(), t,
      [](double x, const Piece& p) { return x < p.lo; });
  const Piece& p = *(it - 1);
  if (t >= p.hi) return p.value_hi;
  const double w = (t - p.lo) / (p.hi - p.lo);
  return p.value_lo + (p.value_hi - p.value_lo) * w;
}

double ExtendedCurve::integral(double a, double b) const {
  if (b <= a) return 0.0;
  double total = 0.0;
  const double start = pieces_.empty() ? zero_time_ : pieces_.front().lo;
  if (a < start) total += std::min(b, start) - a;
  for (const Piece& p : pieces_) {
    const double lo = std::max(a, p.lo);
    const double hi = std::min(b, p.hi);
    if (hi <= lo) continue;
    const double slope = (p.value_hi - p.value_lo) / (p.hi - p.lo);
    const double v_lo = p.value_lo + slope * (lo - p.lo);
    const double v_hi = p.value_lo + slope * (hi - p.lo);
    total += 0.5 * (v_lo + v_hi) * (hi - lo);
  }
  return total;
}

ExtendedCurve extend_linear(SurvivalCurve c, double t0_km) {
  if (c.empty()) throw Error("cannot extend an empty curve");
  ExtendedCurve out;
  const auto times = c.times();
  const auto probs = c.probs();
  const bool step = c.kind() == Interpolation::kStep;

  double prev_t = 0.0;
  double prev_p = 1.0;
  std::ptrdiff_t zero_knot = -1;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] > prev_t) {
      out.pieces_.push_back(
          {prev_t, times[k], prev_p, step ? prev_p : probs[k]});
    }
    prev_t = times[k];
    prev_p = probs[k];
    if (probs[k] <= 0.0) {
      zero_knot = static_cast<std::ptrdiff_t>(k);
      break;
    }
  }

  if (zero_knot >= 0) {
    out.zero_time_ = times[zero_knot];
  } else {
    const double t_max = c.last_time();
    const double s_max = c.last_prob();
    double zero_time = 0.0;
    if (s_max > kFlatCurveThreshold || t_max <= 0.0) {
      if (!(t0_km > 0.0)) {
        throw Error("flat curve needs a positive t0_km for its extension");
      }
      zero_time = t0_km;
      out.fallback_applied_ = true;
    } else {
      zero_time = t_max / (1.0 - s_max);
    }
    if (zero_time > t_max) {
      out.pieces_.push_back({t_max, zero_time, s_max, 0.0});
    } else {
      zero_time = t_max;  // fallback target lies inside the curve: drop to 0
    }
    out.zero_time_ = zero_time;
  }
  out.base_ = std::move(c);
  return out;
}

double median_survival(const ExtendedCurve& c, double t0_km) {
  double median = c.zero_time();
  for (const ExtendedCurve::Piece& p : c.pieces()) {
    if (p.value_lo <= 0.5) {
      median = p.lo;
      break;
    }
    if (p.value_hi <= 0.5) {
      median = p.lo + (p.value_lo - 0.5) / (p.value_lo - p.value_hi) *
                          (p.hi - p.lo);
      break;
    }
  }
  return std::min(median, t0_km);
}

double mean_survival(const ExtendedCurve& c) {
  return c.integral(0.0, c.zero_time());
}

SurvivalCurve average_curves(std::span<const SurvivalCurve> curves) {
  if (curves.empty()) throw Error("cannot average an empty set of curves");
  std::set<double> knots;
  bool all_step = true;
  for (const SurvivalCurve& c : curves) {
    knots.insert(c.times().begin(), c.times().end());
    all_step = all_step && c.kind() == Interpolation::kStep;
  }
  std::vector<double> times(knots.begin(), knots.end());
  std::vector<double> probs;
  probs.reserve(times.size());
  const double n = static_cast<double>(curves.size());
  for (double t : times) {
    double sum = 0.0;
    for (const SurvivalCurve& c : curves) sum += c.at(t);
    probs.push_back(sum / n);
  }
  return SurvivalCurve(std::move(times), std::move(probs),
                       all_step ? Interpolation::kStep
                                : Interpolation::kLinear);
}

}  // namespace isdkit
