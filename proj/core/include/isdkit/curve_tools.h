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

#ifndef ISDKIT_CURVE_TOOLS_H_
#define ISDKIT_CURVE_TOOLS_H_

#include <limits>
#include <span>
#include <vector>

#include "isdkit/curve.h"

namespace isdkit {

// A curve carried down to probability zero. Values at or before the last
// knot are the base curve's; after it a straight segment runs to
// (zero_time, 0). Normally that segment lies on the line through (0, 1) and
// the last knot; when the base never leaves 1 the segment ends at the
// population fallback time instead.
class ExtendedCurve {
 public:
  // One maximal interval on which the curve is linear (possibly constant).
  struct Piece {
    double lo;
    double hi;
    double value_lo;  // limit from the right at lo
    double value_hi;  // limit from the left at hi
  };

  ExtendedCurve() = default;

  double at(double t) const;
  double operator()(double t) const { return at(t); }
  // Exact integral of S over [a, b], 0 <= a <= b.
  double integral(double a, double b) const;

  const SurvivalCurve& base() const { return base_; }
  double zero_time() const { return zero_time_; }
  bool fallback_applied() const { return fallback_applied_; }
  std::span<const Piece> pieces() const { return pieces_; }

 private:
  friend ExtendedCurve extend_linear(SurvivalCurve c, double t0_km);

  SurvivalCurve base_;
  double zero_time_ = 0.0;
  bool fallback_applied_ = false;
  std::vector<Piece> pieces_;
};

// S(t_max) above this counts as "never decreased" and triggers the fallback.
inline constexpr double kFlatCurveThreshold = 1.0 - 1e-10;

// Throws isdkit::Error for an empty curve, or when the fallback is needed
// and t0_km is not positive.
ExtendedCurve extend_linear(SurvivalCurve c, double t0_km);

// Smallest t with S(t) <= 0.5, capped at t0_km.
double median_survival(
    const ExtendedCurve& c,
    double t0_km = std::numeric_limits<double>::infinity());

// Integral of S from 0 to its zero time.
double mean_survival(const ExtendedCurve& c);

// Pointwise mean on the union of all knot times. Step if every input is a
// step curve, linear otherwise. Throws on empty input.
SurvivalCurve average_curves(std::span<const SurvivalCurve> curves);

}  // namespace isdkit

#endif  // ISDKIT_CURVE_TOOLS_H_
