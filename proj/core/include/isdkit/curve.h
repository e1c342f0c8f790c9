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

#ifndef ISDKIT_CURVE_H_
#define ISDKIT_CURVE_H_

#include <cstddef>
#include <span>
#include <vector>

namespace isdkit {

enum class Interpolation {
  kStep,    // right-continuous step through the knots
  kLinear,  // piecewise linear, anchored at (0, 1) unless a knot sits at 0
};

// A survival curve stored as knots. Between knots the value follows the
// declared interpolation; before the first knot it is 1 (step) or the line
// from (0, 1) (linear); past the last knot it holds the last probability.
class SurvivalCurve {
 public:
  // The empty curve, S(t) = 1 everywhere.
  SurvivalCurve() = default;
  // Times must be finite, non-negative and strictly increasing; probabilities
  // in [0, 1] and non-increasing (rounding noise up to 1e-12 is absorbed).
  // Throws isdkit::Error otherwise.
  SurvivalCurve(std::vector<double> times, std::vector<double> probs,
                Interpolation kind);

  double at(double t) const;
  double operator()(double t) const { return at(t); }

  std::span<const double> times() const { return times_; }
  std::span<const double> probs() const { return probs_; }
  Interpolation kind() const { return kind_; }
  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  double last_time() const { return times_.empty() ? 0.0 : times_.back(); }
  double last_prob() const { return probs_.empty() ? 1.0 : probs_.back(); }

 private:
  std::vector<double> times_;
  std::vector<double> probs_;
  Interpolation kind_ = Interpolation::kStep;
};

inline double survival_at(const SurvivalCurve& c, double t) { return c.at(t); }

}  // namespace isdkit

#endif  // ISDKIT_CURVE_H_
