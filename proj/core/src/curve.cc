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

#include "isdkit/curve.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "isdkit/errors.h"

namespace isdkit {
namespace {

constexpr double kNoise = 1e-12;

}  // namespace

SurvivalCurve::SurvivalCurve(std::vector<double> times,
                             std::vector<double> probs, Interpolation kind)
    : times_(std::move(times)), probs_(std::move(probs)), kind_(kind) {
  if (times_.size() != probs_.size()) {
    throw Error("curve has " + std::to_string(times_.size()) + " times but " +
                std::to_string(probs_.size()) + " probabilities");
  }
  for (std::size_t k = 0; k < times_.size(); ++k) {
    const double t = times_[k];
    double& p = probs_[k];
    if (!std::isfinite(t) || t < 0.0) {
      throw Error("curve knot " + std::to_string(k) + " has invalid time");
    }
    if (k > 0 && !(t > times_[k - 1])) {
      throw Error("curve knot times must be strictly increasing");
    }
    if (!std::isfinite(p) || p < -kNoise || p > 1.0 + kNoise) {
      throw Error("curve knot " + std::to_string(k) +
                  " has probability outside [0, 1]");
    }
    p = std::clamp(p, 0.0, 1.0);
    const double prev = k == 0 ? 1.0 : probs_[k - 1];
    if (p > prev + kNoise) {
      throw Error("survival curve increases at knot " + std::to_string(k));
    }
    p = std::min(p, prev);
  }
}

double SurvivalCurve::at(double t) const {
  if (times_.empty()) return 1.0;
  // First knot strictly after t.
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const auto k = static_cast<std::size_t>(it - times_.begin());
  if (k == times_.size()) return probs_.back();
  if (kind_ == Interpolation::kStep) {
    return k == 0 ? 1.0 : probs_[k - 1];
  }
  if (t < 0.0) return 1.0;
  const double t0 = k == 0 ? 0.0 : times_[k - 1];
  const double p0 = k == 0 ? 1.0 : probs_[k - 1];
  const double t1 = times_[k];
  const double p1 = probs_[k];
  return p0 + (p1 - p0) * (t - t0) / (t1 - t0);
}

}  // namespace isdkit
