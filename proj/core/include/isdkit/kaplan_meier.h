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

#ifndef ISDKIT_KAPLAN_MEIER_H_
#define ISDKIT_KAPLAN_MEIER_H_

#include <cstddef>
#include <span>
#include <vector>

#include "isdkit/curve.h"
#include "isdkit/dataset.h"

namespace isdkit {

struct RiskSetRow {
  double time;
  std::size_t at_risk;
  std::size_t deaths;
  std::size_t censored;
};

// Product-limit estimate. Knots sit at every distinct death time, plus one at
// the largest observed time so the curve records how far it was observed.
struct KMCurve {
  SurvivalCurve curve;
  std::vector<RiskSetRow> risk_sets;  // one row per distinct observed time

  double at(double t) const { return curve.at(t); }
};

// Deaths at a time are removed from the risk set before censorings at that
// same time. Throws isdkit::Error on empty input.
KMCurve fit_km(std::span<const Outcome> outcomes);
KMCurve fit_km(const SurvivalDataset& d);

// KM of the censoring distribution: the same estimator with the event flags
// flipped.
KMCurve fit_censoring_km(std::span<const Outcome> outcomes);
KMCurve fit_censoring_km(const SurvivalDataset& d);

inline double km_at(const KMCurve& k, double t) { return k.at(t); }

}  // namespace isdkit

#endif  // ISDKIT_KAPLAN_MEIER_H_
