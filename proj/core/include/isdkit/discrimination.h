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

#ifndef ISDKIT_DISCRIMINATION_H_
#define ISDKIT_DISCRIMINATION_H_

#include <limits>
#include <span>
#include <vector>

#include "isdkit/curve.h"
#include "isdkit/curve_tools.h"
#include "isdkit/dataset.h"

namespace isdkit {

enum class RiskKind { kNegativeMedian, kNegativeMean };

// What a model predicted for one validation patient.
struct Prediction {
  double risk = 0.0;
  double median = 0.0;  // capped at t0_km
  ExtendedCurve curve;
};

using PredictionSet = std::vector<Prediction>;

// Extends every curve, takes capped medians, and derives the risk score.
PredictionSet make_predictions(std::span<const SurvivalCurve> curves,
                               double t0_km,
                               RiskKind risk = RiskKind::kNegativeMedian);

// Harrell-style Concordance. Comparable pairs: t_i < t_j with delta_i = 1,
// plus pairs of deaths at the same time. A pair scores 1 when the earlier
// death has the higher risk and 0.5 on tied risk or tied death times.
// Throws isdkit::Error when no pair is comparable.
double concordance(std::span<const Outcome> v, std::span<const double> risks);
double concordance(std::span<const Outcome> v, const PredictionSet& preds);

// Number of comparable pairs as defined above.
std::size_t comparable_pairs(std::span<const Outcome> v);

// Mean |d - median| over the uncensored patients of v. Throws when v has no
// deaths.
double l1_uncensored(std::span<const Outcome> v, const PredictionSet& preds);

// Deaths contribute |d - median|, censored patients [c - median]_+.
double l1_hinge(std::span<const Outcome> v, const PredictionSet& preds);

// Conditional expected death time given survival past c:
// c + (integral of S over [c, inf)) / S(c); returns c when S(c) = 0.
double best_guess(double c, const ExtendedCurve& km);

// Censored patients enter with target best_guess(c) and weight
// alpha = 1 - S_km(c), where km is the extended training-fold KM.
double l1_margin(std::span<const Outcome> v, const PredictionSet& preds,
                 const ExtendedCurve& train_km);

enum class L1Variant { kUncensored, kMargin };

// The chosen aggregation with every time and median x replaced by
// log(max(x, eta)). train_km is only read for the margin variant.
double l1_log(std::span<const Outcome> v, const PredictionSet& preds,
              L1Variant variant, double eta,
              const ExtendedCurve* train_km = nullptr);

}  // namespace isdkit

#endif  // ISDKIT_DISCRIMINATION_H_
