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

#include "isdkit/discrimination.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "isdkit/errors.h"

namespace isdkit {
namespace {

void check_sizes(std::size_t outcomes, std::size_t preds) {
  if (outcomes != preds) {
    throw Error("have " + std::to_string(outcomes) + " outcomes but " +
                std::to_string(preds) + " predictions");
  }
}

double identity(double x) { return x; }

// Shared body of l1_margin and its log variant; `tr` maps times to the loss
// scale.
template <typename Transform>
double margin_loss(std::span<const Outcome> v, const PredictionSet& preds,
                   const ExtendedCurve& train_km, Transform tr) {
  check_sizes(v.size(), preds.size());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double m = tr(preds[i].median);
    if (v[i].event) {
      num += std::abs(tr(v[i].time) - m);
      den += 1.0;
    } else {
      const double alpha = 1.0 - train_km.at(v[i].time);
      if (alpha <= 0.0) continue;
      num += alpha * std::abs(tr(best_guess(v[i].time, train_km)) - m);
      den += alpha;
    }
  }
  if (!(den > 0.0)) throw Error("L1-margin has zero total weight");
  return num / den;
}

template <typename Transform>
double uncensored_loss(std::span<const Outcome> v, const PredictionSet& preds,
                       Transform tr) {
  check_sizes(v.size(), preds.size());
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].event) continue;
    sum += std::abs(tr(v[i].time) - tr(preds[i].median));
    ++n;
  }
  if (n == 0) throw Error("L1 loss needs at least one uncensored patient");
  return sum / static_cast<double>(n);
}

}  // namespace

PredictionSet make_predictions(std::span<const SurvivalCurve> curves,
                               double t0_km, RiskKind risk) {
  PredictionSet out;
  out.reserve(curves.size());
  for (const SurvivalCurve& c : curves) {
    Prediction p;
    p.curve = extend_linear(c, t0_km);
    p.median = median_survival(p.curve, t0_km);
    p.risk = risk == RiskKind::kNegativeMedian ? -p.median
                                               : -mean_survival(p.curve);
    out.push_back(std::move(p));
  }
  return out;
}

double concordance(std::span<const Outcome> v, std::span<const double> risks) {
  check_sizes(v.size(), risks.size());
  double score = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].event) continue;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[i].time < v[j].time) {
        ++pairs;
        if (risks[i] > risks[j]) {
          score += 1.0;
        } else if (risks[i] == risks[j]) {
          score += 0.5;
        }
      } else if (v[i].time == v[j].time && v[j].event && i < j) {
        ++pairs;
        score += 0.5;
      }
    }
  }
  if (pairs == 0) throw Error("Concordance undefined: no comparable pairs");
  return score / static_cast<double>(pairs);
}

double concordance(std::span<const Outcome> v, const PredictionSet& preds) {
  std::vector<double> risks;
  risks.reserve(preds.size());
  for (const Prediction& p : preds) risks.push_back(p.risk);
  return concordance(v, risks);
}

std::size_t comparable_pairs(std::span<const Outcome> v) {
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].event) continue;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[i].time < v[j].time ||
          (v[i].time == v[j].time && v[j].event && i < j)) {
        ++pairs;
      }
    }
  }
  return pairs;
}

double l1_uncensored(std::span<const Outcome> v, const PredictionSet& preds) {
  return uncensored_loss(v, preds, identity);
}

double l1_hinge(std::span<const Outcome> v, const PredictionSet& preds) {
  check_sizes(v.size(), preds.size());
  if (v.empty()) throw Error("L1-hinge needs at least one patient");
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double gap = v[i].time - preds[i].median;
    sum += v[i].event ? std::abs(gap) : std::max(gap, 0.0);
  }
  return sum / static_cast<double>(v.size());
}

double best_guess(double c, const ExtendedCurve& km) {
  const double s = km.at(c);
  if (s <= 0.0) return c;
  return c + km.integral(c, km.zero_time()) / s;
}

double l1_margin(std::span<const Outcome> v, const PredictionSet& preds,
                 const ExtendedCurve& train_km) {
  return margin_loss(v, preds, train_km, identity);
}

double l1_log(std::span<const Outcome> v, const PredictionSet& preds,
              L1Variant variant, double eta, const ExtendedCurve* train_km) {
  if (!(eta > 0.0)) throw Error("log-L1 needs eta > 0");
  const auto log_tr = [eta](double x) { return std::log(std::max(x, eta)); };
  if (variant == L1Variant::kUncensored) {
    return uncensored_loss(v, preds, log_tr);
  }
  if (train_km == nullptr) throw Error("log-L1 margin needs the training KM");
  return margin_loss(v, preds, *train_km, log_tr);
}

}  // namespace isdkit
