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

#ifndef ISDKIT_MODEL_H_
#define ISDKIT_MODEL_H_

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string_view>

#include "isdkit/curve.h"
#include "isdkit/dataset.h"
#include "isdkit/kaplan_meier.h"

namespace isdkit {

// Anything that maps a covariate vector to an individual survival curve.
// Implementations are immutable after fitting and deterministic.
class FittedModel {
 public:
  virtual ~FittedModel() = default;

  virtual SurvivalCurve predict_curve(std::span<const double> x) const = 0;
  SurvivalCurve predict_curve(const Instance& x) const {
    return predict_curve(x.features);
  }

  // A model-native risk score when one exists (higher = dies sooner).
  virtual std::optional<double> risk(std::span<const double> /*x*/) const {
    return std::nullopt;
  }

  virtual std::string_view name() const = 0;

  // Flat text form; first token is the model name. See load_model.
  virtual void serialize(std::ostream& out) const = 0;
};

// Population Kaplan-Meier curve, identical for every patient.
class KaplanMeierModel final : public FittedModel {
 public:
  explicit KaplanMeierModel(KMCurve km) : km_(std::move(km)) {}

  using FittedModel::predict_curve;
  SurvivalCurve predict_curve(std::span<const double> x) const override;
  std::string_view name() const override { return "km"; }
  void serialize(std::ostream& out) const override;

  const KMCurve& km() const { return km_; }

 private:
  KMCurve km_;
};

KaplanMeierModel fit_km_model(const SurvivalDataset& d);

// Reads any model written by FittedModel::serialize. Throws ParseError.
std::unique_ptr<FittedModel> load_model(std::istream& in);

}  // namespace isdkit

#endif  // ISDKIT_MODEL_H_
