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

#include "isdkit/dataset.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "isdkit/errors.h"

namespace isdkit {

SurvivalDataset::SurvivalDataset(std::vector<std::string> feature_names,
                                 std::vector<Instance> instances,
                                 std::string time_unit)
    : feature_names_(std::move(feature_names)),
      instances_(std::move(instances)),
      time_unit_(std::move(time_unit)) {
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const Instance& x = instances_[i];
    if (!std::isfinite(x.time) || x.time < 0.0) {
      throw Error("instance " + std::to_string(i) +
                  ": time must be finite and non-negative");
    }
    if (x.features.size() != feature_names_.size()) {
      throw Error("instance " + std::to_string(i) + " has " +
                  std::to_string(x.features.size()) + " features, expected " +
                  std::to_string(feature_names_.size()));
    }
  }
}

std::size_t SurvivalDataset::num_events() const {
  return static_cast<std::size_t>(std::count_if(
      instances_.begin(), instances_.end(),
      [](const Instance& x) { return x.event; }));
}

std::vector<Outcome> SurvivalDataset::outcomes() const {
  std::vector<Outcome> out;
  out.reserve(instances_.size());
  for (const Instance& x : instances_) out.push_back(x.outcome());
  return out;
}

std::vector<double> SurvivalDataset::times() const {
  std::vector<double> out;
  out.reserve(instances_.size());
  for (const Instance& x : instances_) out.push_back(x.time);
  return out;
}

std::vector<double> SurvivalDataset::feature_column(std::size_t j) const {
  std::vector<double> out;
  out.reserve(instances_.size());
  for (const Instance& x : instances_) out.push_back(x.features.at(j));
  return out;
}

SurvivalDataset SurvivalDataset::subset(
    std::span<const std::size_t> rows) const {
  std::vector<Instance> picked;
  picked.reserve(rows.size());
  for (std::size_t r : rows) picked.push_back(instances_.at(r));
  return SurvivalDataset(feature_names_, std::move(picked), time_unit_);
}

SurvivalDataset SurvivalDataset::with_outcomes(
    std::span<const Outcome> outcomes) const {
  if (outcomes.size() != instances_.size()) {
    throw Error("with_outcomes: size mismatch");
  }
  std::vector<Instance> copy = instances_;
  for (std::size_t i = 0; i < copy.size(); ++i) {
    copy[i].time = outcomes[i].time;
    copy[i].event = outcomes[i].event;
  }
  return SurvivalDataset(feature_names_, std::move(copy), time_unit_);
}

std::pair<SurvivalDataset, SurvivalDataset> split_by_censoring(
    const SurvivalDataset& d) {
  std::vector<Instance> uncensored;
  std::vector<Instance> censored;
  for (const Instance& x : d.instances()) {
    (x.event ? uncensored : censored).push_back(x);
  }
  return {SurvivalDataset(d.feature_names(), std::move(uncensored),
                          d.time_unit()),
          SurvivalDataset(d.feature_names(), std::move(censored),
                          d.time_unit())};
}

double eta_for(std::span<const Outcome> outcomes) {
  double smallest = std::numeric_limits<double>::infinity();
  for (const Outcome& o : outcomes) {
    if (o.time > 0.0) smallest = std::min(smallest, o.time);
  }
  if (!std::isfinite(smallest)) {
    throw Error("eta: no positive observed time");
  }
  return 0.5 * smallest;
}

}  // namespace isdkit
