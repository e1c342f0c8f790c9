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

#ifndef ISDKIT_DATASET_H_
#define ISDKIT_DATASET_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace isdkit {

// Observed label of one patient: t = min(death, censor) and whether the death
// was observed. A death and a censoring at the same instant count as a death.
struct Outcome {
  double time = 0.0;
  bool event = false;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

// One patient after encoding: numeric covariates plus the observed label.
struct Instance {
  std::vector<double> features;
  double time = 0.0;
  bool event = false;

  Outcome outcome() const { return {time, event}; }
};

// A numeric, fully observed survival dataset. Immutable once built.
class SurvivalDataset {
 public:
  SurvivalDataset() = default;
  // Throws isdkit::Error when a time is negative or not finite, or when an
  // instance's arity differs from feature_names.size().
  SurvivalDataset(std::vector<std::string> feature_names,
                  std::vector<Instance> instances,
                  std::string time_unit = {});

  std::size_t size() const { return instances_.size(); }
  bool empty() const { return instances_.empty(); }
  std::size_t num_features() const { return feature_names_.size(); }
  std::size_t num_events() const;

  const Instance& operator[](std::size_t i) const { return instances_[i]; }
  std::span<const Instance> instances() const { return instances_; }
  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }
  const std::string& time_unit() const { return time_unit_; }

  std::vector<Outcome> outcomes() const;
  std::vector<double> times() const;
  // Column j across all instances.
  std::vector<double> feature_column(std::size_t j) const;

  SurvivalDataset subset(std::span<const std::size_t> rows) const;
  // Same covariates, labels replaced (rows aligned).
  SurvivalDataset with_outcomes(std::span<const Outcome> outcomes) const;

 private:
  std::vector<std::string> feature_names_;
  std::vector<Instance> instances_;
  std::string time_unit_;
};

// Partition by the event flag, preserving order within each side.
std::pair<SurvivalDataset, SurvivalDataset> split_by_censoring(
    const SurvivalDataset& d);

// Half of the smallest strictly positive observed time; used in place of a
// zero time wherever a logarithm is taken. Throws when no time is positive.
double eta_for(std::span<const Outcome> outcomes);

}  // namespace isdkit

#endif  // ISDKIT_DATASET_H_
