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

#ifndef ISDKIT_SIMULATE_H_
#define ISDKIT_SIMULATE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "isdkit/dataset.h"

namespace isdkit {

enum class DeathFamily {
  kExponentialPH,  // h(t | x) = base_rate * exp(beta . x)
  kWeibullPH,      // S(t | x) = exp(-(t / scale)^shape * exp(beta . x))
  kWeibullAFT,     // S(t | x) = exp(-(t / (scale * exp(beta . x)))^shape)
};

struct GeneratorConfig {
  DeathFamily family = DeathFamily::kExponentialPH;
  std::vector<double> beta = {1.0};  // informative coefficients
  std::size_t noise_features = 0;
  double base_rate = 0.1;  // exponential PH
  double shape = 1.5;      // Weibull families
  double scale = 10.0;
  double censor_rate = 0.0;  // exponential censoring hazard, 0 = none
  double admin_censor = 0.0; // study end, 0 = none
  bool binary_first_feature = false;  // x_1 ~ Bernoulli(0.5) instead of N(0,1)
};

// True survival function of the generator at t for covariates x.
double true_survival(const GeneratorConfig& cfg, std::span<const double> x,
                     double t);

struct SimulatedCohort {
  SurvivalDataset data;
  std::vector<double> death_times;   // latent d_i
  std::vector<double> censor_times;  // latent c_i (inf without censoring)
};

// Features named x1..xp (informative first). Throws isdkit::Error on invalid
// parameters.
SimulatedCohort simulate_cohort(const GeneratorConfig& cfg, std::size_t n,
                                std::uint64_t seed);

}  // namespace isdkit

#endif  // ISDKIT_SIMULATE_H_
