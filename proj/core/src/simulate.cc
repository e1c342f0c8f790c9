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

#include "isdkit/simulate.h"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "isdkit/errors.h"

namespace isdkit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double linear_predictor(const GeneratorConfig& cfg,
                        std::span<const double> x) {
  double lp = 0.0;
  for (std::size_t j = 0; j < cfg.beta.size() && j < x.size(); ++j) {
    lp += cfg.beta[j] * x[j];
  }
  return lp;
}

void validate(const GeneratorConfig& cfg) {
  const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (cfg.family == DeathFamily::kExponentialPH && !positive(cfg.base_rate)) {
    throw Error("exponential generator needs base_rate > 0");
  }
  if (cfg.family != DeathFamily::kExponentialPH &&
      (!positive(cfg.shape) || !positive(cfg.scale))) {
    throw Error("Weibull generator needs shape > 0 and scale > 0");
  }
  if (!(cfg.censor_rate >= 0.0) || !(cfg.admin_censor >= 0.0)) {
    throw Error("censoring parameters must be >= 0");
  }
  for (double b : cfg.beta) {
    if (!std::isfinite(b)) throw Error("generator coefficients must be finite");
  }
}

}  // namespace

double true_survival(const GeneratorConfig& cfg, std::span<const double> x,
                     double t) {
  if (t <= 0.0) return 1.0;
  const double lp = linear_predictor(cfg, x);
  switch (cfg.family) {
    case DeathFamily::kExponentialPH:
      return std::exp(-cfg.base_rate * std::exp(lp) * t);
    case DeathFamily::kWeibullPH:
      return std::exp(-std::pow(t / cfg.scale, cfg.shape) * std::exp(lp));
    case DeathFamily::kWeibullAFT:
      return std::exp(-std::pow(t / (cfg.scale * std::exp(lp)), cfg.shape));
  }
  return 1.0;
}

SimulatedCohort simulate_cohort(const GeneratorConfig& cfg, std::size_t n,
                                std::uint64_t seed) {
  validate(cfg);
  if (n == 0) throw Error("cohort size must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const std::size_t p = cfg.beta.size() + cfg.noise_features;
  std::vector<std::string> names;
  for (std::size_t j = 0; j < p; ++j) names.push_back("x" + std::to_string(j + 1));

  SimulatedCohort out;
  std::vector<Instance> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    Instance& r = rows[i];
    r.features.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
      r.features[j] = (j == 0 && cfg.binary_first_feature)
                          ? (coin(rng) ? 1.0 : 0.0)
                          : normal(rng);
    }
    const double lp = linear_predictor(cfg, r.features);
    // Inverse-CDF draw: S(d) = u.
    const double e = -std::log(1.0 - unif(rng));  // Exp(1)
    double d = 0.0;
    switch (cfg.family) {
      case DeathFamily::kExponentialPH:
        d = e / (cfg.base_rate * std::exp(lp));
        break;
      case DeathFamily::kWeibullPH:
        d = cfg.scale * std::pow(e * std::exp(-lp), 1.0 / cfg.shape);
        break;
      case DeathFamily::kWeibullAFT:
        d = cfg.scale * std::exp(lp) * std::pow(e, 1.0 / cfg.shape);
        break;
    }
    double c = kInf;
    if (cfg.censor_rate > 0.0) {
      c = -std::log(1.0 - unif(rng)) / cfg.censor_rate;
    }
    if (cfg.admin_censor > 0.0) c = std::min(c, cfg.admin_censor);
    r.event = d <= c;
    r.time = r.event ? d : c;
    out.death_times.push_back(d);
    out.censor_times.push_back(c);
  }
  out.data = SurvivalDataset(std::move(names), std::move(rows));
  return out;
}

}  // namespace isdkit
