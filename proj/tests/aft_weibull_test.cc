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

#include <algorithm>
#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "isdkit/aft_weibull.h"
#include "isdkit/errors.h"
#include "isdkit/simulate.h"

namespace isdkit {
namespace {

double median(std::vector<double> v) {
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  return v[v.size() / 2];
}

// Median relative errors of the fitted shape and scale over 20 seeds.
std::pair<double, double> recovery(double shape, double censor_rate) {
  GeneratorConfig cfg;
  cfg.family = DeathFamily::kWeibullAFT;
  cfg.beta = {};
  cfg.shape = shape;
  cfg.scale = 10.0;
  cfg.censor_rate = censor_rate;
  std::vector<double> shape_err;
  std::vector<double> scale_err;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const AftWeibullModel m =
        fit_aft_weibull(simulate_cohort(cfg, 2000, seed).data);
    shape_err.push_back(std::abs(m.shape() / shape - 1.0));
    scale_err.push_back(std::abs(m.scale({}) / 10.0 - 1.0));
  }
  return {median(shape_err), median(scale_err)};
}

TEST(AftLikelihoodTest, DerivativesMatchFiniteDifferences) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> g(0.0, 0.3);
  GeneratorConfig cfg;
  cfg.family = DeathFamily::kWeibullAFT;
  cfg.beta = {0.5, -0.3};
  cfg.censor_rate = 0.05;
  for (int rep = 0; rep < 20; ++rep) {
    const SurvivalDataset d = simulate_cohort(cfg, 50, rep).data;
    Eigen::VectorXd p(4);
    p << 2.0 + g(rng), g(rng), g(rng), g(rng);
    const AftLikelihood ll = aft_weibull_loglik(d, p);
    for (int j = 0; j < 4; ++j) {
      const double h = 1e-5;
      Eigen::VectorXd up = p, dn = p;
      up(j) += h;
      dn(j) -= h;
      const AftLikelihood lu = aft_weibull_loglik(d, up);
      const AftLikelihood ld = aft_weibull_loglik(d, dn);
      const double fd = (lu.value - ld.value) / (2 * h);
      EXPECT_NEAR(ll.gradient(j), fd, 1e-5 * std::max(1.0, std::abs(fd)));
      for (int k = 0; k < 4; ++k) {
        const double hfd = (lu.gradient(k) - ld.gradient(k)) / (2 * h);
        EXPECT_NEAR(ll.hessian(k, j), hfd, 1e-5 * std::max(1.0, std::abs(hfd)));
      }
    }
  }
}

TEST(AftFitTest, RecoversUncensoredWeibull) {
  const auto [shape_err, scale_err] = recovery(2.0, 0.0);
  EXPECT_LT(shape_err, 0.05);
  EXPECT_LT(scale_err, 0.05);
}

TEST(AftFitTest, HeavyCensoringStillRecovers) {
  const auto [shape_err, scale_err] = recovery(2.0, 0.1);
  EXPECT_LT(shape_err, 0.15);
  EXPECT_LT(scale_err, 0.15);
}

TEST(AftFitTest, ExponentialDataGiveUnitShape) {
  GeneratorConfig cfg;
  cfg.beta = {};
  cfg.base_rate = 0.2;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const AftWeibullModel m =
        fit_aft_weibull(simulate_cohort(cfg, 2000, seed).data);
    EXPECT_GE(m.shape(), 0.9);
    EXPECT_LE(m.shape(), 1.1);
  }
}

TEST(AftFitTest, RecoversCoefficientsAndHandlesZeroTimes) {
  GeneratorConfig cfg;
  cfg.family = DeathFamily::kWeibullAFT;
  cfg.beta = {0.5, -0.3};
  cfg.shape = 1.5;
  cfg.censor_rate = 0.02;
  SurvivalDataset d = simulate_cohort(cfg, 2000, 3).data;
  std::vector<Outcome> o = d.outcomes();
  o[0].time = 0.0;
  d = d.with_outcomes(o);
  const AftWeibullModel m = fit_aft_weibull(d);
  EXPECT_NEAR(m.coeffs()(0), 0.5, 0.08);
  EXPECT_NEAR(m.coeffs()(1), -0.3, 0.08);
  EXPECT_NEAR(m.shape(), 1.5, 0.1);
  EXPECT_FALSE(m.grid().empty());
}

TEST(AftFitTest, NeedsADeath) {
  const SurvivalDataset d({}, {{{}, 1.0, false}, {{}, 2.0, false}});
  EXPECT_THROW(fit_aft_weibull(d), FitError);
}

TEST(AftPredictTest, ClosedFormValues) {
  Eigen::VectorXd coeffs(1);
  coeffs << 0.4;
  const AftWeibullModel m(2.0, coeffs, std::log(0.5), {1, 2, 4, 8, 16});
  const std::vector<double> x = {1.0};
  const double lambda = std::exp(2.4);
  EXPECT_NEAR(m.scale(x), lambda, 1e-12);
  EXPECT_NEAR(m.survival(lambda, x), std::exp(-1.0), 1e-12);
  EXPECT_EQ(m.survival(0.0, x), 1.0);
  EXPECT_DOUBLE_EQ(m.shape(), 2.0);
  const SurvivalCurve c = m.predict_curve(x);
  EXPECT_EQ(c.kind(), Interpolation::kLinear);
  EXPECT_EQ(c.at(0.0), 1.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    EXPECT_NEAR(c.probs()[k], m.survival(c.times()[k], x), 1e-15);
    EXPECT_GT(c.probs()[k], 0.0);
    if (k > 0) {
      EXPECT_LT(c.probs()[k], c.probs()[k - 1]);
    }
  }
}

TEST(AftPredictTest, CurvesAreConsistentlyOrdered) {
  Eigen::VectorXd coeffs(2);
  coeffs << 0.7, -0.2;
  const AftWeibullModel m(1.0, coeffs, -0.3);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 50; ++rep) {
    const std::vector<double> a = {g(rng), g(rng)};
    const std::vector<double> b = {g(rng), g(rng)};
    const double sign = m.linear_predictor(a) < m.linear_predictor(b) ? 1 : -1;
    for (double t = 0.1; t < 50; t *= 1.3) {
      EXPECT_GE(sign * (m.survival(t, b) - m.survival(t, a)), 0.0);
    }
  }
}

}  // namespace
}  // namespace isdkit
