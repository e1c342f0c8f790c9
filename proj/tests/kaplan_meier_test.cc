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

#include <random>

#include "gtest/gtest.h"
#include "isdkit/errors.h"
#include "isdkit/kaplan_meier.h"
#include "isdkit/simulate.h"
#include "test_util.h"

namespace isdkit {
namespace {

using testing::outcomes;

TEST(KaplanMeierTest, HandProductLimit) {
  const KMCurve k = fit_km(outcomes({2, 3, 5}, {1, 0, 1}));
  EXPECT_DOUBLE_EQ(k.at(2.0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(k.at(4.0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(k.at(5.0), 0.0);
  EXPECT_EQ(k.at(1.99), 1.0);
  ASSERT_EQ(k.risk_sets.size(), 3u);
  EXPECT_EQ(k.risk_sets[1].at_risk, 2u);
  EXPECT_EQ(k.risk_sets[1].censored, 1u);
}

TEST(KaplanMeierTest, NoCensoringIsEmpiricalSurvival) {
  const KMCurve k = fit_km(outcomes({4, 1, 3, 2}, {1, 1, 1, 1}));
  EXPECT_EQ(std::vector<double>(k.curve.probs().begin(), k.curve.probs().end()),
            (std::vector<double>{0.75, 0.5, 0.25, 0.0}));
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 20; ++rep) {
    auto o = testing::random_outcomes(rng, 30, 0.0);
    const KMCurve km = fit_km(o);
    for (double t = 0; t < 40; t += 0.5) {
      double alive = 0;
      for (const Outcome& x : o) alive += x.time > t ? 1 : 0;
      EXPECT_NEAR(km.at(t), alive / o.size(), 1e-12);
    }
  }
}

TEST(KaplanMeierTest, SingleDeath) {
  const KMCurve k = fit_km(outcomes({5}, {1}));
  EXPECT_EQ(k.at(4.999), 1.0);
  EXPECT_EQ(k.at(5.0), 0.0);
  EXPECT_THROW(fit_km(std::vector<Outcome>{}), Error);
}

TEST(KaplanMeierTest, DeathsBeforeCensoringsAtTies) {
  // The patient censored at t = 1 is still at risk for the death at 1.
  const KMCurve k = fit_km(outcomes({1, 1, 2}, {1, 0, 1}));
  EXPECT_DOUBLE_EQ(k.at(1.0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(k.at(2.0), 0.0);
}

TEST(KaplanMeierTest, RecurrenceHoldsAtEveryKnot) {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 30; ++rep) {
    const KMCurve k = fit_km(testing::random_outcomes(rng, 40));
    double s = 1.0;
    for (const RiskSetRow& r : k.risk_sets) {
      s *= 1.0 - static_cast<double>(r.deaths) / r.at_risk;
      EXPECT_NEAR(k.at(r.time), s, 1e-12);
    }
  }
}

TEST(CensoringKaplanMeierTest, LabelFlipOracle) {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 30; ++rep) {
    auto o = testing::random_outcomes(rng, 25);
    auto flipped = o;
    for (Outcome& x : flipped) x.event = !x.event;
    const KMCurve g = fit_censoring_km(o);
    const KMCurve oracle = fit_km(flipped);
    for (double t = 0; t < 30; t += 0.5) EXPECT_EQ(g.at(t), oracle.at(t));
  }
  const KMCurve g = fit_censoring_km(outcomes({1, 3, 5}, {1, 0, 1}));
  EXPECT_EQ(g.at(2.0), 1.0);
  EXPECT_DOUBLE_EQ(g.at(3.0), 0.5);
}

TEST(CensoringKaplanMeierTest, AllUncensoredGivesFlatCurve) {
  const KMCurve g = fit_censoring_km(outcomes({1, 2, 3}, {1, 1, 1}));
  for (double t = 0; t <= 3; t += 0.5) EXPECT_EQ(g.at(t), 1.0);
  const KMCurve all_c = fit_censoring_km(outcomes({1, 2, 3, 4}, {0, 0, 0, 0}));
  EXPECT_DOUBLE_EQ(all_c.at(2.0), 0.5);
}

TEST(KaplanMeierTest, ConvergesToTruth) {
  GeneratorConfig cfg;
  cfg.beta = {0.0};
  cfg.base_rate = 0.2;
  cfg.censor_rate = 0.1;
  double prev_median = 1.0;
  for (std::size_t n : {100, 1000, 10000}) {
    std::vector<double> sup;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const SimulatedCohort c = simulate_cohort(cfg, n, seed);
      const KMCurve k = fit_km(c.data);
      double worst = 0.0;
      for (double t = 0.05; t < 10.0; t += 0.05) {
        const double x[1] = {0.0};
        worst = std::max(worst, std::abs(k.at(t) - true_survival(cfg, x, t)));
      }
      sup.push_back(worst);
    }
    std::nth_element(sup.begin(), sup.begin() + 10, sup.end());
    EXPECT_LT(sup[10], prev_median) << "n=" << n;
    prev_median = sup[10];
  }
}

}  // namespace
}  // namespace isdkit
