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

#include "isdkit/kaplan_meier.h"

#include <algorithm>

#include "isdkit/errors.h"

namespace isdkit {

KMCurve fit_km(std::span<const Outcome> outcomes) {
  if (outcomes.empty()) throw Error("Kaplan-Meier needs at least one patient");
  std::vector<Outcome> sorted(outcomes.begin(), outcomes.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Outcome& a, const Outcome& b) { return a.time < b.time; });

  KMCurve out;
  std::vector<double> times;
  std::vector<double> probs;
  std::size_t at_risk = sorted.size();
  double s = 1.0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double t = sorted[i].time;
    std::size_t deaths = 0;
    std::size_t censored = 0;
    for (; i < sorted.size() && sorted[i].time == t; ++i) {
      (sorted[i].event ? deaths : censored) += 1;
    }
    out.risk_sets.push_back({t, at_risk, deaths, censored});
    if (deaths > 0) {
      s *= static_cast<double>(at_risk - deaths) / static_cast<double>(at_risk);
      times.push_back(t);
      probs.push_back(s);
    }
    at_risk -= deaths + censored;
  }
  const double t_max = sorted.back().time;
  if (times.empty() || times.back() < t_max) {
    times.push_back(t_max);
    probs.push_back(s);
  }
  out.curve = SurvivalCurve(std::move(times), std::move(probs),
                            Interpolation::kStep);
  return out;
}

KMCurve fit_km(const SurvivalDataset& d) {
  const std::vector<Outcome> o = d.outcomes();
  return fit_km(o);
}

KMCurve fit_censoring_km(std::span<const Outcome> outcomes) {
  std::vector<Outcome> flipped(outcomes.begin(), outcomes.end());
  for (Outcome& o : flipped) o.event = !o.event;
  return fit_km(flipped);
}

KMCurve fit_censoring_km(const SurvivalDataset& d) {
  const std::vector<Outcome> o = d.outcomes();
  return fit_censoring_km(o);
}

}  // namespace isdkit
