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

#ifndef ISDKIT_STATS_H_
#define ISDKIT_STATS_H_

namespace isdkit {

// Regularized lower / upper incomplete gamma functions P(a, x), Q(a, x).
// Series expansion below x = a + 1, continued fraction above.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Upper tail of the chi-square distribution, Q(dof / 2, x / 2). Throws
// isdkit::Error when dof == 0 or x < 0.
double chi2_sf(double x, int dof);

// Standard normal CDF.
double normal_cdf(double z);

}  // namespace isdkit

#endif  // ISDKIT_STATS_H_
