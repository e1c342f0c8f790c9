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

#ifndef ISDKIT_OPTIMIZE_H_
#define ISDKIT_OPTIMIZE_H_

#include <functional>

#include <Eigen/Core>

namespace isdkit {

struct LbfgsOptions {
  int max_iterations = 5000;
  int history = 10;
  // Converged when the gradient infinity-norm drops below this.
  double gradient_tolerance = 1e-6;
};

struct LbfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Objective: returns f(x) and writes the gradient into `grad`.
using Objective =
    std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

// Limited-memory BFGS with a backtracking Armijo line search. Deterministic;
// the value sequence is non-increasing across accepted steps.
LbfgsResult minimize_lbfgs(const Objective& f, Eigen::VectorXd x0,
                           const LbfgsOptions& options = {});

}  // namespace isdkit

#endif  // ISDKIT_OPTIMIZE_H_
