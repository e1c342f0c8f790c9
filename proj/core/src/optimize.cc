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

#include "isdkit/optimize.h"

#include <cmath>
#include <deque>

namespace isdkit {
namespace {

struct Pair {
  Eigen::VectorXd s;
  Eigen::VectorXd y;
  double rho;
};

// Two-loop recursion: returns H * g for the implicit inverse Hessian H.
Eigen::VectorXd apply_inverse_hessian(const std::deque<Pair>& history,
                                      const Eigen::VectorXd& g) {
  Eigen::VectorXd q = g;
  std::vector<double> alpha(history.size());
  for (std::size_t i = history.size(); i-- > 0;) {
    alpha[i] = history[i].rho * history[i].s.dot(q);
    q -= alpha[i] * history[i].y;
  }
  if (!history.empty()) {
    const Pair& last = history.back();
    q *= last.s.dot(last.y) / last.y.squaredNorm();
  }
  for (std::size_t i = 0; i < history.size(); ++i) {
    const double beta = history[i].rho * history[i].y.dot(q);
    q += (alpha[i] - beta) * history[i].s;
  }
  return q;
}

}  // namespace

LbfgsResult minimize_lbfgs(const Objective& f, Eigen::VectorXd x0,
                           const LbfgsOptions& options) {
  constexpr double kArmijo = 1e-4;
  constexpr int kMaxBacktracks = 60;

  LbfgsResult r;
  r.x = std::move(x0);
  Eigen::VectorXd g(r.x.size());
  r.value = f(r.x, g);
  r.gradient_norm = g.size() == 0 ? 0.0 : g.lpNorm<Eigen::Infinity>();
  std::deque<Pair> history;

  Eigen::VectorXd x_new(r.x.size());
  Eigen::VectorXd g_new(r.x.size());
  while (r.gradient_norm >= options.gradient_tolerance &&
         r.iterations < options.max_iterations) {
    Eigen::VectorXd dir = -apply_inverse_hessian(history, g);
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      history.clear();
      dir = -g;
      slope = -g.squaredNorm();
    }
    double step = history.empty() ? std::min(1.0, 1.0 / g.norm()) : 1.0;
    double value_new = 0.0;
    bool accepted = false;
    for (int b = 0; b < kMaxBacktracks; ++b) {
      x_new = r.x + step * dir;
      value_new = f(x_new, g_new);
      if (std::isfinite(value_new) &&
          value_new <= r.value + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++r.iterations;
    if (!accepted) {
      if (history.empty()) break;  // no descent possible along -g
      history.clear();
      continue;
    }
    Pair p{x_new - r.x, g_new - g, 0.0};
    const double sy = p.s.dot(p.y);
    if (sy > 1e-12 * p.y.squaredNorm()) {
      p.rho = 1.0 / sy;
      history.push_back(std::move(p));
      if (static_cast<int>(history.size()) > options.history) {
        history.pop_front();
      }
    }
    r.x = x_new;
    g = g_new;
    r.value = value_new;
    r.gradient_norm = g.lpNorm<Eigen::Infinity>();
  }
  r.converged = r.gradient_norm < options.gradient_tolerance;
  return r;
}

}  // namespace isdkit
