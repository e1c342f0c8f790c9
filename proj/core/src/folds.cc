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

#include "isdkit/folds.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "isdkit/errors.h"

namespace isdkit {

std::vector<std::size_t> FoldAssignment::train_rows(std::size_t fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] != fold) rows.push_back(i);
  }
  return rows;
}

std::vector<std::size_t> FoldAssignment::test_rows(std::size_t fold) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] == fold) rows.push_back(i);
  }
  return rows;
}

FoldAssignment make_folds(std::span<const Outcome> outcomes, std::size_t k,
                          std::uint64_t seed) {
  if (k < 2) throw Error("need at least 2 folds");
  if (outcomes.size() < k) {
    throw Error("cannot split " + std::to_string(outcomes.size()) +
                " instances into " + std::to_string(k) + " folds");
  }
  std::vector<std::size_t> order(outcomes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (outcomes[a].event != outcomes[b].event) {
                       return outcomes[a].event;
                     }
                     return outcomes[a].time < outcomes[b].time;
                   });
  FoldAssignment out;
  out.k = k;
  out.fold_of.assign(outcomes.size(), 0);
  std::size_t card = static_cast<std::size_t>(seed % k);
  for (std::size_t i : order) {
    out.fold_of[i] = card;
    card = (card + 1) % k;
  }
  return out;
}

}  // namespace isdkit
