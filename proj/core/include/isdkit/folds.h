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

#ifndef ISDKIT_FOLDS_H_
#define ISDKIT_FOLDS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "isdkit/dataset.h"

namespace isdkit {

struct FoldAssignment {
  std::vector<std::size_t> fold_of;  // per instance
  std::size_t k = 0;

  std::vector<std::size_t> train_rows(std::size_t fold) const;
  std::vector<std::size_t> test_rows(std::size_t fold) const;
};

// Uncensored instances sorted by time are dealt round-robin into the folds,
// then the censored ones continue the same deal. Ties keep input order. The
// seed only rotates which fold receives the first card. Throws when k < 2 or
// there are fewer than k instances.
FoldAssignment make_folds(std::span<const Outcome> outcomes, std::size_t k = 5,
                          std::uint64_t seed = 0);

}  // namespace isdkit

#endif  // ISDKIT_FOLDS_H_
