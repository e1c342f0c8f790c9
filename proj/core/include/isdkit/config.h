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

#ifndef ISDKIT_CONFIG_H_
#define ISDKIT_CONFIG_H_

#include <filesystem>
#include <iosfwd>

#include "isdkit/pipeline.h"

namespace isdkit {

// Flat `key = value` document, one pair per line, `#` starts a comment.
// Keys: model, metrics, percentiles, bins, folds, seed, jobs, tstar_source
// (all|deaths), risk (median|mean), p_cut, max_missing, mtlr_c_grid,
// mtlr_grid_size, inner_folds. Lists are comma separated. Unknown keys are a
// ParseError.
ExperimentConfig parse_config(std::istream& in,
                              ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path,
                             ExperimentConfig base = {});
void write_config(const ExperimentConfig& cfg, std::ostream& out);

}  // namespace isdkit

#endif  // ISDKIT_CONFIG_H_
