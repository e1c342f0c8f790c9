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

// Token-level helpers shared by the model serializers. Internal header.

#ifndef ISDKIT_SRC_TEXT_IO_H_
#define ISDKIT_SRC_TEXT_IO_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace isdkit::text_io {

void write_values(std::ostream& out, std::string_view key,
                  std::span<const double> values);
void write_scalar(std::ostream& out, std::string_view key, double v);
void write_matrix(std::ostream& out, std::string_view key,
                  const Eigen::MatrixXd& m);

// Each reader consumes `key` first and throws ParseError on mismatch.
std::vector<double> read_values(std::istream& in, std::string_view key);
double read_scalar(std::istream& in, std::string_view key);
Eigen::MatrixXd read_matrix(std::istream& in, std::string_view key);
double read_double(std::istream& in);
std::size_t read_count(std::istream& in);

}  // namespace isdkit::text_io

#endif  // ISDKIT_SRC_TEXT_IO_H_
