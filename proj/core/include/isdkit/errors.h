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

#ifndef ISDKIT_ERRORS_H_
#define ISDKIT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace isdkit {

// Base class for every domain error raised by the library. The CLI maps these
// to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file or value.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An optimizer or estimator failed to produce a usable fit.
class FitError : public Error {
 public:
  FitError(const std::string& what, int iterations = 0,
           double gradient_norm = 0.0)
      : Error(what), iterations_(iterations), gradient_norm_(gradient_norm) {}

  int iterations() const { return iterations_; }
  double gradient_norm() const { return gradient_norm_; }

 private:
  int iterations_;
  double gradient_norm_;
};

// The Newton system is (numerically) singular, usually because a feature is
// constant or collinear with others.
class SingularMatrixError : public FitError {
 public:
  using FitError::FitError;
};

}  // namespace isdkit

#endif  // ISDKIT_ERRORS_H_
