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

#include "isdkit/model.h"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "isdkit/aft_weibull.h"
#include "isdkit/cox.h"
#include "isdkit/csv.h"
#include "isdkit/errors.h"
#include "isdkit/mtlr.h"
#include "text_io.h"

namespace isdkit {
namespace text_io {
namespace {

std::string read_token(std::istream& in) {
  std::string token;
  if (!(in >> token)) throw ParseError("model file ended unexpectedly");
  return token;
}

void expect(std::istream& in, std::string_view key) {
  const std::string token = read_token(in);
  if (token != key) {
    throw ParseError("model file: expected '" + std::string(key) +
                     "', found '" + token + "'");
  }
}

}  // namespace

void write_values(std::ostream& out, std::string_view key,
                  std::span<const double> values) {
  out << key << ' ' << values.size();
  for (double v : values) out << ' ' << format_double(v);
  out << '\n';
}

void write_scalar(std::ostream& out, std::string_view key, double v) {
  out << key << ' ' << format_double(v) << '\n';
}

void write_matrix(std::ostream& out, std::string_view key,
                  const Eigen::MatrixXd& m) {
  out << key << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << (c == 0 ? "" : " ") << format_double(m(r, c));
    }
    out << '\n';
  }
}

double read_double(std::istream& in) {
  const std::string token = read_token(in);
  double v = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() ||
      !std::isfinite(v)) {
    throw ParseError("model file: bad number '" + token + "'");
  }
  return v;
}

std::size_t read_count(std::istream& in) {
  const std::string token = read_token(in);
  std::size_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() ||
      v > 100000000) {
    throw ParseError("model file: bad count '" + token + "'");
  }
  return v;
}

std::vector<double> read_values(std::istream& in, std::string_view key) {
  expect(in, key);
  const std::size_t n = read_count(in);
  std::vector<double> values(n);
  for (double& v : values) v = read_double(in);
  return values;
}

double read_scalar(std::istream& in, std::string_view key) {
  expect(in, key);
  return read_double(in);
}

Eigen::MatrixXd read_matrix(std::istream& in, std::string_view key) {
  expect(in, key);
  const std::size_t rows = read_count(in);
  const std::size_t cols = read_count(in);
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = read_double(in);
  }
  return m;
}

}  // namespace text_io

SurvivalCurve KaplanMeierModel::predict_curve(
    std::span<const double> /*x*/) const {
  return km_.curve;
}

void KaplanMeierModel::serialize(std::ostream& out) const {
  out << name() << '\n';
  text_io::write_values(out, "times", km_.curve.times());
  text_io::write_values(out, "probs", km_.curve.probs());
}

KaplanMeierModel fit_km_model(const SurvivalDataset& d) {
  return KaplanMeierModel(fit_km(d));
}

std::unique_ptr<FittedModel> load_model(std::istream& in) {
  std::string kind;
  if (!(in >> kind)) throw ParseError("model file is empty");
  if (kind == "km") {
    std::vector<double> times = text_io::read_values(in, "times");
    std::vector<double> probs = text_io::read_values(in, "probs");
    KMCurve km;
    try {
      km.curve = SurvivalCurve(std::move(times), std::move(probs),
                               Interpolation::kStep);
    } catch (const Error& e) {
      throw ParseError(std::string("model file: ") + e.what());
    }
    return std::make_unique<KaplanMeierModel>(std::move(km));
  }
  if (kind == "cox-kp") {
    const std::vector<double> beta = text_io::read_values(in, "beta");
    std::vector<double> times = text_io::read_values(in, "times");
    std::vector<double> probs = text_io::read_values(in, "probs");
    try {
      return std::make_unique<CoxModel>(
          Eigen::Map<const Eigen::VectorXd>(beta.data(), beta.size()),
          SurvivalCurve(std::move(times), std::move(probs),
                        Interpolation::kStep));
    } catch (const Error& e) {
      throw ParseError(std::string("model file: ") + e.what());
    }
  }
  if (kind == "aft-weibull") {
    const double intercept = text_io::read_scalar(in, "intercept");
    const double log_scale = text_io::read_scalar(in, "log_scale");
    const std::vector<double> coeffs = text_io::read_values(in, "coeffs");
    std::vector<double> grid = text_io::read_values(in, "grid");
    return std::make_unique<AftWeibullModel>(
        intercept,
        Eigen::Map<const Eigen::VectorXd>(coeffs.data(), coeffs.size()),
        log_scale, std::move(grid));
  }
  if (kind == "mtlr") {
    const double c = text_io::read_scalar(in, "reg_c");
    std::vector<double> points = text_io::read_values(in, "grid");
    Eigen::MatrixXd theta = text_io::read_matrix(in, "theta");
    if (static_cast<std::size_t>(theta.rows()) != points.size() ||
        theta.cols() < 1) {
      throw ParseError("model file: theta shape does not match the grid");
    }
    return std::make_unique<MtlrModel>(std::move(theta),
                                       TimeGrid{std::move(points)}, c);
  }
  throw ParseError("unknown model kind '" + kind + "'");
}

}  // namespace isdkit
