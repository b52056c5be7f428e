// Copyright 2026 The qscmlab Authors
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

#pragma once

// Thermodynamic-limit estimates from a handful of finite chain lengths.

#include <cmath>
#include <iterator>
#include <map>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "qscm/error.hpp"

namespace qscm {

enum class ExtrapolationScheme {
  /// Least squares v(N) = v_inf + a/N + b/N^2. The uncertainty is half the
  /// spread between this fit and the linear v_inf + a/N fit.
  Polynomial,
  /// Aitken delta-squared on the three largest sizes, for corrections that
  /// decay geometrically in N (gapped phases). Falls back to Polynomial
  /// when the last three differences do not shrink geometrically.
  Geometric,
};

constexpr std::string_view to_string(ExtrapolationScheme s) {
  return s == ExtrapolationScheme::Polynomial ? "polynomial" : "geometric";
}

inline ExtrapolationScheme parse_scheme(std::string_view s) {
  if (s == "polynomial" || s == "poly") return ExtrapolationScheme::Polynomial;
  if (s == "geometric" || s == "aitken") return ExtrapolationScheme::Geometric;
  fail(ErrorKind::Domain, "unknown extrapolation scheme '" + std::string(s) + "'");
}

struct Estimate {
  double value = 0.0;
  double uncertainty = 0.0;
};

namespace detail {

inline double fit_intercept(const std::map<int, double>& values, int degree) {
  const auto rows = static_cast<Eigen::Index>(values.size());
  Eigen::MatrixXd a(rows, degree + 1);
  Eigen::VectorXd b(rows);
  Eigen::Index i = 0;
  for (const auto& [n, v] : values) {
    const double x = 1.0 / n;
    double p = 1.0;
    for (int d = 0; d <= degree; ++d, p *= x) a(i, d) = p;
    b(i++) = v;
  }
  return a.colPivHouseholderQr().solve(b)(0);
}

inline double aitken(double a, double b, double c) {
  const double d = (c - b) - (b - a);
  return c - (c - b) * (c - b) / d;
}

}  // namespace detail

inline Estimate extrapolate_thermo(const std::map<int, double>& values,
                                   ExtrapolationScheme scheme = ExtrapolationScheme::Polynomial) {
  if (values.size() < 3)
    fail(ErrorKind::InsufficientData, "extrapolation needs at least 3 sizes, got " + std::to_string(values.size()));
  for (const auto& [n, v] : values)
    if (n <= 0 || !std::isfinite(v)) fail(ErrorKind::Domain, "extrapolation needs positive sizes and finite values");

  const double quad = detail::fit_intercept(values, 2);
  const double lin = detail::fit_intercept(values, 1);
  const Estimate poly{quad, 0.5 * std::abs(quad - lin)};
  if (scheme == ExtrapolationScheme::Polynomial) return poly;

  auto it = values.end();
  const auto [n3, c] = *std::prev(it, 1);
  const auto [n2, b] = *std::prev(it, 2);
  const auto [n1, a] = *std::prev(it, 3);
  if (n3 - n2 != n2 - n1) fail(ErrorKind::Domain, "geometric extrapolation needs equally spaced sizes");

  const double scale = 1.0 + std::abs(c);
  if (std::abs(c - b) <= 1e-14 * scale) return {c, std::abs(c - b)};
  if (std::abs(b - a) <= 1e-14 * scale) return poly;
  const double ratio = (c - b) / (b - a);
  if (!(std::abs(ratio) < 1.0)) return poly;

  Estimate out{detail::aitken(a, b, c), 0.0};
  if (values.size() >= 4) {
    const double before = std::prev(it, 4)->second;
    const bool spaced = (n1 - std::prev(it, 4)->first) == (n2 - n1);
    const double r_prev = (b - a) / (a - before);
    if (spaced && std::abs(a - before) > 1e-14 * scale && std::abs(r_prev) < 1.0)
      out.uncertainty = 0.5 * std::abs(out.value - detail::aitken(before, a, b));
    else
      out.uncertainty = 0.5 * std::abs(out.value - c);
  } else {
    out.uncertainty = 0.5 * std::abs(out.value - c);
  }
  return out;
}

}  // namespace qscm
