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

#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "qscm/extrapolation.hpp"

namespace {

using namespace qscm;

std::map<int, double> series(double (*f)(int), std::initializer_list<int> sizes) {
  std::map<int, double> m;
  for (int n : sizes) m[n] = f(n);
  return m;
}

TEST(Polynomial, ConstantSeries) {
  const auto e = extrapolate_thermo({{10, 0.7}, {12, 0.7}, {14, 0.7}});
  EXPECT_NEAR(e.value, 0.7, 1e-14);
  EXPECT_NEAR(e.uncertainty, 0.0, 1e-14);
}

TEST(Polynomial, RecoversInverseNModel) {
  const auto e = extrapolate_thermo(series([](int n) { return 1.0 + 3.0 / n; }, {10, 12, 14, 16}));
  EXPECT_NEAR(e.value, 1.0, 1e-10);
  EXPECT_NEAR(e.uncertainty, 0.0, 1e-10);
}

TEST(Polynomial, RecoversQuadraticModelAndReportsSpread) {
  const auto e = extrapolate_thermo(series([](int n) { return -0.5 + 1.0 / n + 20.0 / (n * n); }, {10, 12, 14, 16}));
  EXPECT_NEAR(e.value, -0.5, 1e-10);
  EXPECT_GT(e.uncertainty, 0.01);
}

TEST(Polynomial, InsufficientData) {
  try {
    extrapolate_thermo({{10, 1.0}, {12, 1.0}});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InsufficientData);
  }
}

TEST(Geometric, ExactForGeometricCorrections) {
  const auto e = extrapolate_thermo(series([](int n) { return 2.0 + 0.3 * std::pow(0.6, n); }, {10, 12, 14, 16}),
                                    ExtrapolationScheme::Geometric);
  EXPECT_NEAR(e.value, 2.0, 1e-12);
  EXPECT_LT(e.uncertainty, 1e-12);
}

TEST(Geometric, AlternatingCorrections) {
  const auto e = extrapolate_thermo(series([](int n) { return 1.0 + std::pow(-0.5, n / 2); }, {10, 12, 14}),
                                    ExtrapolationScheme::Geometric);
  EXPECT_NEAR(e.value, 1.0, 1e-12);
}

TEST(Geometric, FallsBackWhenDifferencesGrow) {
  const std::map<int, double> m{{10, 0.0}, {12, 1.0}, {14, 3.0}};
  const auto g = extrapolate_thermo(m, ExtrapolationScheme::Geometric);
  const auto p = extrapolate_thermo(m, ExtrapolationScheme::Polynomial);
  EXPECT_EQ(g.value, p.value);
}

TEST(Geometric, ConvergedSeries) {
  const auto e = extrapolate_thermo({{10, 0.25}, {12, 0.25}, {14, 0.25}}, ExtrapolationScheme::Geometric);
  EXPECT_EQ(e.value, 0.25);
}

TEST(Geometric, RequiresEqualSpacing) {
  EXPECT_THROW(extrapolate_thermo({{10, 1.0}, {12, 1.1}, {16, 1.15}}, ExtrapolationScheme::Geometric), Error);
}

TEST(Scheme, Parsing) {
  EXPECT_EQ(parse_scheme("poly"), ExtrapolationScheme::Polynomial);
  EXPECT_EQ(parse_scheme("geometric"), ExtrapolationScheme::Geometric);
  EXPECT_THROW(parse_scheme("spline"), Error);
}

}  // namespace
