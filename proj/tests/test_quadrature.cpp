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
#include <numbers>

#include <gtest/gtest.h>

#include "qscm/quadrature.hpp"

namespace {

using namespace qscm;

TEST(Quadrature, PolynomialsAreExactOnOnePanel) {
  const auto r = integrate_adaptive([](double x) { return 3 * x * x - 2 * x + 1; }, -1.0, 2.0, 1e-12);
  EXPECT_NEAR(r.value, 9.0 - 3.0 + 3.0, 1e-12);
}

TEST(Quadrature, SmoothOscillatory) {
  const auto r = integrate_adaptive([](double x) { return std::sin(x) * std::exp(x); }, 0.0, 10.0, 1e-11);
  const double exact = 0.5 * (std::exp(10.0) * (std::sin(10.0) - std::cos(10.0)) + 1.0);
  EXPECT_NEAR(r.value, exact, 1e-9 * std::abs(exact));
}

TEST(Quadrature, InfiniteSlopeAtEndpoint) {
  const auto r = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-9);
  EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-9);
}

TEST(Quadrature, IntegrableEndpointSingularity) {
  const auto r = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10);
  EXPECT_NEAR(r.value, 2.0, 1e-9);
}

TEST(Quadrature, KinkedIntegrand) {
  const auto r = integrate_adaptive([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, 1e-12);
  EXPECT_NEAR(r.value, 0.5 * (0.09 + 0.49), 1e-11);
}

TEST(Quadrature, EmptyInterval) { EXPECT_EQ(integrate_adaptive([](double) { return 1.0; }, 2.0, 2.0, 1e-9).value, 0.0); }

TEST(Quadrature, ReversedBoundsFlipSign) {
  const auto r = integrate_adaptive([](double x) { return std::cos(x); }, std::numbers::pi / 2, 0.0, 1e-12);
  EXPECT_NEAR(r.value, -1.0, 1e-12);
}

TEST(Quadrature, NonConvergenceIsANumericError) {
  try {
    integrate_adaptive([](double x) { return x > 0 ? 1.0 / x : 0.0; }, 0.0, 1.0, 1e-12, 8);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Numeric);
  }
}

}  // namespace
