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

#include <array>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "qscm/state.hpp"
#include "qscm/state_io.hpp"

namespace {

using namespace qscm;

template <class Fn>
std::string error_message(Fn&& fn, ErrorKind expected) {
  try {
    fn();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), expected) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "no error thrown";
  return {};
}

TEST(DensityMatrix, RejectsNonHermitianNamingTheInvariant) {
  CMatrix m(2, 2);
  m << 0.5, 0.1, 0.2, 0.5;
  const auto msg = error_message([&] { DensityMatrix::from_matrix(m); }, ErrorKind::NotAState);
  EXPECT_NE(msg.find("hermitian"), std::string::npos);
}

TEST(DensityMatrix, RejectsWrongTrace) {
  const auto msg = error_message([] { DensityMatrix::from_matrix(CMatrix::Identity(2, 2)); }, ErrorKind::NotAState);
  EXPECT_NE(msg.find("unit-trace"), std::string::npos);
}

TEST(DensityMatrix, RejectsNegativeEigenvalue) {
  CMatrix m(2, 2);
  m << 1.2, 0.0, 0.0, -0.2;
  const auto msg = error_message([&] { DensityMatrix::from_matrix(m); }, ErrorKind::NotAState);
  EXPECT_NE(msg.find("positive-semidefinite"), std::string::npos);
}

TEST(DensityMatrix, RejectsNonSquare) {
  error_message([] { DensityMatrix::from_matrix(CMatrix::Zero(2, 3)); }, ErrorKind::Shape);
}

TEST(DensityMatrix, ClampsTinyNegativeEigenvalues) {
  CMatrix m(2, 2);
  m << 1.0 + 1e-12, 0.0, 0.0, -1e-12;
  const auto rho = DensityMatrix::from_matrix(m);
  EXPECT_EQ(rho.spectrum().clamped_count, 1u);
  EXPECT_EQ(rho.spectrum().values.back(), 0.0);
}

TEST(MaximallyMixed, SpectrumAndEntropy) {
  for (Index d : {2, 3, 5, 8}) {
    const auto rho = maximally_mixed(d);
    for (double v : rho.spectrum().values) EXPECT_NEAR(v, 1.0 / d, 1e-15);
    EXPECT_NEAR(von_neumann_entropy(rho), std::log2(static_cast<double>(d)), 1e-12);
  }
  error_message([] { maximally_mixed(1); }, ErrorKind::InvalidDimension);
}

TEST(Bloch, EigenvaluesAreHalfOnePlusMinusR) {
  const auto rho = from_bloch({0.3, -0.4, 0.5});
  const double r = std::sqrt(0.5);
  EXPECT_NEAR(rho.spectrum().values[0], 0.5 * (1 + r), 1e-14);
  EXPECT_NEAR(rho.spectrum().values[1], 0.5 * (1 - r), 1e-14);
  error_message([] { from_bloch({0.0, 0.0, 1.01}); }, ErrorKind::NotAState);
}

TEST(Bloch, PureStateHasZeroEntropy) {
  const auto rho = from_bloch({0.0, 1.0, 0.0});
  EXPECT_TRUE(rho.is_pure());
  EXPECT_NEAR(von_neumann_entropy(rho), 0.0, 1e-12);
}

TEST(TraceDistance, MatchesHalfL1OfCommutingSpectra) {
  const std::array<double, 3> p{0.5, 0.3, 0.2}, q{0.1, 0.1, 0.8};
  const double expected = 0.5 * (0.4 + 0.2 + 0.6);
  EXPECT_NEAR(trace_distance(diagonal_state(p), diagonal_state(q)), expected, 1e-14);
  error_message([] { trace_distance(maximally_mixed(2), maximally_mixed(3)); }, ErrorKind::Shape);
}

TEST(TraceDistance, OrthogonalPureStatesAreAtDistanceOne) {
  CVector a(2), b(2);
  a << 1, 0;
  b << 0, 1;
  EXPECT_NEAR(trace_distance(pure_state(a), pure_state(b)), 1.0, 1e-14);
}

TEST(Tensor, KronOfProductStateFactorsUnderPartialTrace) {
  const auto a = random_density_matrix(2, 11);
  const auto b = random_density_matrix(3, 12);
  const auto c = random_density_matrix(2, 13);
  const auto abc = tensor(tensor(a, b), c);
  const std::array<int, 3> dims{2, 3, 2};
  const std::array<int, 1> keep_b{1};
  const std::array<int, 2> keep_ac{0, 2};
  EXPECT_LT((partial_trace(abc, dims, keep_b).matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((partial_trace(abc, dims, keep_ac).matrix() - tensor(a, c).matrix()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Tensor, PartialTraceOfBellStateIsMaximallyMixed) {
  CVector psi = CVector::Zero(4);
  psi(0) = psi(3) = 1.0;
  const std::array<int, 2> dims{2, 2};
  const std::array<int, 1> keep{0};
  const auto reduced = partial_trace(pure_state(psi), dims, keep);
  EXPECT_LT((reduced.matrix() - maximally_mixed(2).matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Tensor, PartialTraceValidatesDims) {
  const auto rho = maximally_mixed(4);
  const std::array<int, 2> dims{2, 3};
  const std::array<int, 1> keep{0};
  EXPECT_THROW(partial_trace(rho, dims, keep), Error);
}

TEST(Tensor, PowerDimensionAndEntropyAdditivity) {
  const auto rho = random_density_matrix(3, 5);
  const auto cube = tensor_power(rho, 3);
  EXPECT_EQ(cube.dim(), 27);
  EXPECT_NEAR(von_neumann_entropy(cube), 3.0 * von_neumann_entropy(rho), 1e-10);
}

TEST(Random, UnitaryIsUnitaryAndSeeded) {
  for (Index d : {2, 4, 7}) {
    const auto u = random_unitary(d, 99);
    EXPECT_LT(unitarity_defect(u), 1e-12);
    EXPECT_EQ(u, random_unitary(d, 99));
    EXPECT_NE(u, random_unitary(d, 100));
  }
}

TEST(Random, StatesAreValidAndReproducible) {
  const auto a = random_density_matrix(5, 7);
  const auto b = random_density_matrix(5, 7);
  EXPECT_EQ(a.matrix(), b.matrix());
  EXPECT_NEAR(a.spectrum().sum(), 1.0, 1e-12);
  EXPECT_TRUE(random_pure_state(4, 3).is_pure(1e-12));
}

TEST(Conjugate, PreservesSpectrum) {
  const auto rho = random_density_matrix(4, 21);
  const auto moved = conjugate(rho, random_unitary(4, 22));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(moved.spectrum().values[i], rho.spectrum().values[i], 1e-13);
}

TEST(StateIo, JsonRoundTripIsExact) {
  const auto rho = random_density_matrix(3, 4);
  const auto back = density_matrix_from_json(to_json(rho));
  EXPECT_EQ(back.matrix(), rho.matrix());
}

TEST(StateIo, ImaginaryPartIsOptional) {
  const auto rho = density_matrix_from_json(nlohmann::json::parse(R"({"dim":2,"re":[[0.5,0],[0,0.5]]})"));
  EXPECT_NEAR(rho.spectrum().values[0], 0.5, 1e-15);
}

TEST(StateIo, ShapeMismatchIsALoadError) {
  error_message([] { density_matrix_from_json(nlohmann::json::parse(R"({"dim":2,"re":[[1,0]]})")); },
                ErrorKind::Load);
  error_message([] { read_density_matrix("/nonexistent/state.json"); }, ErrorKind::Load);
}

TEST(StateIo, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "qscm_state_io_test.json";
  const auto rho = from_bloch({0.1, 0.2, 0.3});
  write_density_matrix(rho, path.string());
  EXPECT_EQ(read_density_matrix(path.string()).matrix(), rho.matrix());
  std::filesystem::remove(path);
}

}  // namespace
