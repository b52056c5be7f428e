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

// Dense exact diagonalization of H = -sum sx sx - g sum sz on a ring,
// restricted to the even spin-flip parity sector (even number of down
// spins). Independent of the free-fermion solver.

#include <bit>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace qscm::testing {

inline double ising_ed_sigma_z(int n, double g) {
  std::vector<std::uint32_t> states;
  std::vector<int> index(std::size_t{1} << n, -1);
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (std::popcount(s) % 2 == 0) {  // bit set = spin down
      index[s] = static_cast<int>(states.size());
      states.push_back(s);
    }
  }
  const auto dim = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const std::uint32_t s = states[static_cast<std::size_t>(i)];
    h(i, i) = -g * (n - 2 * std::popcount(s));
    for (int j = 0; j < n; ++j) {
      const std::uint32_t flipped = s ^ (1u << j) ^ (1u << ((j + 1) % n));
      h(index[flipped], i) -= 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::VectorXd psi = es.eigenvectors().col(0);
  double mz = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i)
    mz += psi(i) * psi(i) * (n - 2 * std::popcount(states[static_cast<std::size_t>(i)]));
  return mz / n;
}

}  // namespace qscm::testing
