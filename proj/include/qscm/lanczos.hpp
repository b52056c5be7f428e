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

// Restarted Lanczos for the lowest eigenpair of a real symmetric operator.
// Full reorthogonalization against the stored Krylov basis; if the Ritz
// vector misses the residual target the iteration restarts from it.

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "qscm/error.hpp"

namespace qscm {

struct LanczosOptions {
  double tolerance = 1e-10;  // on ||H v - E v||
  int krylov_dim = 120;
  int max_restarts = 60;
};

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;
  double residual = 0.0;
  int iterations = 0;
};

/// `apply(x, y)` must write H x into y.
template <class Apply>
EigenPair lowest_eigenpair(Apply&& apply, Eigen::VectorXd start, const LanczosOptions& opt = {}) {
  const Eigen::Index n = start.size();
  if (n == 0) fail(ErrorKind::Domain, "empty operator");
  if (start.norm() == 0.0) fail(ErrorKind::Domain, "Lanczos start vector is zero");
  const Eigen::Index m_max = std::min<Eigen::Index>(opt.krylov_dim, n);

  EigenPair out;
  Eigen::VectorXd v = start.normalized();
  Eigen::VectorXd w(n), hy(n);
  Eigen::MatrixXd basis(n, m_max);
  Eigen::VectorXd alpha(m_max), beta(m_max);

  for (int restart = 0; restart <= opt.max_restarts; ++restart) {
    basis.col(0) = v;
    Eigen::Index m = 0;
    Eigen::VectorXd ritz;
    for (Eigen::Index j = 0; j < m_max; ++j) {
      apply(basis.col(j), w);
      alpha(j) = basis.col(j).dot(w);
      w -= alpha(j) * basis.col(j);
      if (j > 0) w -= beta(j - 1) * basis.col(j - 1);
      for (int pass = 0; pass < 2; ++pass) w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
      beta(j) = w.norm();
      m = j + 1;

      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(alpha.head(m), beta.head(m - 1), Eigen::ComputeEigenvectors);
      ritz = tri.eigenvectors().col(0);
      const double estimate = std::abs(beta(j) * ritz(m - 1));
      const double scale = std::max(1.0, std::abs(tri.eigenvalues()(0)));
      if (estimate < 0.1 * opt.tolerance || beta(j) < 1e-14 * scale || m == m_max) break;
      basis.col(j + 1) = w / beta(j);
    }

    Eigen::VectorXd y = basis.leftCols(m) * ritz;
    y.normalize();
    apply(y, hy);
    out.value = y.dot(hy);
    out.residual = (hy - out.value * y).norm();
    out.iterations += static_cast<int>(m);
    out.vector = std::move(y);
    if (out.residual <= opt.tolerance) return out;
    v = out.vector;
  }
  fail(ErrorKind::Numeric, "Lanczos did not converge: residual " + std::to_string(out.residual) + " after " +
                               std::to_string(out.iterations) + " iterations");
}

}  // namespace qscm
