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

// Density matrices and the spectral primitives built on them: entropy,
// trace distance, tensor products and partial traces. All logarithms are
// base 2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qscm/error.hpp"

namespace qscm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

/// Eigenvalues of a density matrix, sorted descending. Values in the window
/// [-kPsdTol, 0) are clamped to zero and counted in `clamped_count`.
struct Spectrum {
  std::vector<double> values;
  int clamped_count = 0;

  double sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }
  std::size_t size() const { return values.size(); }
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

namespace detail {

inline std::vector<double> hermitian_eigenvalues_descending(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) fail(ErrorKind::Numeric, "Hermitian eigensolver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::reverse(out.begin(), out.end());
  return out;
}

inline double hermiticity_defect(const CMatrix& m) {
  double worst = 0.0;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i; j < m.cols(); ++j) worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

inline std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace detail

/// Hermitian, positive semi-definite, unit-trace matrix. Immutable; the
/// spectrum is computed once during validation.
class DensityMatrix {
 public:
  /// Validates the three state invariants, naming the first one violated.
  static DensityMatrix from_matrix(CMatrix m) {
    if (m.rows() == 0 || m.rows() != m.cols())
      fail(ErrorKind::Shape, "density matrix must be square and non-empty");
    const double herm = detail::hermiticity_defect(m);
    if (herm > kHermiticityTol)
      fail(ErrorKind::NotAState, "hermitian invariant violated (max |rho_ij - conj(rho_ji)| = " +
                                     detail::fmt_double(herm) + ")");
    CMatrix h = 0.5 * (m + m.adjoint());
    const double tr = h.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol)
      fail(ErrorKind::NotAState, "unit-trace invariant violated (trace = " + detail::fmt_double(tr) + ")");

    Spectrum spec;
    spec.values = detail::hermitian_eigenvalues_descending(h);
    for (double& v : spec.values) {
      if (v < -kPsdTol)
        fail(ErrorKind::NotAState, "positive-semidefinite invariant violated (eigenvalue " + detail::fmt_double(v) + ")");
      if (v < 0.0) {
        v = 0.0;
        ++spec.clamped_count;
      }
    }
    return DensityMatrix(std::move(h), std::move(spec));
  }

  Index dim() const noexcept { return m_.rows(); }
  const CMatrix& matrix() const noexcept { return m_; }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  double largest_eigenvalue() const noexcept { return spectrum_.values.front(); }
  bool is_pure(double tol = kPsdTol) const noexcept { return largest_eigenvalue() >= 1.0 - tol; }

 private:
  DensityMatrix(CMatrix m, Spectrum s) : m_(std::move(m)), spectrum_(std::move(s)) {}

  CMatrix m_;
  Spectrum spectrum_;
};

/// The normalized maximally mixed state I/dim.
inline DensityMatrix maximally_mixed(Index dim) {
  if (dim < 2) fail(ErrorKind::InvalidDimension, "maximally mixed state needs dim >= 2, got " + std::to_string(dim));
  return DensityMatrix::from_matrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

/// rho = (I + r.sigma) / 2.
inline DensityMatrix from_bloch(const BlochVector& v) {
  if (v.norm() > 1.0 + 1e-12)
    fail(ErrorKind::NotAState, "Bloch vector length " + detail::fmt_double(v.norm()) + " exceeds 1");
  CMatrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 + v.z);
  m(1, 1) = 0.5 * (1.0 - v.z);
  m(0, 1) = 0.5 * Complex(v.x, -v.y);
  m(1, 0) = 0.5 * Complex(v.x, v.y);
  return DensityMatrix::from_matrix(std::move(m));
}

inline DensityMatrix diagonal_state(std::span<const double> p) {
  CMatrix m = CMatrix::Zero(static_cast<Index>(p.size()), static_cast<Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = p[i];
  return DensityMatrix::from_matrix(std::move(m));
}

/// |psi><psi| for a (not necessarily normalized) non-zero vector.
inline DensityMatrix pure_state(const CVector& psi) {
  const double n = psi.norm();
  if (n == 0.0) fail(ErrorKind::Domain, "zero vector is not a state");
  const CVector u = psi / n;
  return DensityMatrix::from_matrix(u * u.adjoint());
}

inline const Spectrum& eigen_spectrum(const DensityMatrix& rho) { return rho.spectrum(); }

/// von Neumann entropy in bits, with 0 log 0 := 0.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double l : rho.spectrum().values)
    if (l > 0.0) s -= l * std::log2(l);
  return std::max(s, 0.0);
}

/// Half the trace norm of rho - sigma.
inline double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    fail(ErrorKind::Shape, "trace distance between dimensions " + std::to_string(rho.dim()) + " and " +
                               std::to_string(sigma.dim()));
  const CMatrix diff = rho.matrix() - sigma.matrix();
  double acc = 0.0;
  for (double mu : detail::hermitian_eigenvalues_descending(diff)) acc += std::abs(mu);
  return 0.5 * acc;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline DensityMatrix tensor(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return DensityMatrix::from_matrix(kron(rho.matrix(), sigma.matrix()));
}

inline DensityMatrix tensor_power(const DensityMatrix& rho, int n) {
  if (n < 1) fail(ErrorKind::Domain, "tensor power needs n >= 1");
  CMatrix m = rho.matrix();
  for (int k = 1; k < n; ++k) m = kron(m, rho.matrix());
  return DensityMatrix::from_matrix(std::move(m));
}

/// Reduced state on the subsystems listed in `keep`. Subsystem 0 is the most
/// significant tensor factor, matching `tensor`. Kept subsystems appear in
/// increasing index order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> dims, std::span<const int> keep) {
  if (dims.empty()) fail(ErrorKind::Shape, "partial trace needs at least one subsystem");
  Index total = 1;
  for (int d : dims) {
    if (d < 1) fail(ErrorKind::Shape, "subsystem dimensions must be positive");
    total *= d;
  }
  if (total != rho.dim())
    fail(ErrorKind::Shape, "subsystem dimensions multiply to " + std::to_string(total) + " but state has dim " +
                               std::to_string(rho.dim()));
  if (keep.empty()) fail(ErrorKind::Shape, "partial trace must keep at least one subsystem");

  const auto n_sub = static_cast<int>(dims.size());
  std::vector<bool> kept(static_cast<std::size_t>(n_sub), false);
  for (int k : keep) {
    if (k < 0 || k >= n_sub) fail(ErrorKind::Shape, "kept subsystem index " + std::to_string(k) + " out of range");
    if (kept[static_cast<std::size_t>(k)]) fail(ErrorKind::Shape, "kept subsystem index repeated");
    kept[static_cast<std::size_t>(k)] = true;
  }

  // Split every full index into (kept index, traced index).
  std::vector<Index> kept_of(static_cast<std::size_t>(total)), traced_of(static_cast<std::size_t>(total));
  Index kept_dim = 1, traced_dim = 1;
  for (int s = 0; s < n_sub; ++s) (kept[static_cast<std::size_t>(s)] ? kept_dim : traced_dim) *= dims[static_cast<std::size_t>(s)];
  for (Index full = 0; full < total; ++full) {
    Index rem = full, k = 0, t = 0, kmul = 1, tmul = 1;
    for (int s = n_sub - 1; s >= 0; --s) {
      const int d = dims[static_cast<std::size_t>(s)];
      const Index digit = rem % d;
      rem /= d;
      if (kept[static_cast<std::size_t>(s)]) {
        k += digit * kmul;
        kmul *= d;
      } else {
        t += digit * tmul;
        tmul *= d;
      }
    }
    kept_of[static_cast<std::size_t>(full)] = k;
    traced_of[static_cast<std::size_t>(full)] = t;
  }

  std::vector<std::vector<Index>> by_traced(static_cast<std::size_t>(traced_dim));
  for (Index full = 0; full < total; ++full) by_traced[static_cast<std::size_t>(traced_of[static_cast<std::size_t>(full)])].push_back(full);

  CMatrix out = CMatrix::Zero(kept_dim, kept_dim);
  const CMatrix& m = rho.matrix();
  for (const auto& group : by_traced)
    for (Index i : group)
      for (Index j : group) out(kept_of[static_cast<std::size_t>(i)], kept_of[static_cast<std::size_t>(j)]) += m(i, j);
  return DensityMatrix::from_matrix(std::move(out));
}

inline double unitarity_defect(const CMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

/// U rho U^dagger.
inline DensityMatrix conjugate(const DensityMatrix& rho, const CMatrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) fail(ErrorKind::Shape, "unitary and state dimensions differ");
  return DensityMatrix::from_matrix(u * rho.matrix() * u.adjoint());
}

namespace detail {

inline CMatrix ginibre(Index dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(i, j) = Complex(re, im);
    }
  return g;
}

}  // namespace detail

/// Ginibre-ensemble state G G^dagger / Tr(G G^dagger); deterministic per seed.
inline DensityMatrix random_density_matrix(Index dim, std::uint64_t seed) {
  if (dim < 2) fail(ErrorKind::InvalidDimension, "random state needs dim >= 2");
  const CMatrix g = detail::ginibre(dim, seed);
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix::from_matrix(std::move(m));
}

/// Haar unitary: QR of a Ginibre matrix with the phases of R's diagonal
/// moved into Q.
inline CMatrix random_unitary(Index dim, std::uint64_t seed) {
  if (dim < 2) fail(ErrorKind::InvalidDimension, "random unitary needs dim >= 2");
  const CMatrix g = detail::ginibre(dim, seed ^ 0x9e3779b97f4a7c15ULL);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  return q;
}

inline DensityMatrix random_pure_state(Index dim, std::uint64_t seed) {
  if (dim < 2) fail(ErrorKind::InvalidDimension, "random pure state needs dim >= 2");
  std::mt19937_64 gen(seed ^ 0x5851f42d4c957f2dULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector psi(dim);
  for (Index i = 0; i < dim; ++i) {
    const double re = normal(gen);
    const double im = normal(gen);
    psi(i) = Complex(re, im);
  }
  return pure_state(psi);
}

}  // namespace qscm
