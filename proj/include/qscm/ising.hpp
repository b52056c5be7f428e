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

// Transverse-field Ising chain H = -sum_j s^x_j s^x_{j+1} - g sum_j s^z_j
// (periodic, J = 1) solved through Jordan-Wigner fermions. The one-site
// reduced state only has a z Bloch component,
//   <s^z> = 1 - (2/N) sum_k sin^2(theta_k / 2),
// with k on the antiperiodic grid +-(2m - 1) pi / N.

#include <cmath>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "qscm/complexity.hpp"
#include "qscm/error.hpp"
#include "qscm/quadrature.hpp"
#include "qscm/state.hpp"

namespace qscm::ising {

struct FiniteChain {
  int n_sites = 0;
};
struct Thermodynamic {};
using ChainSize = std::variant<FiniteChain, Thermodynamic>;

struct IsingParams {
  double g = 0.0;
  ChainSize size = Thermodynamic{};
};

struct MomentumGrid {
  std::vector<double> values;  // ascending
};

inline constexpr double kThermoQuadratureTol = 1e-11;
inline constexpr double kDerivativeStep = 1e-4;

/// theta_k = atan2(sin k, g - cos k), which picks the correct branch on
/// both sides of g = cos k.
inline double bogoliubov_angle(double k, double g) {
  const double s = std::sin(k), c = g - std::cos(k);
  if (std::abs(s) < 1e-15 && std::abs(c) < 1e-15)
    fail(ErrorKind::Singularity, "Bogoliubov angle undefined at sin k = 0, g = cos k");
  return std::atan2(s, c);
}

inline void validate_chain_length(int n) {
  if (n % 2 != 0) fail(ErrorKind::Unsupported, "odd chain length " + std::to_string(n) + " is not supported");
  if (n < 4) fail(ErrorKind::InvalidDimension, "chain length must be at least 4");
}

inline MomentumGrid momentum_grid(int n) {
  validate_chain_length(n);
  MomentumGrid grid;
  grid.values.reserve(static_cast<std::size_t>(n));
  for (int m = n / 2; m >= 1; --m) grid.values.push_back(-(2.0 * m - 1.0) * std::numbers::pi / n);
  for (int m = 1; m <= n / 2; ++m) grid.values.push_back((2.0 * m - 1.0) * std::numbers::pi / n);
  return grid;
}

inline double sigma_z_finite(int n, double g) {
  const MomentumGrid grid = momentum_grid(n);
  double acc = 0.0;
  for (double k : grid.values) {
    const double s = std::sin(0.5 * bogoliubov_angle(k, g));
    acc += s * s;
  }
  return 1.0 - 2.0 * acc / n;
}

namespace detail {

// Also valid for g < 0 (odd continuation); used by derivative stencils.
inline double sigma_z_thermo_any(double g) {
  auto integrand = [g](double xi) {
    const double s = std::sin(0.5 * std::atan2(std::sin(xi), g - std::cos(xi)));
    return s * s;
  };
  const auto q = integrate_adaptive(integrand, -std::numbers::pi, 0.0, kThermoQuadratureTol);
  return 1.0 - 2.0 / std::numbers::pi * q.value;
}

}  // namespace detail

/// Infinite-chain limit of the momentum sum, by adaptive quadrature over
/// xi in [-pi, 0].
inline double sigma_z_thermo(double g) {
  if (!(g >= 0.0)) fail(ErrorKind::Domain, "transverse field must be non-negative");
  return detail::sigma_z_thermo_any(g);
}

inline void validate(const IsingParams& p) {
  if (!(p.g >= 0.0)) fail(ErrorKind::Domain, "transverse field must be non-negative");
  if (const auto* f = std::get_if<FiniteChain>(&p.size)) validate_chain_length(f->n_sites);
}

inline double sigma_z(const IsingParams& p) {
  validate(p);
  if (const auto* f = std::get_if<FiniteChain>(&p.size)) return sigma_z_finite(f->n_sites, p.g);
  return sigma_z_thermo(p.g);
}

inline DensityMatrix one_qubit_reduced(const IsingParams& p) { return from_bloch({0.0, 0.0, sigma_z(p)}); }

inline double qscm_ising(double g, ChainSize size) { return qscm_qubit(std::abs(sigma_z({g, size}))); }

/// First and second g-derivatives of the complexity through the chain rule
/// on C(r(g)), with r' and r'' from central differences of <s^z>.
struct ComplexityDerivatives {
  double first = 0.0;
  double second = 0.0;
};

inline ComplexityDerivatives qscm_ising_derivatives(double g, ChainSize size, double h = kDerivativeStep) {
  validate({g, size});
  auto sz = [&](double x) {
    if (const auto* f = std::get_if<FiniteChain>(&size)) return sigma_z_finite(f->n_sites, x);
    return detail::sigma_z_thermo_any(x);
  };
  const double r0 = sz(g), rp = sz(g + h), rm = sz(g - h);
  const double d1r = (rp - rm) / (2.0 * h);
  const double d2r = (rp - 2.0 * r0 + rm) / (h * h);
  const double r = std::abs(r0);
  const double sign = r0 < 0.0 ? -1.0 : 1.0;
  const double c1 = qscm_qubit_d1(r), c2 = qscm_qubit_d2(r);
  return {c1 * sign * d1r, c2 * d1r * d1r + c1 * sign * d2r};
}

struct IsingPoint {
  double g = 0.0;
  double sigma_z = 0.0;
  double entropy = 0.0;
  double disequilibrium = 0.0;
  double qscm = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

inline IsingPoint evaluate(double g, ChainSize size, int derivative_order = 0) {
  IsingPoint pt;
  pt.g = g;
  pt.sigma_z = sigma_z({g, size});
  const ComplexityValue c = qscm(from_bloch({0.0, 0.0, pt.sigma_z}));
  pt.entropy = c.entropy_part;
  pt.disequilibrium = c.disequilibrium_part;
  pt.qscm = qscm_qubit(std::abs(pt.sigma_z));
  if (derivative_order >= 1) {
    const auto d = qscm_ising_derivatives(g, size);
    pt.d1 = d.first;
    pt.d2 = d.second;
  }
  return pt;
}

}  // namespace qscm::ising
