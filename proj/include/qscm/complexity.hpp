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

// Statistical complexity: entropy times disequilibrium, normalized by the
// maximal entropy log2(N). Zero for pure states and for the maximally
// mixed state.

#include <cmath>
#include <concepts>
#include <numbers>
#include <span>
#include <string>

#include "qscm/error.hpp"
#include "qscm/state.hpp"

namespace qscm {

enum class DisequilibriumKind { TraceDistance, RelativeEntropy };

constexpr std::string_view to_string(DisequilibriumKind k) {
  return k == DisequilibriumKind::TraceDistance ? "trace-distance" : "relative-entropy";
}

struct ComplexityValue {
  double value = 0.0;
  double entropy_part = 0.0;        // bits
  double disequilibrium_part = 0.0;
  Index dim = 0;
};

/// Classical complexity of a probability vector: Shannon entropy times the
/// half l1-distance to the uniform vector, over log2(N).
inline double cscm(std::span<const double> p) {
  if (p.size() < 2) fail(ErrorKind::Domain, "probability vector needs at least 2 entries");
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) fail(ErrorKind::Domain, "probability entries must be non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-10) fail(ErrorKind::Domain, "probabilities must sum to 1");
  const double n = static_cast<double>(p.size());
  double h = 0.0, d = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
    d += std::abs(v - 1.0 / n);
  }
  return h * (0.5 * d) / std::log2(n);
}

/// Disequilibrium of rho against I/N. Both kinds only need the spectrum,
/// since I/N commutes with rho.
inline double disequilibrium(const DensityMatrix& rho, DisequilibriumKind kind) {
  const auto n = static_cast<double>(rho.dim());
  if (kind == DisequilibriumKind::RelativeEntropy) return std::log2(n) - von_neumann_entropy(rho);
  double acc = 0.0;
  for (double l : rho.spectrum().values) acc += std::abs(l - 1.0 / n);
  return 0.5 * acc;
}

inline ComplexityValue qscm(const DensityMatrix& rho, DisequilibriumKind kind = DisequilibriumKind::TraceDistance) {
  if (rho.dim() < 2) fail(ErrorKind::Domain, "complexity is undefined for dim < 2");
  ComplexityValue c;
  c.dim = rho.dim();
  c.entropy_part = von_neumann_entropy(rho);
  c.disequilibrium_part = disequilibrium(rho, kind);
  c.value = c.entropy_part * c.disequilibrium_part / std::log2(static_cast<double>(c.dim));
  return c;
}

// One-qubit closed forms in terms of the Bloch radius r. The arctanh terms
// carry a 1/ln2 so the whole expression stays in bits:
//   C(r) = -(r^2/2) atanh(r)/ln2 - (r/4) log2((1 - r^2)/4)
// which equals S(rho) * r/2 for the spectrum {(1 +- r)/2}.

namespace detail {

template <std::floating_point T>
void check_radius(T r) {
  if (!(r >= T(0)) || r > T(1) + T(1e-12)) fail(ErrorKind::Domain, "Bloch radius must lie in [0, 1]");
}

}  // namespace detail

template <std::floating_point T>
T qscm_qubit(T r) {
  detail::check_radius(r);
  if (T(1) - r < T(1e-12)) return T(0);
  const T ln2 = std::numbers::ln2_v<T>;
  return -(r * r / 2) * std::atanh(r) / ln2 - (r / 4) * std::log2((1 - r * r) / 4);
}

/// dC/dr = -r atanh(r)/ln2 - (1/4) log2((1 - r^2)/4).
template <std::floating_point T>
T qscm_qubit_d1(T r) {
  detail::check_radius(r);
  if (r >= T(1)) fail(ErrorKind::Singularity, "first derivative diverges at r = 1");
  const T ln2 = std::numbers::ln2_v<T>;
  return -r * std::atanh(r) / ln2 - std::log2((1 - r * r) / 4) / 4;
}

/// d2C/dr2 = -atanh(r)/ln2 - r / (2 (1 - r^2) ln2).
template <std::floating_point T>
T qscm_qubit_d2(T r) {
  detail::check_radius(r);
  if (r >= T(1)) fail(ErrorKind::Singularity, "second derivative diverges at r = 1");
  const T ln2 = std::numbers::ln2_v<T>;
  return -std::atanh(r) / ln2 - r / (2 * (1 - r * r) * ln2);
}

/// S(r) = 2 C(r) / r.
inline double entropy_from_complexity_qubit(double r) {
  detail::check_radius(r);
  if (r == 0.0) fail(ErrorKind::Domain, "entropy cannot be recovered from the complexity at r = 0");
  if (1.0 - r < 1e-12) return 0.0;
  // Expanded so that r cancels analytically instead of numerically.
  return -r * std::atanh(r) / std::numbers::ln2 - std::log2((1.0 - r * r) / 4.0) / 2.0;
}

/// Bloch radius maximizing the one-qubit complexity: the root of dC/dr in
/// (0, 1), found by bisection.
inline double qscm_qubit_argmax(double tol = 1e-13) {
  double lo = 0.0, hi = 1.0 - 1e-9;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (qscm_qubit_d1(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace qscm
