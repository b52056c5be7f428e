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

// Checkers for the structural properties of the quantum complexity:
// unitary invariance, sub-additivity over copies, the extension-by-I/N
// identity and bound, and an exploratory comparison for extensions by a
// pure state.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qscm/complexity.hpp"
#include "qscm/parallel.hpp"
#include "qscm/state.hpp"

namespace qscm {

inline constexpr Index kMaxCheckDim = 4096;
inline constexpr Index kMaxCopiesCheckDim = 256;

/// The complexity functional under test. `entropy_scale` exists so the
/// property harness can be fed a deliberately wrong measure.
struct ComplexityMeasure {
  DisequilibriumKind kind = DisequilibriumKind::TraceDistance;
  double entropy_scale = 1.0;

  ComplexityValue operator()(const DensityMatrix& rho) const {
    ComplexityValue c = qscm(rho, kind);
    if (entropy_scale != 1.0) {
      c.entropy_part *= entropy_scale;
      c.value *= entropy_scale;
    }
    return c;
  }
};

struct CheckResult {
  double residual = 0.0;
  bool pass = true;
};

/// Aggregate over many cases: {check, n_cases, max_residual, pass}.
struct PropertyReport {
  std::string check;
  std::size_t n_cases = 0;
  double max_residual = 0.0;
  bool pass = true;

  void add(const CheckResult& r) {
    ++n_cases;
    max_residual = std::max(max_residual, r.residual);
    pass = pass && r.pass;
  }
};

inline nlohmann::json to_json(const PropertyReport& r) {
  return {{"check", r.check}, {"n_cases", r.n_cases}, {"max_residual", r.max_residual}, {"pass", r.pass}};
}

inline CheckResult check_unitary_invariance(const DensityMatrix& rho, const CMatrix& u,
                                            const ComplexityMeasure& measure = {}) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) fail(ErrorKind::Shape, "unitary and state dimensions differ");
  if (unitarity_defect(u) > 1e-10) fail(ErrorKind::Precondition, "matrix is not unitary");
  const double diff = std::abs(measure(conjugate(rho, u)).value - measure(rho).value);
  return {diff, diff <= 1e-10};
}

/// C(rho^{(x)n}) <= n C(rho) for the trace distance; equality for the
/// relative-entropy disequilibrium, which is additive.
inline CheckResult check_subadditivity_copies(const DensityMatrix& rho, int n, const ComplexityMeasure& measure = {}) {
  if (n != 2 && n != 3) fail(ErrorKind::Domain, "copies check supports n = 2 or 3");
  Index d = 1;
  for (int k = 0; k < n; ++k) d *= rho.dim();
  if (d > kMaxCheckDim) fail(ErrorKind::Resource, "dim^n = " + std::to_string(d) + " exceeds 4096");

  const double single = measure(rho).value;
  const double copies = measure(tensor_power(rho, n)).value;
  if (measure.kind == DisequilibriumKind::RelativeEntropy) {
    const double r = std::abs(copies - n * single);
    return {r, r <= 1e-9};
  }
  const double excess = copies - n * single;
  return {std::max(0.0, excess), excess <= 1e-10};
}

/// Extension by the maximally mixed state. The identity
///   C(rho (x) I) = (S + log2 N) / (2 log2 N) * D(rho, I)
/// is exact; the chained upper bounds are also evaluated.
struct ExtensionReport {
  double extended = 0.0;         // C(rho (x) I) computed directly
  double identity_rhs = 0.0;     // (S + log N)/(2 log N) * D
  double split_form = 0.0;       // C(rho)/2 + D(rho, I)/2
  double loose_bound = 0.0;      // C(rho)/2 + 1/2
  CheckResult identity;
  CheckResult bound;
  // n-copy variant C(rho^{(x)n} (x) I^{(x)n}) <= n (S + log N)/(2 log N) D,
  // evaluated for every n with N^{2n} <= 256.
  std::vector<double> copies_extended;
  std::vector<double> copies_bound;
  CheckResult copies;
};

inline ExtensionReport check_extension_identities(const DensityMatrix& rho, const ComplexityMeasure& measure = {}) {
  const Index n_dim = rho.dim();
  if (n_dim * n_dim > kMaxCheckDim) fail(ErrorKind::Resource, "dim^2 exceeds 4096");
  const DensityMatrix mixed = maximally_mixed(n_dim);
  const double log_n = std::log2(static_cast<double>(n_dim));
  const double s = von_neumann_entropy(rho);
  const double d = trace_distance(rho, mixed);
  const double c = measure(rho).value;

  ExtensionReport rep;
  rep.extended = measure(tensor(rho, mixed)).value;
  rep.identity_rhs = (s + log_n) / (2.0 * log_n) * d;
  rep.split_form = c / 2.0 + d / 2.0;
  rep.loose_bound = c / 2.0 + 0.5;
  rep.identity.residual = std::abs(rep.extended - rep.identity_rhs);
  rep.identity.pass = rep.identity.residual <= 1e-10;
  const double bound_excess = std::max(rep.extended - rep.split_form, rep.split_form - rep.loose_bound);
  rep.bound = {std::max(0.0, bound_excess), bound_excess <= 1e-10};

  Index big = n_dim * n_dim;
  for (int copies = 1; big <= kMaxCopiesCheckDim; ++copies) {
    const DensityMatrix ext = tensor(tensor_power(rho, copies), tensor_power(mixed, copies));
    const double lhs = measure(ext).value;
    const double rhs = copies * rep.identity_rhs;
    rep.copies_extended.push_back(lhs);
    rep.copies_bound.push_back(rhs);
    rep.copies.residual = std::max(rep.copies.residual, std::max(0.0, lhs - rhs));
    rep.copies.pass = rep.copies.pass && lhs <= rhs + 1e-10;
    big *= n_dim * n_dim;
  }
  return rep;
}

/// Extension by a pure state: computes C(rho (x) psi) directly and sets it
/// beside two candidate right-hand sides. Nothing here is asserted.
struct PureExtensionReport {
  double direct = 0.0;            // C(rho (x) psi)
  double enlarged_space = 0.0;    // S(rho)/(2 log N) * D(rho (x) psi, I_{N^2})
  double psi_distance_form = 0.0; // S(rho)/(2 log N) * D(rho, psi)
  double upper_form = 0.0;        // S(rho)/(2 log N) * (D(rho, I) + (N-1)/N)
  double residual_psi_distance = 0.0;  // direct - psi_distance_form
  double residual_upper = 0.0;         // direct - upper_form (<= 0 when the bound holds)
};

inline PureExtensionReport explore_pure_extension(const DensityMatrix& rho, const DensityMatrix& psi) {
  if (rho.dim() != psi.dim()) fail(ErrorKind::Shape, "state and pure extension dimensions differ");
  if (!psi.is_pure()) fail(ErrorKind::Precondition, "extension state is not pure");
  const Index n_dim = rho.dim();
  const double log_n = std::log2(static_cast<double>(n_dim));
  const double s = von_neumann_entropy(rho);
  const DensityMatrix joint = tensor(rho, psi);

  PureExtensionReport rep;
  rep.direct = qscm(joint).value;
  rep.enlarged_space = s / (2.0 * log_n) * trace_distance(joint, maximally_mixed(n_dim * n_dim));
  rep.psi_distance_form = s / (2.0 * log_n) * trace_distance(rho, psi);
  rep.upper_form = s / (2.0 * log_n) *
                   (trace_distance(rho, maximally_mixed(n_dim)) + (n_dim - 1.0) / static_cast<double>(n_dim));
  rep.residual_psi_distance = rep.direct - rep.psi_distance_form;
  rep.residual_upper = rep.direct - rep.upper_form;
  return rep;
}

inline nlohmann::json to_json(const PureExtensionReport& r) {
  return {{"direct", r.direct},
          {"enlarged_space", r.enlarged_space},
          {"psi_distance_form", r.psi_distance_form},
          {"upper_form", r.upper_form},
          {"residual_psi_distance", r.residual_psi_distance},
          {"residual_upper", r.residual_upper}};
}

// ---------------------------------------------------------------------------
// Seeded property suite.

struct SuiteOptions {
  std::uint64_t seed = 20260101;
  std::size_t cases = 200;
  double entropy_scale = 1.0;
  unsigned threads = 0;  // 0: default worker count
};

struct SuiteResult {
  std::vector<PropertyReport> asserted;
  PropertyReport pure_extension_bound;  // informational only
  double max_psi_distance_residual = 0.0;
  bool pass = true;
};

namespace detail {

inline std::uint64_t case_seed(std::uint64_t base, std::uint64_t check, std::size_t i) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (check * 1000003ULL + i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

template <class Fn>
PropertyReport run_cases(std::string name, std::size_t cases, unsigned threads, Fn&& fn) {
  const auto results = parallel_map(cases, [&](std::size_t i) { return fn(i); }, threads);
  PropertyReport rep;
  rep.check = std::move(name);
  for (const auto& r : results) rep.add(r);
  return rep;
}

}  // namespace detail

inline SuiteResult run_property_suite(const SuiteOptions& opt) {
  const ComplexityMeasure trace{DisequilibriumKind::TraceDistance, opt.entropy_scale};
  const ComplexityMeasure relative{DisequilibriumKind::RelativeEntropy, opt.entropy_scale};
  const auto seed = [&](std::uint64_t check, std::size_t i) { return detail::case_seed(opt.seed, check, i); };
  const auto dim_for = [](std::size_t i) { return static_cast<Index>(2 + i % 7); };  // 2..8

  SuiteResult out;
  out.asserted.push_back(detail::run_cases("unitary_invariance", opt.cases, opt.threads, [&](std::size_t i) {
    const Index d = dim_for(i);
    return check_unitary_invariance(random_density_matrix(d, seed(1, i)), random_unitary(d, seed(2, i)), trace);
  }));
  out.asserted.push_back(detail::run_cases("subadditivity_copies_n2", opt.cases, opt.threads, [&](std::size_t i) {
    return check_subadditivity_copies(random_density_matrix(2 + static_cast<Index>(i % 3), seed(3, i)), 2, trace);
  }));
  out.asserted.push_back(detail::run_cases("subadditivity_copies_n3", opt.cases, opt.threads, [&](std::size_t i) {
    return check_subadditivity_copies(random_density_matrix(2 + static_cast<Index>(i % 2), seed(4, i)), 3, trace);
  }));
  out.asserted.push_back(detail::run_cases("relative_entropy_additivity", opt.cases, opt.threads, [&](std::size_t i) {
    const int n = 2 + static_cast<int>(i % 2);
    return check_subadditivity_copies(random_density_matrix(3, seed(5, i)), n, relative);
  }));
  out.asserted.push_back(detail::run_cases("extension_identity", opt.cases, opt.threads, [&](std::size_t i) {
    return check_extension_identities(random_density_matrix(2 + static_cast<Index>(i % 3), seed(6, i)), trace).identity;
  }));
  out.asserted.push_back(detail::run_cases("extension_bound", opt.cases, opt.threads, [&](std::size_t i) {
    const auto rep = check_extension_identities(random_density_matrix(2 + static_cast<Index>(i % 3), seed(7, i)), trace);
    return CheckResult{std::max(rep.bound.residual, rep.copies.residual), rep.bound.pass && rep.copies.pass};
  }));

  const auto explored = parallel_map(
      opt.cases,
      [&](std::size_t i) {
        const Index d = 2 + static_cast<Index>(i % 2);
        return explore_pure_extension(random_density_matrix(d, seed(8, i)), random_pure_state(d, seed(9, i)));
      },
      opt.threads);
  out.pure_extension_bound.check = "pure_extension_upper_form (informational)";
  for (const auto& r : explored) {
    out.pure_extension_bound.add({std::max(0.0, r.residual_upper), r.residual_upper <= 1e-10});
    out.max_psi_distance_residual = std::max(out.max_psi_distance_residual, std::abs(r.residual_psi_distance));
  }

  for (const auto& r : out.asserted) out.pass = out.pass && r.pass;
  return out;
}

inline nlohmann::json to_json(const SuiteResult& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.asserted) checks.push_back(to_json(c));
  return {{"pass", r.pass},
          {"checks", std::move(checks)},
          {"exploration",
           {{"pure_extension_upper_form", to_json(r.pure_extension_bound)},
            {"max_abs_residual_psi_distance_form", r.max_psi_distance_residual}}}};
}

}  // namespace qscm
