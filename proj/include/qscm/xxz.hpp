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

// Spin-1/2 XXZ ring at zero field, H = sum_j [Sx Sx + Sy Sy + delta Sz Sz]
// (antiferromagnetic sign), diagonalized block by block in total Sz.
// Two-site reduced states and correlators at distance r, finite-size
// extrapolation, the cusp root search and the correlator simplex map.
//
// Basis states are bit strings, bit j set = site j up. Two-site matrices
// use the order {uu, ud, du, dd}.

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "qscm/analysis.hpp"
#include "qscm/complexity.hpp"
#include "qscm/csv.hpp"
#include "qscm/error.hpp"
#include "qscm/extrapolation.hpp"
#include "qscm/lanczos.hpp"
#include "qscm/parallel.hpp"
#include "qscm/state.hpp"

namespace qscm::xxz {

inline constexpr int kMinSites = 2;
inline constexpr int kMaxSites = 20;
inline constexpr Index kDenseThreshold = 256;
inline constexpr double kDegeneracyTol = 1e-8;
inline constexpr double kStructureTol = 1e-10;
inline constexpr double kConeTol = 1e-12;

struct XxzParams {
  double delta = 1.0;
  int n_sites = 12;
};

inline void validate_chain_length(int n) {
  if (n < kMinSites || n > kMaxSites || n % 2 != 0)
    fail(ErrorKind::InvalidDimension,
         "XXZ chain length must be even in [" + std::to_string(kMinSites) + ", " + std::to_string(kMaxSites) +
             "], got " + std::to_string(n));
}

inline void validate(const XxzParams& p) {
  if (!std::isfinite(p.delta)) fail(ErrorKind::Domain, "delta must be finite");
  validate_chain_length(p.n_sites);
}

namespace detail {

inline constexpr auto kBinomial = [] {
  std::array<std::array<std::uint32_t, 33>, 33> t{};
  for (int n = 0; n <= 32; ++n) {
    t[n][0] = 1;
    for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
  }
  return t;
}();

}  // namespace detail

/// Fixed-magnetization basis in increasing integer order, which for a
/// fixed number of set bits is colex order, so ranks follow from binomials.
class SectorBasis {
 public:
  SectorBasis(int n_sites, int sector_sz) : n_sites_(n_sites), sector_sz_(sector_sz) {
    if (n_sites < 1 || n_sites > 30) fail(ErrorKind::InvalidDimension, "unsupported chain length");
    if (std::abs(sector_sz) > n_sites || (sector_sz + n_sites) % 2 != 0)
      fail(ErrorKind::Domain, "empty sector: 2Sz=" + std::to_string(sector_sz) + " for " + std::to_string(n_sites) +
                                  " sites");
    n_up_ = (n_sites + sector_sz) / 2;
    states_.reserve(detail::kBinomial[n_sites][n_up_]);
    if (n_up_ == 0) {
      states_.push_back(0);
      return;
    }
    const std::uint32_t limit = 1u << n_sites;
    for (std::uint32_t s = (1u << n_up_) - 1; s < limit;) {
      states_.push_back(s);
      const std::uint32_t low = s & (~s + 1);
      const std::uint32_t ripple = s + low;
      s = (((ripple ^ s) >> 2) / low) | ripple;
    }
  }

  int n_sites() const noexcept { return n_sites_; }
  int sector_sz() const noexcept { return sector_sz_; }
  int n_up() const noexcept { return n_up_; }
  Index size() const noexcept { return static_cast<Index>(states_.size()); }
  std::uint32_t state(Index i) const { return states_[static_cast<std::size_t>(i)]; }
  const std::vector<std::uint32_t>& states() const noexcept { return states_; }

  /// Position of `s` in the basis, or -1 when it lies in another sector.
  Index index_of(std::uint32_t s) const noexcept {
    if ((s >> n_sites_) != 0 || std::popcount(s) != n_up_) return -1;
    Index rank = 0;
    int i = 1;
    while (s) {
      const int p = std::countr_zero(s);
      rank += detail::kBinomial[p][i++];
      s &= s - 1;
    }
    return rank;
  }

 private:
  int n_sites_;
  int sector_sz_;
  int n_up_ = 0;
  std::vector<std::uint32_t> states_;
};

/// Nearest-neighbour bonds of the ring; the two-site ring has one bond.
inline std::vector<std::pair<int, int>> ring_bonds(int n) {
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j < n; ++j) {
    const int a = std::min(j, (j + 1) % n), b = std::max(j, (j + 1) % n);
    if (std::find(out.begin(), out.end(), std::pair{a, b}) == out.end()) out.emplace_back(a, b);
  }
  return out;
}

using SparseOperator = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct SectorHamiltonian {
  SectorBasis basis;
  SparseOperator matrix;
};

inline SectorHamiltonian build_hamiltonian(const XxzParams& p, int sector_sz) {
  validate(p);
  SectorBasis basis(p.n_sites, sector_sz);
  const auto bonds = ring_bonds(p.n_sites);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(basis.size()) * (bonds.size() + 1));
  for (Index i = 0; i < basis.size(); ++i) {
    const std::uint32_t s = basis.state(i);
    double diag = 0.0;
    for (const auto& [a, b] : bonds) {
      const bool ua = (s >> a) & 1u, ub = (s >> b) & 1u;
      if (ua == ub) {
        diag += 0.25 * p.delta;
      } else {
        diag -= 0.25 * p.delta;
        const Index j = basis.index_of(s ^ ((1u << a) | (1u << b)));
        entries.emplace_back(static_cast<int>(j), static_cast<int>(i), 0.5);
      }
    }
    entries.emplace_back(static_cast<int>(i), static_cast<int>(i), diag);
  }
  SparseOperator h(basis.size(), basis.size());
  h.setFromTriplets(entries.begin(), entries.end());
  return {std::move(basis), std::move(h)};
}

/// Total 2Sz of each basis state; the Hamiltonian is block diagonal in it.
inline Eigen::VectorXd total_sz_diagonal(const SectorBasis& basis) {
  Eigen::VectorXd d(basis.size());
  for (Index i = 0; i < basis.size(); ++i) d(i) = 2 * std::popcount(basis.state(i)) - basis.n_sites();
  return d;
}

struct SectorEnergy {
  int sector_sz = 0;
  double energy = 0.0;
  double residual = 0.0;
};

struct XxzGroundState {
  XxzParams params;
  int sector_sz = 0;
  SectorBasis basis{2, 0};
  Eigen::VectorXd amplitudes;
  double energy = 0.0;
  double residual = 0.0;
  bool degenerate = false;
  std::vector<SectorEnergy> sectors;  // lowest energy in every scanned sector
};

namespace detail {

/// Signs (-1)^(up spins on odd sites): the ground state of every sector has
/// strictly positive overlap with this vector, so it is a safe Lanczos seed.
inline Eigen::VectorXd marshall_seed(const SectorBasis& basis) {
  std::uint32_t odd = 0;
  for (int j = 1; j < basis.n_sites(); j += 2) odd |= 1u << j;
  Eigen::VectorXd v(basis.size());
  for (Index i = 0; i < basis.size(); ++i) v(i) = (std::popcount(basis.state(i) & odd) % 2) ? -1.0 : 1.0;
  return v;
}

inline void fix_sign(Eigen::VectorXd& v) {
  Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  if (v(k) < 0) v = -v;
}

inline EigenPair lowest_in_sector(const SectorHamiltonian& sh) {
  const SparseOperator& h = sh.matrix;
  EigenPair pair;
  if (sh.basis.size() <= kDenseThreshold) {
    const Eigen::MatrixXd dense(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    if (es.info() != Eigen::Success) fail(ErrorKind::Numeric, "dense eigensolver failed");
    pair.value = es.eigenvalues()(0);
    pair.vector = es.eigenvectors().col(0);
    pair.residual = (dense * pair.vector - pair.value * pair.vector).norm();
  } else {
    pair = lowest_eigenpair([&](const auto& x, Eigen::VectorXd& y) { y.noalias() = h * x; }, marshall_seed(sh.basis));
  }
  fix_sign(pair.vector);
  return pair;
}

}  // namespace detail

/// Lowest state over all sectors. Spin-flip symmetry maps sector s to -s,
/// so only s >= 0 is diagonalized. Among sectors within the degeneracy
/// tolerance of the minimum the one with the smallest |Sz| is kept, and the
/// state is flagged degenerate whenever a second level sits that close.
inline XxzGroundState ground_state(const XxzParams& p) {
  validate(p);
  XxzGroundState gs;
  gs.params = p;
  std::vector<EigenPair> pairs;
  std::vector<SectorBasis> bases;
  for (int sz = p.n_sites % 2; sz <= p.n_sites; sz += 2) {
    SectorHamiltonian sh = build_hamiltonian(p, sz);
    EigenPair e = detail::lowest_in_sector(sh);
    gs.sectors.push_back({sz, e.value, e.residual});
    pairs.push_back(std::move(e));
    bases.push_back(std::move(sh.basis));
  }
  double e0 = gs.sectors.front().energy;
  for (const auto& s : gs.sectors) e0 = std::min(e0, s.energy);
  std::size_t chosen = gs.sectors.size();
  int close = 0;
  for (std::size_t k = 0; k < gs.sectors.size(); ++k) {
    if (gs.sectors[k].energy > e0 + kDegeneracyTol) continue;
    close += gs.sectors[k].sector_sz == 0 ? 1 : 2;
    if (chosen == gs.sectors.size()) chosen = k;
  }
  gs.sector_sz = gs.sectors[chosen].sector_sz;
  gs.energy = gs.sectors[chosen].energy;
  gs.residual = gs.sectors[chosen].residual;
  gs.amplitudes = std::move(pairs[chosen].vector);
  gs.basis = std::move(bases[chosen]);
  gs.degenerate = close > 1;
  return gs;
}

namespace detail {

inline int pair_code(std::uint32_t s, int i, int j) {
  const int ui = (s >> i) & 1u, uj = (s >> j) & 1u;
  return 2 * (1 - ui) + (1 - uj);
}

inline void check_distance(const XxzGroundState& gs, int r) {
  if (r < 1 || 2 * r > gs.params.n_sites)
    fail(ErrorKind::Domain, "distance r=" + std::to_string(r) + " needs 1 <= r <= N/2 (N=" +
                                std::to_string(gs.params.n_sites) + ")");
}

}  // namespace detail

/// Reduced state of sites (i, j) before any averaging or symmetrization.
inline Eigen::Matrix4d pair_rdm(const XxzGroundState& gs, int i, int j) {
  const int n = gs.params.n_sites;
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) fail(ErrorKind::Domain, "invalid site pair");
  Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
  const std::uint32_t both = (1u << i) | (1u << j);
  for (Index k = 0; k < gs.basis.size(); ++k) {
    const std::uint32_t s = gs.basis.state(k);
    const double a = gs.amplitudes(k);
    const int c = detail::pair_code(s, i, j);
    rho(c, c) += a * a;
    if (c == 1 || c == 2) rho(3 - c, c) += gs.amplitudes(gs.basis.index_of(s ^ both)) * a;
  }
  return rho;
}

/// Translation-averaged two-site state at distance r. Degenerate ground
/// states are replaced by the spin-flip symmetric mixture.
inline DensityMatrix two_site_rdm(const XxzGroundState& gs, int r) {
  detail::check_distance(gs, r);
  const int n = gs.params.n_sites;
  Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
  for (int i = 0; i < n; ++i) rho += pair_rdm(gs, i, (i + r) % n);
  rho /= n;
  if (gs.degenerate) {
    Eigen::Matrix4d flipped;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) flipped(a, b) = rho(3 - a, 3 - b);
    rho = 0.5 * (rho + flipped);
  }
  return DensityMatrix::from_matrix(rho.cast<Complex>());
}

struct PairCorrelators {
  double xx = 0.0;
  double zz = 0.0;
  int r = 1;
};

/// Translation-averaged <sx sx>, <sy sy>, <sz sz> at distance r, from
/// Pauli products applied to the wavefunction.
inline std::array<double, 3> pauli_correlators(const XxzGroundState& gs, int r) {
  detail::check_distance(gs, r);
  const int n = gs.params.n_sites;
  double xx = 0.0, yy = 0.0, zz = 0.0;
  for (int i = 0; i < n; ++i) {
    const int j = (i + r) % n;
    const std::uint32_t both = (1u << i) | (1u << j);
    for (Index k = 0; k < gs.basis.size(); ++k) {
      const std::uint32_t s = gs.basis.state(k);
      const double a = gs.amplitudes(k);
      const bool parallel = ((s >> i) & 1u) == ((s >> j) & 1u);
      zz += (parallel ? 1.0 : -1.0) * a * a;
      const Index t = gs.basis.index_of(s ^ both);
      if (t < 0) continue;
      const double overlap = gs.amplitudes(t) * a;
      xx += overlap;
      yy += parallel ? -overlap : overlap;
    }
  }
  return {xx / n, yy / n, zz / n};
}

inline PairCorrelators correlators(const XxzGroundState& gs, int r) {
  const auto [xx, yy, zz] = pauli_correlators(gs, r);
  if (std::abs(xx - yy) > kStructureTol)
    fail(ErrorKind::Numeric, "<sy sy> differs from <sx sx> by " + std::to_string(std::abs(xx - yy)));
  return {xx, zz, r};
}

inline bool in_cone(double xx, double zz, double tol = kConeTol) {
  return 1.0 - zz + tol >= 2.0 * std::abs(xx) && 1.0 + zz + tol >= 0.0;
}

inline DensityMatrix rdm_from_correlators(const PairCorrelators& c) {
  if (!std::isfinite(c.xx) || !std::isfinite(c.zz) || !in_cone(c.xx, c.zz)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "correlators (xx=" << c.xx << ", zz=" << c.zz << ") violate the positivity cone";
    fail(ErrorKind::NotAState, msg.str());
  }
  CMatrix rho = CMatrix::Zero(4, 4);
  rho(0, 0) = rho(3, 3) = (1.0 + c.zz) / 4.0;
  rho(1, 1) = rho(2, 2) = (1.0 - c.zz) / 4.0;
  rho(1, 2) = rho(2, 1) = c.xx / 2.0;
  return DensityMatrix::from_matrix(std::move(rho));
}

/// Eigenvalues of rho - I/4 for the correlator-parameterized state.
inline std::array<double, 4> deviation_eigenvalues(const PairCorrelators& c) {
  return {0.25 * (2.0 * c.xx - c.zz), 0.25 * (-2.0 * c.xx - c.zz), 0.25 * c.zz, 0.25 * c.zz};
}

// ---------------------------------------------------------------------------
// Finite-size samples and thermodynamic estimates

struct SizeSample {
  int n_sites = 0;
  double energy = 0.0;
  bool degenerate = false;
  std::array<PairCorrelators, 2> by_distance{};  // r = 1, 2
};

inline void validate_sizes(const std::vector<int>& sizes) {
  if (sizes.empty()) fail(ErrorKind::Domain, "at least one chain size is required");
  for (int n : sizes) {
    validate_chain_length(n);
    if (n < 4) fail(ErrorKind::InvalidDimension, "sweeps need chains of at least 4 sites for r=2");
  }
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1]) fail(ErrorKind::Domain, "chain sizes must be strictly increasing");
}

inline SizeSample sample(double delta, int n_sites) {
  const XxzGroundState gs = ground_state({delta, n_sites});
  return {n_sites, gs.energy / n_sites, gs.degenerate, {correlators(gs, 1), correlators(gs, 2)}};
}

inline std::vector<SizeSample> sample_sizes(double delta, const std::vector<int>& sizes) {
  validate_sizes(sizes);
  std::vector<SizeSample> out;
  for (int n : sizes) out.push_back(sample(delta, n));
  return out;
}

/// Correlator estimate with per-component uncertainty.
struct CorrelatorEstimate {
  double delta = 0.0;
  PairCorrelators c;
  double xx_uncertainty = 0.0;
  double zz_uncertainty = 0.0;
  bool degenerate = false;
  bool extrapolated = false;
  bool clipped = false;  // moved back onto the positivity cone
};

namespace detail {

inline std::pair<double, double> project_to_cone(double xx, double zz) {
  zz = std::clamp(zz, -1.0, 1.0);
  const double limit = 0.5 * (1.0 - zz);
  xx = std::clamp(xx, -limit, limit);
  return {xx, zz};
}

}  // namespace detail

/// Largest size as is, or per-component extrapolation over all sizes.
/// Extrapolated values outside the cone are projected onto it and the
/// shift is added to the uncertainty.
inline CorrelatorEstimate estimate(double delta, const std::vector<SizeSample>& samples, int r, bool extrapolate,
                                   ExtrapolationScheme scheme = ExtrapolationScheme::Polynomial) {
  if (r != 1 && r != 2) fail(ErrorKind::Domain, "distance must be 1 or 2");
  if (samples.empty()) fail(ErrorKind::InsufficientData, "no finite-size samples");
  CorrelatorEstimate out;
  out.delta = delta;
  out.c.r = r;
  out.extrapolated = extrapolate;
  for (const auto& s : samples) out.degenerate = out.degenerate || s.degenerate;
  const auto idx = static_cast<std::size_t>(r - 1);
  if (!extrapolate) {
    out.c = samples.back().by_distance[idx];
    return out;
  }
  std::map<int, double> xs, zs;
  for (const auto& s : samples) {
    xs[s.n_sites] = s.by_distance[idx].xx;
    zs[s.n_sites] = s.by_distance[idx].zz;
  }
  const Estimate ex = extrapolate_thermo(xs, scheme);
  const Estimate ez = extrapolate_thermo(zs, scheme);
  const auto [px, pz] = detail::project_to_cone(ex.value, ez.value);
  out.clipped = px != ex.value || pz != ez.value;
  out.c.xx = px;
  out.c.zz = pz;
  out.xx_uncertainty = ex.uncertainty + std::abs(px - ex.value);
  out.zz_uncertainty = ez.uncertainty + std::abs(pz - ez.value);
  return out;
}

struct XxzPoint {
  CorrelatorEstimate correlators;
  ComplexityValue complexity;
  double uncertainty = 0.0;  // on complexity.value
};

/// Complexity of the correlator state; the uncertainty is the largest
/// change over the corners of the correlator error box (clipped to the cone).
inline XxzPoint make_point(const CorrelatorEstimate& e) {
  XxzPoint p;
  p.correlators = e;
  p.complexity = qscm(rdm_from_correlators(e.c));
  if (e.xx_uncertainty > 0.0 || e.zz_uncertainty > 0.0) {
    for (int sx : {-1, 1})
      for (int sz : {-1, 1}) {
        const auto [x, z] = detail::project_to_cone(e.c.xx + sx * e.xx_uncertainty, e.c.zz + sz * e.zz_uncertainty);
        const double v = qscm(rdm_from_correlators({x, z, e.c.r})).value;
        p.uncertainty = std::max(p.uncertainty, std::abs(v - p.complexity.value));
      }
  }
  return p;
}

inline double qscm_xxz(double delta, int r, const std::vector<int>& sizes, bool extrapolate = true,
                       ExtrapolationScheme scheme = ExtrapolationScheme::Polynomial) {
  return make_point(estimate(delta, sample_sizes(delta, sizes), r, extrapolate, scheme)).complexity.value;
}

struct SweepOptions {
  double delta_min = -0.99;
  double delta_max = 3.0;
  int steps = 100;  // grid points including both ends
  int distance = 1;
  std::vector<int> sizes{10, 12, 14};
  bool extrapolate = false;
  ExtrapolationScheme scheme = ExtrapolationScheme::Polynomial;
  unsigned threads = 0;
  std::function<void(std::size_t done, std::size_t total)> progress;  // called from worker threads
};

inline std::vector<double> grid(double lo, double hi, int steps) {
  if (steps < 1) fail(ErrorKind::Domain, "steps must be >= 1");
  if (!(lo <= hi)) fail(ErrorKind::Domain, "empty parameter range");
  if (steps == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) out[static_cast<std::size_t>(k)] = k == steps - 1 ? hi : lo + (hi - lo) * k / (steps - 1);
  return out;
}

inline std::vector<XxzPoint> sweep(const SweepOptions& opt) {
  if (opt.distance != 1 && opt.distance != 2) fail(ErrorKind::Domain, "distance must be 1 or 2");
  validate_sizes(opt.sizes);
  if (opt.extrapolate && opt.sizes.size() < 3)
    fail(ErrorKind::InsufficientData, "extrapolation needs at least 3 sizes");
  const auto deltas = grid(opt.delta_min, opt.delta_max, opt.steps);
  std::atomic<std::size_t> done{0};
  return parallel_map(
      deltas.size(),
      [&](std::size_t k) {
        const double d = deltas[k];
        XxzPoint p = make_point(estimate(d, sample_sizes(d, opt.sizes), opt.distance, opt.extrapolate, opt.scheme));
        if (opt.progress) opt.progress(++done, deltas.size());
        return p;
      },
      opt.threads);
}

inline SweepResult to_sweep_result(const std::vector<XxzPoint>& pts) {
  SweepResult s;
  s.parameter_name = "delta";
  for (const auto& p : pts) s.points.push_back({p.correlators.delta, p.complexity.value, p.uncertainty});
  return s;
}

// ---------------------------------------------------------------------------
// Root searches

struct RootResult {
  double location = 0.0;
  double width = 0.0;  // final bracket width
  double slope = 0.0;  // secant slope across the final bracket
};

template <class F>
RootResult bisect(F&& f, double lo, double hi, double tol) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0.0};
  if (fhi == 0.0) return {hi, 0.0, 0.0};
  if ((flo > 0) == (fhi > 0)) {
    std::ostringstream msg;
    msg << "no sign change on [" << lo << ", " << hi << "]: f=" << flo << ", " << fhi;
    fail(ErrorKind::Bracket, msg.str());
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return {mid, 0.0, 0.0};
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return {lo + (hi - lo) * flo / (flo - fhi), hi - lo, (fhi - flo) / (hi - lo)};
}

/// Sign-changing eigenvalue 4 * (2xx - zz) of rho - I/4 at r = 1.
inline double cusp_function(const PairCorrelators& c) { return 2.0 * c.xx - c.zz; }

struct CuspOptions {
  double tolerance = 1e-3;
  ExtrapolationScheme scheme = ExtrapolationScheme::Geometric;
  bool per_size = true;
};

/// Root of 2xx - zz (r = 1) on extrapolated correlators, with the root at
/// each individual size reported alongside.
inline TransitionReport find_cusp(double delta_lo, double delta_hi, const std::vector<int>& sizes,
                                  const CuspOptions& opt = {}) {
  validate_sizes(sizes);
  if (sizes.size() < 3) fail(ErrorKind::InsufficientData, "cusp search needs at least 3 sizes");
  if (!(delta_lo < delta_hi)) fail(ErrorKind::Bracket, "bracket must satisfy lo < hi");
  const RootResult root = bisect(
      [&](double d) { return cusp_function(estimate(d, sample_sizes(d, sizes), 1, true, opt.scheme).c); }, delta_lo,
      delta_hi, opt.tolerance);
  TransitionReport report;
  report.grid_step = root.width;
  report.features.push_back({FeatureKind::Cusp, root.location, root.width, 0, std::abs(root.slope)});
  if (opt.per_size) {
    for (int n : sizes) {
      try {
        report.per_size_locations[n] =
            bisect([&](double d) { return cusp_function(sample(d, n).by_distance[0]); }, delta_lo, delta_hi,
                   opt.tolerance)
                .location;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Bracket) throw;
      }
    }
  }
  return report;
}

/// Where the r = 1 and r = 2 complexities cross, on extrapolated correlators.
inline RootResult find_distance_crossing(double delta_lo, double delta_hi, const std::vector<int>& sizes,
                                         ExtrapolationScheme scheme = ExtrapolationScheme::Geometric,
                                         double tol = 1e-3) {
  validate_sizes(sizes);
  return bisect(
      [&](double d) {
        const auto samples = sample_sizes(d, sizes);
        return make_point(estimate(d, samples, 1, true, scheme)).complexity.value -
               make_point(estimate(d, samples, 2, true, scheme)).complexity.value;
      },
      delta_lo, delta_hi, tol);
}

// ---------------------------------------------------------------------------
// Correlator simplex

struct SimplexPoint {
  double xx = 0.0;
  double zz = 0.0;
  double qscm = 0.0;  // NaN outside the cone
  bool valid = false;
};

/// Square grid over [-1, 1]^2 with `grid_steps` points per axis.
inline std::vector<SimplexPoint> simplex_contour(int grid_steps) {
  if (grid_steps < 2) fail(ErrorKind::Domain, "simplex grid needs at least 2 steps");
  const auto axis = grid(-1.0, 1.0, grid_steps);
  std::vector<SimplexPoint> out;
  out.reserve(axis.size() * axis.size());
  for (double zz : axis)
    for (double xx : axis) {
      SimplexPoint p{xx, zz, std::nan(""), in_cone(xx, zz)};
      if (p.valid) p.qscm = qscm(rdm_from_correlators({xx, zz, 1})).value;
      out.push_back(p);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Tabulated correlators: CSV with header delta,r,xx,zz and optional
// xx_uncertainty, zz_uncertainty, degenerate columns.

using CorrelatorTable = std::map<double, std::map<int, CorrelatorEstimate>>;

inline CorrelatorTable load_tabulated_correlators(std::istream& in) {
  CorrelatorTable table;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    header = csv::split(line);
    break;
  }
  if (header.empty()) return table;
  auto col = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  };
  const int cd = col("delta"), cr = col("r"), cx = col("xx"), cz = col("zz");
  const int cux = col("xx_uncertainty"), cuz = col("zz_uncertainty"), cdeg = col("degenerate");
  if (cd < 0 || cr < 0 || cx < 0 || cz < 0)
    fail(ErrorKind::Load, "line " + std::to_string(line_no) + ": header must contain delta,r,xx,zz");

  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    const auto f = csv::split(line);
    if (f.size() != header.size())
      fail(ErrorKind::Load, where + "expected " + std::to_string(header.size()) + " fields, got " +
                                std::to_string(f.size()));
    auto num = [&](int c, const char* name) {
      const auto v = csv::parse_real(f[static_cast<std::size_t>(c)]);
      if (!v || !std::isfinite(*v)) fail(ErrorKind::Load, where + "malformed " + name + " '" + f[static_cast<std::size_t>(c)] + "'");
      return *v;
    };
    CorrelatorEstimate e;
    e.delta = num(cd, "delta");
    const double r = num(cr, "r");
    if (r != 1.0 && r != 2.0) fail(ErrorKind::Load, where + "r must be 1 or 2");
    e.c = {num(cx, "xx"), num(cz, "zz"), static_cast<int>(r)};
    if (!in_cone(e.c.xx, e.c.zz))
      fail(ErrorKind::Load, where + "correlators violate 1 - zz >= 2|xx| or 1 + zz >= 0");
    if (cux >= 0) e.xx_uncertainty = num(cux, "xx_uncertainty");
    if (cuz >= 0) e.zz_uncertainty = num(cuz, "zz_uncertainty");
    if (cdeg >= 0) e.degenerate = num(cdeg, "degenerate") != 0.0;
    if (e.xx_uncertainty < 0 || e.zz_uncertainty < 0) fail(ErrorKind::Load, where + "negative uncertainty");
    auto& slot = table[e.delta];
    if (slot.count(e.c.r)) fail(ErrorKind::Load, where + "duplicate (delta, r) record");
    slot[e.c.r] = e;
  }
  return table;
}

inline CorrelatorTable load_tabulated_correlators(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Load, "cannot open '" + path + "'");
  return load_tabulated_correlators(in);
}

inline void write_tabulated_correlators(const std::vector<XxzPoint>& pts, std::ostream& os) {
  csv::write_row(os, {"delta", "r", "xx", "zz", "xx_uncertainty", "zz_uncertainty", "degenerate"});
  for (const auto& p : pts) {
    const auto& e = p.correlators;
    csv::write_row(os, {csv::format_real(e.delta), std::to_string(e.c.r), csv::format_real(e.c.xx),
                        csv::format_real(e.c.zz), csv::format_real(e.xx_uncertainty),
                        csv::format_real(e.zz_uncertainty), e.degenerate ? "1" : "0"});
  }
}

}  // namespace qscm::xxz
