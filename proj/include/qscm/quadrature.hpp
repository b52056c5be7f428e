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

// Globally adaptive Gauss-Kronrod quadrature. Every panel carries the 15-point
// Kronrod estimate over its two halves, with the disagreement against the
// estimate over the whole panel as its error. The panel with the largest
// error is bisected until the summed error meets the tolerance. Only interior
// nodes are evaluated, so integrable endpoint singularities are fine.

#include <array>
#include <cmath>
#include <functional>
#include <queue>
#include <vector>
#include <string>

#include "qscm/error.hpp"

namespace qscm {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  int max_depth_reached = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

template <class F>
double kronrod15(F& f, double a, double b, long& evals) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double sum = kKronrodWeights[7] * f(c);
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kKronrodNodes[static_cast<std::size_t>(i)];
    sum += kKronrodWeights[static_cast<std::size_t>(i)] * (f(c - dx) + f(c + dx));
  }
  evals += 15;
  return sum * h;
}

struct Panel {
  double a, b, left, right, value, error;
  int depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel make_panel(F& f, double a, double b, double whole, int depth, long& evals) {
  const double m = 0.5 * (a + b);
  const double l = kronrod15(f, a, m, evals), r = kronrod15(f, m, b, evals);
  return {a, b, l, r, l + r, std::abs(l + r - whole), depth};
}

}  // namespace detail

template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol, int max_depth = 100) {
  QuadratureResult res;
  if (a == b) return res;
  std::priority_queue<detail::Panel> heap;
  heap.push(detail::make_panel(f, a, b, detail::kronrod15(f, a, b, res.evaluations), 1, res.evaluations));
  double value = heap.top().value, error = heap.top().error;
  res.max_depth_reached = 1;
  while (error > std::max(abs_tol, 1e-15 * std::abs(value))) {
    const detail::Panel p = heap.top();
    if (p.depth >= max_depth)
      fail(ErrorKind::Numeric, "adaptive quadrature did not converge on [" + std::to_string(p.a) + ", " +
                                   std::to_string(p.b) + "] (error " + std::to_string(error) + ", tolerance " +
                                   std::to_string(abs_tol) + ", " + std::to_string(res.evaluations) +
                                   " evaluations)");
    heap.pop();
    const double m = 0.5 * (p.a + p.b);
    const auto l = detail::make_panel(f, p.a, m, p.left, p.depth + 1, res.evaluations);
    const auto r = detail::make_panel(f, m, p.b, p.right, p.depth + 1, res.evaluations);
    value += l.value + r.value - p.value;
    error += l.error + r.error - p.error;
    res.max_depth_reached = std::max(res.max_depth_reached, p.depth + 1);
    heap.push(l);
    heap.push(r);
  }
  // Re-sum to shed the drift of the running updates.
  value = error = 0.0;
  for (; !heap.empty(); heap.pop()) {
    value += heap.top().value;
    error += heap.top().error;
  }
  res.value = value;
  res.error_estimate = error;
  return res;
}

}  // namespace qscm
