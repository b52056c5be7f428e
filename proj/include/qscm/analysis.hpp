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

// One-parameter sweeps: finite-difference derivatives, feature detection
// (jumps, cusps, derivative peaks) and monotone resampling.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qscm/csv.hpp"
#include "qscm/error.hpp"

namespace qscm {

struct SweepPoint {
  double param = 0.0;
  double value = 0.0;
  std::optional<double> uncertainty;
};

struct SweepResult {
  std::string parameter_name = "x";
  std::vector<SweepPoint> points;
  nlohmann::json provenance = nlohmann::json::object();

  std::size_t size() const { return points.size(); }

  /// Params strictly increasing, values finite.
  void validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!std::isfinite(points[i].param) || !std::isfinite(points[i].value))
        fail(ErrorKind::Domain, "sweep point " + std::to_string(i) + " is not finite");
      if (i > 0 && !(points[i].param > points[i - 1].param))
        fail(ErrorKind::Domain, "sweep parameters must be strictly increasing (point " + std::to_string(i) + ")");
    }
  }
};

enum class FeatureKind { Peak, Cusp, Jump };

constexpr std::string_view to_string(FeatureKind k) {
  switch (k) {
    case FeatureKind::Peak: return "peak";
    case FeatureKind::Cusp: return "cusp";
    case FeatureKind::Jump: return "jump";
  }
  return "?";
}

struct Feature {
  FeatureKind kind = FeatureKind::Peak;
  double location = 0.0;
  double width = 0.0;  // full width of the confidence interval around location
  int derivative_order = 0;
  double strength = 0.0;  // jump size, |d2| at a cusp, or |d^k| at a peak
};

struct TransitionReport {
  std::vector<Feature> features;
  double grid_step = 0.0;
  std::map<int, double> per_size_locations;  // only filled by root searches over chain sizes
};

inline nlohmann::json to_json(const Feature& f) {
  return {{"kind", std::string(to_string(f.kind))},
          {"location", f.location},
          {"width", f.width},
          {"interval", {f.location - 0.5 * f.width, f.location + 0.5 * f.width}},
          {"derivative_order", f.derivative_order},
          {"strength", f.strength}};
}

inline nlohmann::json to_json(const TransitionReport& r) {
  nlohmann::json j;
  j["grid_step"] = r.grid_step;
  j["features"] = nlohmann::json::array();
  for (const auto& f : r.features) j["features"].push_back(to_json(f));
  if (!r.per_size_locations.empty()) {
    nlohmann::json sizes = nlohmann::json::object();
    for (const auto& [n, x] : r.per_size_locations) sizes[std::to_string(n)] = x;
    j["per_size_locations"] = sizes;
  }
  return j;
}

inline constexpr double kUniformGridTol = 1e-9;

namespace detail {

inline double uniform_step(const SweepResult& s) {
  const auto n = s.points.size();
  const double h = (s.points.back().param - s.points.front().param) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(s.points[i].param - s.points[i - 1].param - h) > kUniformGridTol)
      fail(ErrorKind::Precondition, "non-uniform grid at point " + std::to_string(i) + "; resample first");
  return h;
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2) return *mid;
  const double hi = *mid;
  const double lo = *std::max_element(v.begin(), mid);
  return 0.5 * (lo + hi);
}

/// 5-point quadratic Savitzky-Golay; the two points at each edge are kept.
inline std::vector<double> smooth5(const std::vector<double>& v) {
  std::vector<double> out = v;
  for (std::size_t i = 2; i + 2 < v.size(); ++i)
    out[i] = (-3.0 * v[i - 2] + 12.0 * v[i - 1] + 17.0 * v[i] + 12.0 * v[i + 1] - 3.0 * v[i + 2]) / 35.0;
  return out;
}

}  // namespace detail

/// Central differences with O(h^2) stencils on a uniform grid; endpoints
/// the stencil cannot reach are dropped. Order 3 is applied after a
/// 5-point local quadratic smoothing pass.
inline SweepResult central_derivative(const SweepResult& s, int order) {
  if (order < 1 || order > 3) fail(ErrorKind::Domain, "derivative order must be 1, 2 or 3");
  const std::size_t n = s.points.size();
  if (n < static_cast<std::size_t>(order) + 2)
    fail(ErrorKind::InsufficientData,
         "order " + std::to_string(order) + " derivative needs at least " + std::to_string(order + 2) + " points");
  s.validate();
  const double h = detail::uniform_step(s);

  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = s.points[i].value;
  if (order == 3) f = detail::smooth5(f);

  SweepResult out;
  out.parameter_name = s.parameter_name;
  out.provenance = s.provenance;
  out.provenance["derivative_order"] = order;
  const std::size_t reach = order == 3 ? 2 : 1;
  for (std::size_t i = reach; i + reach < n; ++i) {
    double d = 0.0;
    switch (order) {
      case 1: d = (f[i + 1] - f[i - 1]) / (2.0 * h); break;
      case 2: d = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h); break;
      default: d = (f[i + 2] - 2.0 * f[i + 1] + 2.0 * f[i - 1] - f[i - 2]) / (2.0 * h * h * h); break;
    }
    out.points.push_back({s.points[i].param, d, std::nullopt});
  }
  return out;
}

/// Fritsch-Carlson monotone cubic interpolation onto `steps` uniform points
/// spanning the original parameter range.
inline SweepResult resample_uniform(const SweepResult& s, int steps) {
  const std::size_t n = s.points.size();
  if (n < 2) fail(ErrorKind::InsufficientData, "resampling needs at least 2 points");
  if (steps < 2) fail(ErrorKind::Domain, "resampling needs at least 2 output points");
  s.validate();

  std::vector<double> x(n), y(n), delta(n - 1), m(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = s.points[i].param;
    y[i] = s.points[i].value;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  m[0] = delta[0];
  m[n - 1] = delta[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) m[i] = delta[i - 1] * delta[i] <= 0.0 ? 0.0 : 0.5 * (delta[i - 1] + delta[i]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (delta[i] == 0.0) {
      m[i] = m[i + 1] = 0.0;
      continue;
    }
    const double a = m[i] / delta[i];
    const double b = m[i + 1] / delta[i];
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double t = 3.0 / std::sqrt(r);
      m[i] = t * a * delta[i];
      m[i + 1] = t * b * delta[i];
    }
  }

  SweepResult out;
  out.parameter_name = s.parameter_name;
  out.provenance = s.provenance;
  out.provenance["resampled_steps"] = steps;
  const double lo = x.front(), hi = x.back();
  std::size_t seg = 0;
  for (int k = 0; k < steps; ++k) {
    const double t_param = k == steps - 1 ? hi : lo + (hi - lo) * k / (steps - 1);
    while (seg + 2 < n && t_param > x[seg + 1]) ++seg;
    const double hseg = x[seg + 1] - x[seg];
    const double t = (t_param - x[seg]) / hseg;
    const double t2 = t * t, t3 = t2 * t;
    const double v = (2 * t3 - 3 * t2 + 1) * y[seg] + (t3 - 2 * t2 + t) * hseg * m[seg] + (-2 * t3 + 3 * t2) * y[seg + 1] +
                     (t3 - t2) * hseg * m[seg + 1];
    out.points.push_back({t_param, v, std::nullopt});
  }
  return out;
}

struct DetectorSettings {
  double jump_factor = 10.0;
  int jump_window = 5;  // neighbouring differences on each side
  double cusp_factor = 10.0;
  double floor_fraction = 1e-9;  // of the value (or derivative) range
};

/// Jumps on the raw series, cusps from the first two derivatives, and for
/// each order 1..order_max the interior maximum of |d^k| away from jumps.
inline TransitionReport detect_features(const SweepResult& s, int order_max, const DetectorSettings& cfg = {}) {
  const std::size_t n = s.points.size();
  if (n < 5) fail(ErrorKind::InsufficientData, "feature detection needs at least 5 points");
  if (order_max < 0 || order_max > 3) fail(ErrorKind::Domain, "order_max must be in [0, 3]");
  s.validate();
  const double h = detail::uniform_step(s);

  TransitionReport report;
  report.grid_step = h;

  auto range_of = [](const SweepResult& r) {
    double lo = r.points.front().value, hi = lo;
    for (const auto& p : r.points) {
      lo = std::min(lo, p.value);
      hi = std::max(hi, p.value);
    }
    return hi - lo;
  };

  std::vector<double> diff(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) diff[i] = std::abs(s.points[i + 1].value - s.points[i].value);
  const double jump_floor = cfg.floor_fraction * range_of(s);
  std::vector<double> excluded;  // jump centres; derivative stencils across them are meaningless
  const auto w = static_cast<std::size_t>(cfg.jump_window);
  for (std::size_t i = 0; i < diff.size(); ++i) {
    std::vector<double> left, right;
    for (std::size_t k = i >= w ? i - w : 0; k < i; ++k) left.push_back(diff[k]);
    for (std::size_t k = i + 1; k < std::min(diff.size(), i + 1 + w); ++k) right.push_back(diff[k]);
    const double local = std::max(detail::median(left), detail::median(right));
    if (diff[i] > jump_floor && diff[i] > cfg.jump_factor * local) {
      const double x = 0.5 * (s.points[i].param + s.points[i + 1].param);
      report.features.push_back({FeatureKind::Jump, x, h, 0, diff[i]});
      excluded.push_back(x);
    }
  }

  if (order_max >= 1 && n >= 4) {
    const SweepResult d1 = central_derivative(s, 1);
    const SweepResult d2 = central_derivative(s, 2);  // same interior points as d1
    std::vector<double> mag(d2.size());
    for (std::size_t i = 0; i < d2.size(); ++i) mag[i] = std::abs(d2.points[i].value);
    const double med = detail::median(mag);
    const double floor = cfg.floor_fraction * range_of(d2);
    for (std::size_t i = 0; i + 1 < d1.size(); ++i) {
      const double a = d1.points[i].value, b = d1.points[i + 1].value;
      if (!((a > 0 && b < 0) || (a < 0 && b > 0))) continue;
      const double spike = std::max(mag[i], mag[i + 1]);
      if (spike <= floor || spike <= cfg.cusp_factor * med) continue;
      const double x = d1.points[i].param + h * a / (a - b);
      const bool near_jump =
          std::any_of(excluded.begin(), excluded.end(), [&](double e) { return std::abs(e - x) <= 2.5 * h; });
      if (near_jump) continue;
      report.features.push_back({FeatureKind::Cusp, x, h, 1, spike});
    }
  }

  for (int k = 1; k <= order_max; ++k) {
    if (n < static_cast<std::size_t>(k) + 2) break;
    const SweepResult d = central_derivative(s, k);
    const double guard = (k == 3 ? 4.5 : 2.5) * h;
    std::optional<std::size_t> best;
    for (std::size_t i = 1; i + 1 < d.size(); ++i) {
      const double x = d.points[i].param;
      if (std::any_of(excluded.begin(), excluded.end(), [&](double e) { return std::abs(e - x) <= guard; })) continue;
      const double v = std::abs(d.points[i].value);
      if (v < std::abs(d.points[i - 1].value) || v < std::abs(d.points[i + 1].value)) continue;
      if (!best || v > std::abs(d.points[*best].value)) best = i;
    }
    if (!best || std::abs(d.points[*best].value) == 0.0) continue;
    const std::size_t i = *best;
    const double ym = std::abs(d.points[i - 1].value), y0 = std::abs(d.points[i].value),
                 yp = std::abs(d.points[i + 1].value);
    const double denom = ym - 2.0 * y0 + yp;
    double shift = denom != 0.0 ? 0.5 * (ym - yp) / denom : 0.0;
    shift = std::clamp(shift, -0.5, 0.5);
    report.features.push_back({FeatureKind::Peak, d.points[i].param + shift * h, h, k, y0});
  }
  return report;
}

/// Reads a sweep table: first column is the parameter, `column` names the
/// value (default: "qscm" when present, else the second column); an
/// "uncertainty" column is picked up when present.
inline SweepResult read_sweep_csv(std::istream& in, const std::string& column = {}) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!csv::trim(line).empty()) break;
  }
  if (csv::trim(line).empty()) fail(ErrorKind::Load, "sweep CSV is empty");
  const auto header = csv::split(line);
  if (header.size() < 2) fail(ErrorKind::Load, "sweep CSV needs at least two columns");

  auto find = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    return std::nullopt;
  };
  std::size_t value_col = 1;
  if (!column.empty()) {
    const auto c = find(column);
    if (!c) fail(ErrorKind::Load, "column '" + column + "' not in CSV header");
    value_col = *c;
  } else if (const auto c = find("qscm")) {
    value_col = *c;
  }
  const auto unc_col = find("uncertainty");

  SweepResult s;
  s.parameter_name = header[0];
  s.provenance["value_column"] = header[value_col];
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    const auto fields = csv::split(line);
    if (fields.size() != header.size())
      fail(ErrorKind::Load, "line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                                " fields, got " + std::to_string(fields.size()));
    const auto x = csv::parse_real(fields[0]);
    const auto v = csv::parse_real(fields[value_col]);
    if (!x || !v) fail(ErrorKind::Load, "line " + std::to_string(line_no) + ": malformed number");
    SweepPoint p{*x, *v, std::nullopt};
    if (unc_col) {
      const auto u = csv::parse_real(fields[*unc_col]);
      if (!u) fail(ErrorKind::Load, "line " + std::to_string(line_no) + ": malformed uncertainty");
      p.uncertainty = *u;
    }
    s.points.push_back(p);
  }
  try {
    s.validate();
  } catch (const Error& e) {
    fail(ErrorKind::Load, e.what());
  }
  return s;
}

inline SweepResult read_sweep_csv(const std::string& path, const std::string& column = {}) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Load, "cannot open '" + path + "'");
  return read_sweep_csv(in, column);
}

inline void write_sweep_csv(const SweepResult& s, std::ostream& os, const std::string& value_name = "value") {
  const bool with_unc = std::any_of(s.points.begin(), s.points.end(), [](const SweepPoint& p) { return p.uncertainty; });
  std::vector<std::string> header{s.parameter_name, value_name};
  if (with_unc) header.push_back("uncertainty");
  csv::write_row(os, header);
  for (const auto& p : s.points) {
    std::vector<std::string> row{csv::format_real(p.param), csv::format_real(p.value)};
    if (with_unc) row.push_back(csv::format_real(p.uncertainty.value_or(0.0)));
    csv::write_row(os, row);
  }
}

}  // namespace qscm
