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

// qscmlab: complexity of states, model sweeps, transition detection and the
// property suite from the command line.
//
// Exit codes: 0 success, 1 asserted property failed, 2 input error,
// 3 numeric failure.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qscm/qscm.hpp"

namespace {

using qscm::ErrorKind;
using qscm::fail;

constexpr int kExitProperty = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct Output {
  std::string path;

  // Writes the whole document at once so a failed run leaves no partial file.
  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Load, "cannot write '" + path + "'");
    out << text;
    if (!out) fail(ErrorKind::Load, "write to '" + path + "' failed");
  }
};

unsigned resolve_threads(unsigned flag) {
  if (std::getenv("QSCMLAB_THREADS")) return qscm::default_worker_count();
  return flag;
}

class Progress {
 public:
  Progress(std::string label, bool quiet) : label_(std::move(label)), quiet_(quiet) {}
  void operator()(std::size_t done, std::size_t total) {
    if (quiet_) return;
    std::lock_guard lock(mutex_);
    if (done < total && done % 10 != 0) return;
    std::fprintf(stderr, "%s: %zu/%zu\n", label_.c_str(), done, total);
  }

 private:
  std::string label_;
  bool quiet_;
  std::mutex mutex_;
};

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

struct QscmArgs {
  std::string file;
  std::string kind = "trace";
  Output out;
};

int run_qscm(const QscmArgs& a) {
  const auto kind = a.kind == "trace"      ? qscm::DisequilibriumKind::TraceDistance
                    : a.kind == "relative" ? qscm::DisequilibriumKind::RelativeEntropy
                                           : (fail(ErrorKind::Domain, "--kind must be trace or relative"),
                                              qscm::DisequilibriumKind::TraceDistance);
  const auto rho = qscm::read_density_matrix(a.file);
  const auto c = qscm::qscm(rho, kind);
  a.out.write(dump({{"value", c.value},
                    {"entropy_part", c.entropy_part},
                    {"disequilibrium_part", c.disequilibrium_part},
                    {"dim", c.dim},
                    {"kind", std::string(qscm::to_string(kind))}}));
  return 0;
}

struct VerifyArgs {
  std::uint64_t seed = qscm::SuiteOptions{}.seed;
  std::size_t cases = 200;
  double inject_fault = 1.0;
  unsigned threads = 0;
  Output out;
};

int run_verify(const VerifyArgs& a) {
  if (a.cases < 1) fail(ErrorKind::Domain, "--cases must be >= 1");
  if (!(a.inject_fault > 0.0)) fail(ErrorKind::Domain, "--inject-fault must be positive");
  qscm::SuiteOptions opt;
  opt.seed = a.seed;
  opt.cases = a.cases;
  opt.entropy_scale = a.inject_fault;
  opt.threads = resolve_threads(a.threads);
  const auto result = qscm::run_property_suite(opt);
  auto j = qscm::to_json(result);
  j["seed"] = a.seed;
  j["cases"] = a.cases;
  if (a.inject_fault != 1.0) j["injected_entropy_scale"] = a.inject_fault;
  a.out.write(dump(j));
  for (const auto& c : result.asserted)
    std::fprintf(stderr, "%-28s %s  max_residual=%.3g\n", c.check.c_str(), c.pass ? "pass" : "FAIL", c.max_residual);
  return result.pass ? 0 : kExitProperty;
}

struct IsingArgs {
  std::optional<double> g_min, g_max;
  int steps = 0;
  std::optional<int> size;
  bool thermo = false;
  int derivative = 0;
  unsigned threads = 0;
  bool quiet = false;
  Output out;
};

int run_ising_sweep(const IsingArgs& a) {
  if (!a.g_min || !a.g_max) fail(ErrorKind::Domain, "--g-min and --g-max are required");
  if (a.steps < 1) fail(ErrorKind::Domain, "--steps must be >= 1");
  if (a.thermo == a.size.has_value()) fail(ErrorKind::Domain, "give exactly one of --size N or --thermo");
  if (a.derivative < 0 || a.derivative > 2) fail(ErrorKind::Domain, "--derivative must be 0, 1 or 2");
  const qscm::ising::ChainSize size =
      a.thermo ? qscm::ising::ChainSize{qscm::ising::Thermodynamic{}} : qscm::ising::FiniteChain{*a.size};
  const auto gs = qscm::xxz::grid(*a.g_min, *a.g_max, a.steps);
  for (double g : {gs.front(), gs.back()}) qscm::ising::validate({g, size});

  Progress progress("ising sweep", a.quiet);
  std::atomic<std::size_t> done{0};
  const auto pts = qscm::parallel_map(
      gs.size(),
      [&](std::size_t k) {
        auto p = qscm::ising::evaluate(gs[k], size, a.derivative);
        progress(++done, gs.size());
        return p;
      },
      resolve_threads(a.threads));

  std::ostringstream os;
  std::vector<std::string> header{"g", "sigma_z", "entropy", "disequilibrium", "qscm"};
  if (a.derivative >= 1) header.push_back("d1");
  if (a.derivative >= 2) header.push_back("d2");
  qscm::csv::write_row(os, header);
  using qscm::csv::format_real;
  for (const auto& p : pts) {
    std::vector<std::string> row{format_real(p.g), format_real(p.sigma_z), format_real(p.entropy),
                                 format_real(p.disequilibrium), format_real(p.qscm)};
    if (a.derivative >= 1) row.push_back(format_real(p.d1));
    if (a.derivative >= 2) row.push_back(format_real(p.d2));
    qscm::csv::write_row(os, row);
  }
  a.out.write(os.str());
  return 0;
}

struct XxzSweepArgs {
  std::optional<double> delta_min, delta_max;
  int steps = 0;
  int distance = 1;
  std::vector<int> sizes;
  bool extrapolate = false;
  std::string scheme = "polynomial";
  std::string tabulated;
  std::string export_path;
  unsigned threads = 0;
  bool quiet = false;
  Output out;
};

int run_xxz_sweep(const XxzSweepArgs& a) {
  if (a.distance != 1 && a.distance != 2) fail(ErrorKind::Domain, "--distance must be 1 or 2");
  const auto scheme = qscm::parse_scheme(a.scheme);
  std::vector<qscm::xxz::XxzPoint> pts;
  if (!a.tabulated.empty()) {
    const auto table = qscm::xxz::load_tabulated_correlators(a.tabulated);
    const double lo = a.delta_min.value_or(-std::numeric_limits<double>::infinity());
    const double hi = a.delta_max.value_or(std::numeric_limits<double>::infinity());
    for (const auto& [delta, by_r] : table) {
      const auto it = by_r.find(a.distance);
      if (delta < lo || delta > hi || it == by_r.end()) continue;
      pts.push_back(qscm::xxz::make_point(it->second));
    }
  } else {
    if (!a.delta_min || !a.delta_max) fail(ErrorKind::Domain, "--delta-min and --delta-max are required");
    if (a.steps < 1) fail(ErrorKind::Domain, "--steps must be >= 1");
    if (a.sizes.empty()) fail(ErrorKind::Domain, "--sizes is required");
    qscm::xxz::SweepOptions opt;
    opt.delta_min = *a.delta_min;
    opt.delta_max = *a.delta_max;
    opt.steps = a.steps;
    opt.distance = a.distance;
    opt.sizes = a.sizes;
    opt.extrapolate = a.extrapolate;
    opt.scheme = scheme;
    opt.threads = resolve_threads(a.threads);
    auto progress = std::make_shared<Progress>("xxz sweep", a.quiet);
    opt.progress = [progress](std::size_t d, std::size_t t) { (*progress)(d, t); };
    pts = qscm::xxz::sweep(opt);
  }

  std::ostringstream os;
  qscm::csv::write_row(os, {"delta", "xx", "zz", "entropy", "disequilibrium", "qscm", "uncertainty", "degenerate_flag"});
  using qscm::csv::format_real;
  for (const auto& p : pts) {
    const auto& e = p.correlators;
    qscm::csv::write_row(os, {format_real(e.delta), format_real(e.c.xx), format_real(e.c.zz),
                              format_real(p.complexity.entropy_part), format_real(p.complexity.disequilibrium_part),
                              format_real(p.complexity.value), format_real(p.uncertainty),
                              e.degenerate ? "1" : "0"});
  }
  if (!a.export_path.empty()) {
    std::ostringstream table;
    qscm::xxz::write_tabulated_correlators(pts, table);
    Output{a.export_path}.write(table.str());
  }
  a.out.write(os.str());
  return 0;
}

struct XxzCuspArgs {
  std::vector<double> bracket;
  std::vector<int> sizes;
  std::string scheme = "geometric";
  double tolerance = 1e-3;
  bool crossing = false;
  Output out;
};

int run_xxz_cusp(const XxzCuspArgs& a) {
  if (a.bracket.size() != 2) fail(ErrorKind::Domain, "--bracket takes two values: lo,hi");
  if (a.sizes.empty()) fail(ErrorKind::Domain, "--sizes is required");
  if (!(a.tolerance > 0.0)) fail(ErrorKind::Domain, "--tolerance must be positive");
  qscm::xxz::CuspOptions opt;
  opt.scheme = qscm::parse_scheme(a.scheme);
  opt.tolerance = a.tolerance;
  const auto report = qscm::xxz::find_cusp(a.bracket[0], a.bracket[1], a.sizes, opt);
  auto j = qscm::to_json(report);
  j["scheme"] = std::string(qscm::to_string(opt.scheme));
  j["sizes"] = a.sizes;
  if (a.crossing) {
    const auto c = qscm::xxz::find_distance_crossing(a.bracket[0], a.bracket[1], a.sizes, opt.scheme, a.tolerance);
    j["distance_crossing"] = {{"location", c.location}, {"width", c.width}};
  }
  a.out.write(dump(j));
  return 0;
}

struct SimplexArgs {
  int steps = 200;
  Output out;
};

int run_simplex(const SimplexArgs& a) {
  std::ostringstream os;
  qscm::csv::write_row(os, {"xx", "zz", "qscm", "valid"});
  for (const auto& p : qscm::xxz::simplex_contour(a.steps))
    qscm::csv::write_row(os, {qscm::csv::format_real(p.xx), qscm::csv::format_real(p.zz),
                              qscm::csv::format_real(p.qscm), p.valid ? "1" : "0"});
  a.out.write(os.str());
  return 0;
}

struct DetectArgs {
  std::string input;
  int orders = 2;
  std::string column;
  std::optional<int> resample;
  Output out;
};

int run_detect(const DetectArgs& a) {
  auto s = qscm::read_sweep_csv(a.input, a.column);
  if (a.resample) s = qscm::resample_uniform(s, *a.resample);
  auto j = qscm::to_json(qscm::detect_features(s, a.orders));
  j["parameter"] = s.parameter_name;
  j["column"] = s.provenance["value_column"];
  a.out.write(dump(j));
  return 0;
}

struct StateArgs {
  double x = 0, y = 0, z = 0;
  long dim = 2;
  std::uint64_t seed = 1;
  bool pure = false;
  Output out;
};

// ---------------------------------------------------------------------------

int guarded(const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const qscm::Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", std::string(qscm::to_string(e.kind())).c_str(), e.what());
    return e.is_input_error() ? kExitInput : kExitNumeric;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error [load]: %s\n", e.what());
    return kExitInput;
  } catch (const std::bad_alloc&) {
    std::fprintf(stderr, "error [resource]: out of memory\n");
    return kExitNumeric;
  }
}

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("-o,--output", out.path, "Output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum statistical complexity of states and spin-chain ground states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qscmlab 0.1.0");

  QscmArgs qa;
  auto* qscm_cmd = app.add_subcommand("qscm", "Complexity of a density matrix stored as JSON");
  qscm_cmd->add_option("file", qa.file, "State file {dim, re, im}")->required();
  qscm_cmd->add_option("--kind", qa.kind, "Disequilibrium: trace or relative")->capture_default_str();
  add_output(qscm_cmd, qa.out);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Seeded property suite");
  verify->add_option("--seed", va.seed)->capture_default_str();
  verify->add_option("--cases", va.cases)->capture_default_str();
  verify->add_option("--inject-fault", va.inject_fault, "Scale the entropy factor (self-test of the harness)");
  verify->add_option("--threads", va.threads, "Worker threads (QSCMLAB_THREADS overrides)");
  add_output(verify, va.out);

  IsingArgs ia;
  auto* ising = app.add_subcommand("ising", "Transverse-field Ising chain");
  ising->require_subcommand(1);
  auto* ising_sweep = ising->add_subcommand("sweep", "Sweep the field g");
  ising_sweep->add_option("--g-min", ia.g_min)->required();
  ising_sweep->add_option("--g-max", ia.g_max)->required();
  ising_sweep->add_option("--steps", ia.steps, "Grid points including both ends")->required();
  ising_sweep->add_option("--size", ia.size, "Even chain length");
  ising_sweep->add_flag("--thermo", ia.thermo, "Thermodynamic limit");
  ising_sweep->add_option("--derivative", ia.derivative, "Also emit d1 (1) or d1 and d2 (2)")->capture_default_str();
  ising_sweep->add_option("--threads", ia.threads);
  ising_sweep->add_flag("-q,--quiet", ia.quiet);
  add_output(ising_sweep, ia.out);

  auto* xxz = app.add_subcommand("xxz", "XXZ chain");
  xxz->require_subcommand(1);
  XxzSweepArgs xa;
  auto* xxz_sweep = xxz->add_subcommand("sweep", "Sweep the anisotropy delta");
  xxz_sweep->add_option("--delta-min", xa.delta_min);
  xxz_sweep->add_option("--delta-max", xa.delta_max);
  xxz_sweep->add_option("--steps", xa.steps, "Grid points including both ends");
  xxz_sweep->add_option("--distance", xa.distance)->capture_default_str();
  xxz_sweep->add_option("--sizes", xa.sizes, "Chain lengths, e.g. 10,12,14")->delimiter(',');
  xxz_sweep->add_flag("--extrapolate", xa.extrapolate, "Extrapolate correlators to N -> infinity");
  xxz_sweep->add_option("--scheme", xa.scheme, "polynomial or geometric")->capture_default_str();
  xxz_sweep->add_option("--tabulated", xa.tabulated, "Use correlators from CSV (delta,r,xx,zz) instead of ED");
  xxz_sweep->add_option("--export", xa.export_path, "Also write the correlator table");
  xxz_sweep->add_option("--threads", xa.threads);
  xxz_sweep->add_flag("-q,--quiet", xa.quiet);
  add_output(xxz_sweep, xa.out);

  XxzCuspArgs ca;
  auto* cusp = xxz->add_subcommand("cusp", "Root of 2xx - zz on extrapolated correlators");
  cusp->add_option("--bracket", ca.bracket, "lo,hi")->delimiter(',')->required();
  cusp->add_option("--sizes", ca.sizes)->delimiter(',')->required();
  cusp->add_option("--scheme", ca.scheme)->capture_default_str();
  cusp->add_option("--tolerance", ca.tolerance)->capture_default_str();
  cusp->add_flag("--crossing", ca.crossing, "Also locate where C(r=1) = C(r=2)");
  add_output(cusp, ca.out);

  SimplexArgs sa;
  auto* simplex = xxz->add_subcommand("simplex", "Complexity over the correlator simplex");
  simplex->add_option("--steps", sa.steps, "Grid points per axis")->capture_default_str();
  add_output(simplex, sa.out);

  DetectArgs da;
  auto* detect = app.add_subcommand("detect", "Find jumps, cusps and derivative peaks in a sweep CSV");
  detect->add_option("--input", da.input)->required();
  detect->add_option("--orders", da.orders, "Highest derivative order (0-3)")->capture_default_str();
  detect->add_option("--column", da.column, "Value column (default: qscm, else the second)");
  detect->add_option("--resample", da.resample, "Resample onto this many uniform points first");
  add_output(detect, da.out);

  StateArgs st;
  auto* state = app.add_subcommand("state", "Write state files");
  state->require_subcommand(1);
  auto* bloch = state->add_subcommand("bloch", "Qubit from a Bloch vector");
  bloch->add_option("--x", st.x);
  bloch->add_option("--y", st.y);
  bloch->add_option("--z", st.z);
  add_output(bloch, st.out);
  auto* random = state->add_subcommand("random", "Seeded random state");
  random->add_option("--dim", st.dim)->capture_default_str();
  random->add_option("--seed", st.seed)->capture_default_str();
  random->add_flag("--pure", st.pure);
  add_output(random, st.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (*qscm_cmd) return guarded([&] { return run_qscm(qa); });
  if (*verify) return guarded([&] { return run_verify(va); });
  if (*ising_sweep) return guarded([&] { return run_ising_sweep(ia); });
  if (*xxz_sweep) return guarded([&] { return run_xxz_sweep(xa); });
  if (*cusp) return guarded([&] { return run_xxz_cusp(ca); });
  if (*simplex) return guarded([&] { return run_simplex(sa); });
  if (*detect) return guarded([&] { return run_detect(da); });
  if (*bloch)
    return guarded([&] {
      st.out.write(dump(qscm::to_json(qscm::from_bloch({st.x, st.y, st.z}))));
      return 0;
    });
  if (*random)
    return guarded([&] {
      const auto rho = st.pure ? qscm::random_pure_state(st.dim, st.seed) : qscm::random_density_matrix(st.dim, st.seed);
      st.out.write(dump(qscm::to_json(rho)));
      return 0;
    });
  return kExitInput;
}
