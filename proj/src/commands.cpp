#include "markovsig/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

#include <json.hpp>

#include "markovsig/error.hpp"
#include "markovsig/geometry.hpp"
#include "markovsig/operator.hpp"

namespace markovsig {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

json cj_list(std::span<const cplx> zs) {
  json a = json::array();
  for (cplx z : zs) a.push_back(cj(z));
  return a;
}

TimeGrid require_time(const Scenario& s) {
  if (!s.time) throw Error(Errc::invalid_argument, "time: missing");
  try {
    s.time->validate();
  } catch (const Error& e) {
    throw Error(e.code(), std::string("time: ") + e.what());
  }
  return *s.time;
}

json region_block(const SignalDesign& d) {
  json r;
  json dist = json::array();
  for (double x : d.poles.distances()) dist.push_back(x);
  r["distances"] = dist;
  if (d.z0) {
    r["z0"] = cj(*d.z0);
    r["R"] = joukowski_radius(*d.z0);
    r["r"] = 1.0;
    json mem = json::array();
    for (bool b : d.region_membership) mem.push_back(b);
    r["in_H"] = mem;
  }
  return r;
}

std::string csv_join(std::initializer_list<double> vals) {
  std::string line;
  bool first = true;
  for (double v : vals) {
    if (!first) line += ',';
    line += format_double(v);
    first = false;
  }
  return line + '\n';
}

fs::path out_path(const CommandOptions& o, const std::string& name) { return fs::path(o.out_dir) / name; }

int cmd_design(const Scenario& s, const CommandOptions& o, std::ostream& out) {
  const std::string report = design_report(s);
  const fs::path p = out_path(o, "design.json");
  write_atomic(p.string(), report);
  out << "design: wrote " << p.string() << '\n';
  return kExitOk;
}

int cmd_verify(const Scenario& s, const CommandOptions& o, std::ostream& out) {
  bool ok = false;
  const std::string report = verify_report(s, &ok);
  const fs::path p = out_path(o, "verify.json");
  write_atomic(p.string(), report);
  out << "verify: wrote " << p.string() << (ok ? " (all checks passed)" : " (CHECKS FAILED)") << '\n';
  return ok ? kExitOk : kExitNumeric;
}

int cmd_simulate(const Scenario& s, const CommandOptions& o, std::ostream& out) {
  const TimeGrid grid = require_time(s);
  if (!s.measure) throw Error(Errc::invalid_argument, "measure: required by simulate");
  const SignalDesign d = build_design(s);
  const TimeSeries u = synthesize_input(d, s.model, s.frequencies, grid);
  const TimeSeries v = simulate_response(d, s.model, s.frequencies, *s.measure, grid);
  std::string csv = "t,re_u,im_u,re_v,im_v\n";
  for (std::size_t i = 0; i < u.t.size(); ++i)
    csv += csv_join({u.t[i], u.values[i].real(), u.values[i].imag(), v.values[i].real(), v.values[i].imag()});
  const fs::path p = out_path(o, "simulate.csv");
  write_atomic(p.string(), csv);
  out << "simulate: wrote " << p.string() << '\n';
  if (s.design.omega0) {
    const TimeSeries v0 = single_frequency_response(s.model, *s.design.omega0, *s.measure, grid);
    std::string c0 = "t,re_v0,im_v0\n";
    for (std::size_t i = 0; i < v0.t.size(); ++i)
      c0 += csv_join({v0.t[i], v0.values[i].real(), v0.values[i].imag()});
    const fs::path p0 = out_path(o, "simulate_v0.csv");
    write_atomic(p0.string(), c0);
    out << "simulate: wrote " << p0.string() << '\n';
  }
  return kExitOk;
}

int cmd_bounds(const Scenario& s, const CommandOptions& o, std::ostream& out) {
  const TimeGrid grid = require_time(s);
  const SignalDesign d = build_design(s);
  std::vector<BoundsCase> cases = s.bounds;
  if (cases.empty()) cases.push_back({"m0", {}, true});
  json summary;
  summary["scenario"] = s.name;
  summary["theta"] = s.theta;
  summary["epsilon"] = d.epsilon;
  summary["a0"] = s.model.a0;
  json rows = json::array();
  for (const BoundsCase& c : cases) {
    BoundsOptions bo;
    bo.a0_known = c.a0_known;
    const BoundsSeries b = response_bounds(d, s.model, s.frequencies, c.moments, s.theta, grid, bo);
    std::string csv = "t,lower,upper\n";
    for (std::size_t i = 0; i < b.t.size(); ++i) csv += csv_join({b.t[i], b.lower[i], b.upper[i]});
    const fs::path p = out_path(o, "bounds_" + c.label + ".csv");
    write_atomic(p.string(), csv);
    out << "bounds: wrote " << p.string() << '\n';
    const Range r0 = response_bounds_at(d, s.model, s.frequencies, c.moments, s.theta, grid.t0, grid.t0, bo);
    json row;
    row["label"] = c.label;
    row["moments"] = c.moments;
    row["a0_known"] = c.a0_known;
    row["t0"] = grid.t0;
    row["lower_t0"] = r0.lo;
    row["upper_t0"] = r0.hi;
    row["gap_t0"] = r0.hi - r0.lo;
    rows.push_back(row);
  }
  summary["cases"] = rows;
  const fs::path p = out_path(o, "bounds_summary.json");
  write_atomic(p.string(), summary.dump(2) + "\n");
  out << "bounds: wrote " << p.string() << '\n';
  return kExitOk;
}

int cmd_region(const Scenario& s, const CommandOptions& o, std::ostream& out) {
  const std::string report = region_report(s);
  const fs::path p = out_path(o, "region.json");
  write_atomic(p.string(), report);
  out << "region: wrote " << p.string() << '\n';
  return kExitOk;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::invalid_argument, "out: cannot write '" + tmp.string() + "'");
    f << content;
    f.flush();
    if (!f) throw Error(Errc::invalid_argument, "out: write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, target);
}

std::string design_report(const Scenario& s) {
  const SignalDesign d = build_design(s);
  json r;
  r["scenario"] = s.name;
  r["mode"] = to_string(d.mode);
  r["m"] = d.poles.size();
  r["frequencies"] = cj_list(s.frequencies);
  r["z_points"] = cj_list(d.poles.points());
  r["alphas"] = cj_list(d.alphas);
  if (d.mode == DesignMode::moments) {
    r["n"] = d.n;
    r["gammas"] = cj_list(d.gammas);
  }
  if (d.z0) r["z0"] = cj(*d.z0);
  if (d.alpha0) r["alpha0"] = cj(*d.alpha0);
  if (d.b_m) r["b_m"] = cj(*d.b_m);
  if (d.zero_factor) r["zero_factor"] = cj_list(d.zero_factor->coeffs());
  if (d.z0) {
    const StieltjesCoefficients sc = stieltjes_coefficients(d);
    r["xi"] = cj_list(sc.xi);
    if (sc.xi0) r["xi0"] = cj(*sc.xi0);
  }
  r["epsilon"] = d.epsilon;
  r["certificate"] = d.certificate == Certificate::closed_form ? "closed_form" : "numerical";
  r["epsilon_observed"] = d.epsilon_observed;
  r["lambda_star"] = d.lambda_star;
  r["d_min"] = d.poles.d_min();
  r["convergent_flag"] = d.convergent;
  r["region_diagnostics"] = region_block(d);
  r["warnings"] = d.warnings;
  return r.dump(2) + "\n";
}

std::string verify_report(const Scenario& s, bool* all_passed) {
  const SignalDesign d = build_design(s);
  const std::uint64_t seed = s.seed;
  json r;
  r["scenario"] = s.name;
  r["seed"] = seed;
  r["mode"] = to_string(d.mode);
  r["m"] = d.poles.size();
  r["epsilon"] = d.epsilon;
  r["epsilon_observed"] = d.epsilon_observed;
  r["lambda_star"] = d.lambda_star;

  const WorstCase wc = worst_case_point_mass(d);
  const bool paths_agree = std::abs(wc.deviation - d.epsilon_observed) <= 1e-8;
  r["worst_case_point_mass"] = {{"lambda_star", wc.lambda_star}, {"deviation", wc.deviation},
                                {"matches_sup", paths_agree}};

  double max_dev = 0.0;
  for (int i = 0; i < s.verify.measures; ++i) {
    const DiscreteMeasure mu = random_measure(s.verify.max_atoms, seed + static_cast<std::uint64_t>(i));
    max_dev = std::max(max_dev, measure_deviation(d, mu));
  }
  const bool stress_ok = max_dev <= d.epsilon + 1e-9;
  const bool extremal_ok = max_dev <= wc.deviation + 1e-9;
  r["stress"] = {{"measures", s.verify.measures},
                 {"max_atoms", s.verify.max_atoms},
                 {"seed", seed},
                 {"max_deviation", max_dev},
                 {"within_epsilon", stress_ok},
                 {"below_point_mass_worst_case", extremal_ok}};

  double max_norm = 0.0;
  bool op_ok = true;
  for (int k = 0; k < s.verify.operator_seeds; ++k) {
    const HermitianOperator a = random_hermitian_in_spectrum(s.verify.operator_dim, seed + static_cast<std::uint64_t>(k));
    const OperatorCheck c = verify_operator_bound(a, d);
    max_norm = std::max(max_norm, c.norm);
    op_ok = op_ok && c.certified;
  }
  r["operator"] = {{"dim", s.verify.operator_dim},
                   {"matrices", s.verify.operator_seeds},
                   {"seed", seed},
                   {"max_norm", max_norm},
                   {"all_certified", op_ok}};
  const bool ok = paths_agree && stress_ok && extremal_ok && op_ok;
  r["all_passed"] = ok;
  if (all_passed) *all_passed = ok;
  return r.dump(2) + "\n";
}

std::string region_report(const Scenario& s) {
  RegionSettings rs = s.region.value_or(RegionSettings{});
  std::optional<cplx> z0 = rs.z0;
  if (!z0 && rs.omega0) {
    try {
      z0 = model_z(s.model, *rs.omega0);
    } catch (const Error& e) {
      throw Error(e.code(), std::string("region.omega0: ") + e.what());
    }
  }
  if (!z0) z0 = resolve_z0(s);
  if (!z0) throw Error(Errc::invalid_argument, "region.z0: missing (also no design target)");
  RegionSpec spec;
  try {
    spec = RegionSpec::make(*z0, rs.r);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("region: ") + e.what());
  }
  json r;
  r["scenario"] = s.name;
  r["z0"] = cj(*z0);
  r["zeta0"] = cj(joukowski_preimage(*z0));
  r["R"] = spec.R;
  r["r"] = spec.r;
  r["d0"] = segment_distance(*z0);
  r["d0_lower_bound"] = (spec.R - 1.0) * (spec.R - 1.0) / (2.0 * spec.R);
  json probes = json::array();
  for (cplx p : rs.probes) probes.push_back({{"z", cj(p)}, {"in_H", in_region_H(p, spec)}});
  r["probes"] = probes;
  const PoleSet poles = poles_for(s.model, s.frequencies);
  json mem = json::array();
  for (cplx p : poles.points()) mem.push_back({{"z", cj(p)}, {"in_H", in_region_H(p, spec)}});
  r["design_points"] = mem;
  const std::vector<cplx> boundary = region_boundary_samples(spec, rs.box);
  r["boundary_samples"] = cj_list(boundary);
  return r.dump(2) + "\n";
}

int run_command(const std::string& command, const CommandOptions& opts, std::ostream& out,
                std::ostream& err) {
  try {
    Scenario s = load_scenario(opts.scenario_path);
    if (opts.seed) s.seed = *opts.seed;
    if (opts.grid_size) {
      if (*opts.grid_size < 2) throw Error(Errc::invalid_argument, "--grid-size: must be at least 2");
      if (s.time) s.time->steps = *opts.grid_size;
    }
    if (command == "design") return cmd_design(s, opts, out);
    if (command == "verify") return cmd_verify(s, opts, out);
    if (command == "simulate") return cmd_simulate(s, opts, out);
    if (command == "bounds") return cmd_bounds(s, opts, out);
    if (command == "region") return cmd_region(s, opts, out);
    err << "error: unknown command '" << command << "'\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return is_numeric(e.code()) ? kExitNumeric : kExitValidation;
  } catch (const fs::filesystem_error& e) {
    err << "error [io]: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace markovsig
