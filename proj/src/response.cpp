#include "markovsig/response.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "markovsig/error.hpp"
#include "markovsig/geometry.hpp"

namespace markovsig {

namespace {

std::string freq_field(std::size_t k) { return "frequencies[" + std::to_string(k) + "]"; }

void check_design_matches(const SignalDesign& design, const SystemModel& model,
                          std::span<const cplx> omegas) {
  if (omegas.size() != design.poles.size())
    throw Error(Errc::invalid_argument, "design has " + std::to_string(design.poles.size()) +
                                            " poles but " + std::to_string(omegas.size()) +
                                            " frequencies were given");
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    cplx z;
    try {
      z = model_z(model, omegas[k]);
    } catch (const Error& e) {
      throw Error(e.code(), freq_field(k) + ": " + e.what(), k);
    }
    const cplx p = design.poles[k];
    if (std::abs(z - p) > 1e-9 * std::max(1.0, std::abs(p)))
      throw Error(Errc::invalid_argument, freq_field(k) + " does not map to design pole " +
                                              std::to_string(k), k);
  }
}

std::vector<cplx> phases(std::span<const cplx> omegas, double dt) {
  std::vector<cplx> out(omegas.size());
  for (std::size_t k = 0; k < omegas.size(); ++k) out[k] = std::exp(-kI * omegas[k] * dt);
  return out;
}

}  // namespace

MaxwellPhase MaxwellPhase::elastic_phase(double G) { return {G, 0.0, true}; }
MaxwellPhase MaxwellPhase::viscoelastic(double G, double eta) { return {G, eta, false}; }

cplx MaxwellPhase::modulus(cplx omega) const {
  if (elastic) return cplx{G};
  const cplx iwe = kI * omega * eta;
  const cplx den = G + iwe;
  if (std::abs(den) == 0.0) throw Error(Errc::singular_frequency, "Maxwell modulus has a pole here");
  return iwe * G / den;
}

cplx RationalMap::operator()(cplx omega) const {
  const cplx d = den(omega);
  if (d == cplx{0.0}) throw Error(Errc::singular_frequency, "rational map denominator vanishes");
  return num(omega) / d;
}

const char* to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::lossy_dielectric: return "lossy_dielectric";
    case ModelKind::plasma: return "plasma";
    case ModelKind::two_phase: return "two_phase";
    case ModelKind::custom: return "custom";
  }
  return "?";
}

SystemModel SystemModel::lossy_dielectric(double a0) {
  SystemModel m;
  m.kind = ModelKind::lossy_dielectric;
  m.a0 = a0;
  return m;
}

SystemModel SystemModel::plasma(double a0) {
  SystemModel m;
  m.kind = ModelKind::plasma;
  m.a0 = a0;
  return m;
}

SystemModel SystemModel::two_phase(MaxwellPhase p1, MaxwellPhase p2, double a0) {
  SystemModel m;
  m.kind = ModelKind::two_phase;
  m.phase1 = p1;
  m.phase2 = p2;
  m.a0 = a0;
  return m;
}

SystemModel SystemModel::custom(RationalMap z, double a0) {
  SystemModel m;
  m.kind = ModelKind::custom;
  m.z_map = std::move(z);
  m.a0 = a0;
  return m;
}

void SystemModel::validate() const {
  if (!(a0 > 0.0) || !std::isfinite(a0)) throw Error(Errc::invalid_argument, "a0 must be positive");
  if (kind == ModelKind::two_phase) {
    for (const MaxwellPhase* p : {&phase1, &phase2}) {
      if (!(p->G > 0.0)) throw Error(Errc::invalid_argument, "phase modulus G must be positive");
      if (!p->elastic && !(p->eta > 0.0))
        throw Error(Errc::invalid_argument, "phase viscosity eta must be positive");
    }
  }
  if (kind == ModelKind::custom && z_map.den.is_zero())
    throw Error(Errc::invalid_argument, "custom z map has a zero denominator");
}

cplx model_z(const SystemModel& model, cplx omega) {
  if (!std::isfinite(omega.real()) || !std::isfinite(omega.imag()))
    throw Error(Errc::invalid_argument, "frequency is not finite");
  switch (model.kind) {
    case ModelKind::lossy_dielectric:
      if (omega == cplx{0.0}) throw Error(Errc::singular_frequency, "z(w) = 2 + i/w is singular at w = 0");
      return 2.0 + kI / omega;
    case ModelKind::plasma:
      if (omega == cplx{0.0}) throw Error(Errc::singular_frequency, "z(w) = 2 - 2/w^2 is singular at w = 0");
      return 2.0 - 2.0 / (omega * omega);
    case ModelKind::two_phase: {
      if (omega == cplx{0.0}) throw Error(Errc::singular_frequency, "two-phase map is singular at w = 0");
      const cplx c1 = model.phase1.modulus(omega);
      const cplx c2 = model.phase2.modulus(omega);
      if (c1 == c2) throw Error(Errc::singular_frequency, "phase moduli coincide at this frequency");
      return (c1 + c2) / (c1 - c2);
    }
    case ModelKind::custom:
      return model.z_map(omega);
  }
  return {};
}

cplx model_c(const SystemModel& model, cplx omega) {
  if (!model.c_map) return cplx{1.0};
  return (*model.c_map)(omega);
}

PoleSet poles_for(const SystemModel& model, std::span<const cplx> omegas) {
  std::vector<cplx> zs;
  zs.reserve(omegas.size());
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    try {
      zs.push_back(model_z(model, omegas[k]));
    } catch (const Error& e) {
      throw Error(e.code(), freq_field(k) + ": " + e.what(), k);
    }
  }
  try {
    return PoleSet::create(std::move(zs));
  } catch (const Error& e) {
    if (!e.index()) throw;
    throw Error(e.code(), freq_field(*e.index()) + ": " + e.what(), e.index());
  }
}

TimeGrid TimeGrid::make(double t_start, double t_end, int steps, double t0) {
  TimeGrid g{t_start, t_end, steps, t0};
  g.validate();
  return g;
}

void TimeGrid::validate() const {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_start < t_end))
    throw Error(Errc::invalid_argument, "time grid needs t_start < t_end");
  if (steps < 2) throw Error(Errc::invalid_argument, "time grid needs at least 2 steps");
  if (!(t0 >= t_start && t0 <= t_end))
    throw Error(Errc::invalid_argument, "t0 must lie inside [t_start, t_end]");
}

std::vector<double> TimeGrid::times() const {
  validate();
  std::vector<double> t(static_cast<std::size_t>(steps));
  const double h = (t_end - t_start) / (steps - 1);
  for (int i = 0; i < steps; ++i) t[static_cast<std::size_t>(i)] = t_start + h * i;
  t.back() = t_end;
  return t;
}

TimeSeries synthesize_input(const SignalDesign& design, const SystemModel& model,
                            std::span<const cplx> omegas, const TimeGrid& grid) {
  check_design_matches(design, model, omegas);
  std::vector<cplx> beta(omegas.size());
  for (std::size_t k = 0; k < omegas.size(); ++k) {
    const cplx c = model_c(model, omegas[k]);
    if (c == cplx{0.0})
      throw Error(Errc::singular_frequency, "c(w) vanishes at " + freq_field(k), k);
    beta[k] = design.alphas[k] / c;
  }
  TimeSeries out{grid.times(), {}};
  out.values.reserve(out.t.size());
  for (double t : out.t) {
    const std::vector<cplx> e = phases(omegas, t - grid.t0);
    cplx u{0.0};
    for (std::size_t k = 0; k < beta.size(); ++k) u += beta[k] * e[k];
    out.values.push_back(u);
  }
  return out;
}

TimeSeries simulate_response(const SignalDesign& design, const SystemModel& model,
                             std::span<const cplx> omegas, const DiscreteMeasure& mu,
                             const TimeGrid& grid) {
  check_design_matches(design, model, omegas);
  model.validate();
  std::vector<cplx> amp(omegas.size());
  for (std::size_t k = 0; k < omegas.size(); ++k)
    amp[k] = model.a0 * design.alphas[k] * markov_eval(mu, design.poles[k]);
  TimeSeries out{grid.times(), {}};
  out.values.reserve(out.t.size());
  for (double t : out.t) {
    const std::vector<cplx> e = phases(omegas, t - grid.t0);
    cplx v{0.0};
    for (std::size_t k = 0; k < amp.size(); ++k) v += amp[k] * e[k];
    out.values.push_back(v);
  }
  return out;
}

TimeSeries single_frequency_response(const SystemModel& model, cplx omega0,
                                     const DiscreteMeasure& mu, const TimeGrid& grid) {
  model.validate();
  const cplx z0 = model_z(model, omega0);
  const cplx amp = model.a0 * markov_eval(mu, z0);
  TimeSeries out{grid.times(), {}};
  for (double t : out.t) out.values.push_back(amp * std::exp(-kI * omega0 * (t - grid.t0)));
  return out;
}

double crest_ratio(std::span<const cplx> alphas, const SystemModel& model,
                   std::span<const cplx> omegas, const TimeGrid& grid,
                   const DiscreteMeasure& reference, bool real_part_only) {
  if (alphas.size() != omegas.size())
    throw Error(Errc::invalid_argument, "alphas and frequencies differ in length");
  if (omegas.empty()) throw Error(Errc::empty_input, "no frequencies");
  if (!(grid.t_start <= grid.t0)) throw Error(Errc::invalid_argument, "grid must cover t <= t0");
  std::vector<cplx> amp(omegas.size());
  for (std::size_t k = 0; k < omegas.size(); ++k)
    amp[k] = alphas[k] * markov_eval(reference, model_z(model, omegas[k]));

  auto magnitude = [&](double t) {
    const std::vector<cplx> e = phases(omegas, t - grid.t0);
    cplx w{0.0};
    for (std::size_t k = 0; k < amp.size(); ++k) w += amp[k] * e[k];
    return real_part_only ? std::abs(w.real()) : std::abs(w);
  };
  const double at_t0 = magnitude(grid.t0);
  if (!(at_t0 > 0.0)) throw Error(Errc::numeric_failure, "response vanishes at t0");
  double peak = at_t0;
  for (double t : grid.times())
    if (t <= grid.t0) peak = std::max(peak, magnitude(t));
  return peak / at_t0;
}

ZeroFactorScan zero_factor_scan(const SystemModel& model, std::span<const cplx> omegas,
                                std::span<const cplx> candidates, const TimeGrid& grid,
                                const DiscreteMeasure& reference, bool real_part_only,
                                bool conjugate_pair, const DesignOptions& opts) {
  if (candidates.empty()) throw Error(Errc::empty_input, "no zero-factor candidates");
  const PoleSet poles = poles_for(model, omegas);
  std::optional<ZeroFactorScan> best;
  std::vector<double> ratios;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const ComplexPolynomial s =
        conjugate_pair ? zero_factor_conjugate(candidates[i]) : zero_factor_single(candidates[i]);
    SignalDesign d = design_with_zero_factor(poles, s, opts);
    const double r = crest_ratio(d.alphas, model, omegas, grid, reference, real_part_only);
    ratios.push_back(r);
    if (!best || r < best->best_ratio) best = ZeroFactorScan{i, candidates[i], r, {}, std::move(d)};
  }
  best->ratios = std::move(ratios);
  return std::move(*best);
}

}  // namespace markovsig
