#include "markovsig/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "markovsig/error.hpp"
#include "markovsig/geometry.hpp"
#include "markovsig/kernels.hpp"

namespace markovsig {

namespace {

constexpr double kDistinctTolerance = 1e-10;
// |T_{m-1}(z0)| below this (relative to max(1,|z0|)^(m-1)) makes b_m meaningless.
constexpr double kDegenerateTarget = 1e-10;

// Shared by both target modes: checks z0 and returns b_m = q(z0)/T_{m-1}(z0).
cplx target_scale(const PoleSet& poles, cplx z0) {
  if (segment_distance(z0) <= kSegmentTolerance)
    throw Error(Errc::point_on_segment, "target point z0 lies on [-1,1]");
  double scale = 1.0;
  for (cplx z : poles.points()) scale = std::max(scale, std::abs(z));
  for (std::size_t k = 0; k < poles.size(); ++k)
    if (std::abs(poles[k] - z0) <= kDistinctTolerance * scale)
      throw Error(Errc::duplicate_points, "target point z0 coincides with pole " + std::to_string(k), k);

  const int m = static_cast<int>(poles.size());
  const cplx t = cheb_eval(m - 1, z0);
  const double ref = std::pow(std::max(1.0, std::abs(z0)), m - 1);
  if (std::abs(t) <= kDegenerateTarget * ref)
    throw Error(Errc::degenerate_target, "T_{m-1}(z0) vanishes; choose another target point");
  return poles.q()(z0) / t;
}

double refined_min_abs_q(const PoleSet& poles, int nodes) {
  auto abs_prod = [&poles](double x) {
    double v = 1.0;
    for (cplx z : poles.points()) v *= std::abs(x - z);
    return v;
  };
  return minimize_on_segment(abs_prod, nodes).value;
}

void fill_region_diagnostics(SignalDesign& d) {
  const RegionSpec spec = RegionSpec::make(*d.z0, 1.0);
  d.region_membership.clear();
  bool all_in = true;
  for (cplx z : d.poles.points()) {
    const bool in = in_region_H(z, spec);
    d.region_membership.push_back(in);
    all_in = all_in && in;
  }
  d.convergent = all_in;
  if (!all_in) d.warnings.push_back("some poles lie outside H(1) around z0");
}

void finish(SignalDesign& d, int nodes) {
  verify_sup(d, nodes);
  if (d.epsilon_observed > d.epsilon + 1e-9)
    throw Error(Errc::numeric_failure,
                "observed sup deviation " + std::to_string(d.epsilon_observed) +
                    " exceeds certified bound " + std::to_string(d.epsilon));
}

SignalDesign blank(DesignMode mode, const PoleSet& poles) {
  return SignalDesign{mode, poles, {}, 0, {}, {}, {}, {}, {}, 0.0, Certificate::closed_form,
                      true, {}, 0.0, 0.0, {}};
}

}  // namespace

const char* to_string(DesignMode mode) noexcept {
  switch (mode) {
    case DesignMode::unit: return "unit";
    case DesignMode::moments: return "moments";
    case DesignMode::frequency_target: return "frequency_target";
    case DesignMode::derivative_target: return "derivative_target";
    case DesignMode::zero_factor: return "zero_factor";
  }
  return "unknown";
}

PoleSet PoleSet::create(std::vector<cplx> points) {
  if (points.empty()) throw Error(Errc::empty_input, "pole set is empty");
  if (points.size() > kMaxPoles)
    throw Error(Errc::degree_limit, "at most " + std::to_string(kMaxPoles) + " poles are supported");
  PoleSet s;
  double scale = 0.0;
  for (cplx z : points) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(Errc::invalid_argument, "non-finite pole");
    scale = std::max(scale, std::abs(z));
  }
  s.distances_.reserve(points.size());
  s.d_min_ = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double d = segment_distance(points[k]);
    if (d <= kSegmentTolerance)
      throw Error(Errc::point_on_segment, "pole " + std::to_string(k) + " lies on [-1,1]", k);
    for (std::size_t j = 0; j < k; ++j)
      if (std::abs(points[k] - points[j]) <= kDistinctTolerance * scale)
        throw Error(Errc::duplicate_points,
                    "pole " + std::to_string(k) + " duplicates pole " + std::to_string(j), k);
    s.distances_.push_back(d);
    s.d_min_ = std::min(s.d_min_, d);
  }
  s.points_ = std::move(points);
  return s;
}

cplx PoleSet::node_product(std::size_t k) const noexcept {
  cplx p{1.0};
  for (std::size_t j = 0; j < points_.size(); ++j)
    if (j != k) p *= points_[k] - points_[j];
  return p;
}

ComplexPolynomial PoleSet::q() const { return monic_from_roots(points_); }

std::optional<std::size_t> PoleSet::conjugate_of(std::size_t k, double tol) const noexcept {
  double scale = 1.0;
  for (cplx z : points_) scale = std::max(scale, std::abs(z));
  for (std::size_t j = 0; j < points_.size(); ++j)
    if (std::abs(points_[j] - std::conj(points_[k])) <= tol * scale) return j;
  return std::nullopt;
}

bool PoleSet::conjugation_closed(double tol) const noexcept {
  for (std::size_t k = 0; k < points_.size(); ++k)
    if (!conjugate_of(k, tol)) return false;
  return true;
}

cplx SignalDesign::approximant(cplx lambda) const noexcept {
  cplx s{0.0};
  for (std::size_t k = 0; k < alphas.size(); ++k) s += alphas[k] / (lambda - poles[k]);
  if (alpha0) s += *alpha0 / (lambda - *z0);
  return s;
}

cplx SignalDesign::target(cplx lambda) const noexcept {
  switch (mode) {
    case DesignMode::unit:
    case DesignMode::zero_factor:
      return cplx{1.0};
    case DesignMode::moments: {
      cplx acc{0.0};
      for (auto it = gammas.rbegin(); it != gammas.rend(); ++it) acc = acc * lambda + *it;
      return acc;
    }
    case DesignMode::frequency_target:
      return 1.0 / (lambda - *z0);
    case DesignMode::derivative_target: {
      const cplx d = lambda - *z0;
      return 1.0 / (d * d);
    }
  }
  return cplx{0.0};
}

std::vector<cplx> residues_from_numerator(const ComplexPolynomial& p, const PoleSet& poles) {
  std::vector<cplx> out(poles.size());
  for (std::size_t k = 0; k < poles.size(); ++k) out[k] = p(poles[k]) / poles.node_product(k);
  return out;
}

SignalDesign design_unit(const PoleSet& poles, const DesignOptions& opts) {
  const int m = static_cast<int>(poles.size());
  SignalDesign d = blank(DesignMode::unit, poles);
  const double scale = std::ldexp(1.0, m - 1);
  d.alphas.resize(poles.size());
  for (std::size_t k = 0; k < poles.size(); ++k)
    d.alphas[k] = -cheb_eval(m, poles[k]) / (scale * poles.node_product(k));
  d.epsilon = 2.0 / std::pow(2.0 * poles.d_min(), m);
  d.convergent = poles.d_min() > 0.5;
  if (!d.convergent) d.warnings.push_back("d_min <= 1/2: the closed-form bound does not decay with m");
  finish(d, opts.grid_nodes);
  return d;
}

SignalDesign design_moments(const PoleSet& poles, int n, const DesignOptions& opts) {
  const int m = static_cast<int>(poles.size());
  if (n < 0) throw Error(Errc::invalid_argument, "moment count must be nonnegative");
  if (m + n > kMaxDegree)
    throw Error(Errc::degree_limit, "m + n = " + std::to_string(m + n) + " exceeds " +
                                        std::to_string(kMaxDegree));
  SignalDesign d = blank(DesignMode::moments, poles);
  d.n = n;
  const DivMod qr = poly_divmod(monic_cheb(m + n), poles.q());
  d.gammas.assign(static_cast<std::size_t>(n) + 1, cplx{0.0});
  for (int l = 0; l <= n; ++l) d.gammas[static_cast<std::size_t>(l)] = qr.quotient.coeff(l);
  d.gammas[static_cast<std::size_t>(n)] = cplx{1.0};
  d.alphas = residues_from_numerator(-1.0 * qr.remainder, poles);
  d.epsilon = 2.0 / (std::ldexp(1.0, n) * std::pow(2.0 * poles.d_min(), m));
  d.convergent = poles.d_min() > 0.5;
  if (!d.convergent) d.warnings.push_back("d_min <= 1/2: the closed-form bound does not decay with m");
  finish(d, opts.grid_nodes);
  return d;
}

SignalDesign design_frequency_target(const PoleSet& poles, cplx z0, const DesignOptions& opts) {
  const int m = static_cast<int>(poles.size());
  const cplx b = target_scale(poles, z0);
  SignalDesign d = blank(DesignMode::frequency_target, poles);
  d.z0 = z0;
  d.b_m = b;
  d.alphas.resize(poles.size());
  for (std::size_t k = 0; k < poles.size(); ++k)
    d.alphas[k] = -b * cheb_eval(m - 1, poles[k]) / ((poles[k] - z0) * poles.node_product(k));
  d.epsilon = std::abs(b) / (segment_distance(z0) * refined_min_abs_q(poles, opts.grid_nodes));
  d.certificate = Certificate::numerical;
  fill_region_diagnostics(d);
  finish(d, opts.grid_nodes);
  return d;
}

SignalDesign design_derivative_target(const PoleSet& poles, cplx z0, const DesignOptions& opts) {
  const int m = static_cast<int>(poles.size());
  const cplx b = target_scale(poles, z0);
  const ComplexPolynomial q = poles.q();
  SignalDesign d = blank(DesignMode::derivative_target, poles);
  d.z0 = z0;
  d.b_m = b;
  // Double root at z0: the derivative condition fixes alpha0 at lambda = z0.
  d.alpha0 = (q.derivative()(z0) - b * cheb_eval_deriv(m - 1, z0)) / q(z0);
  d.alphas.resize(poles.size());
  for (std::size_t k = 0; k < poles.size(); ++k) {
    const cplx dk = poles[k] - z0;
    d.alphas[k] = -b * cheb_eval(m - 1, poles[k]) / (dk * dk * poles.node_product(k));
  }
  const double d0 = segment_distance(z0);
  d.epsilon = std::abs(b) / (d0 * d0 * refined_min_abs_q(poles, opts.grid_nodes));
  d.certificate = Certificate::numerical;
  fill_region_diagnostics(d);
  finish(d, opts.grid_nodes);
  return d;
}

SignalDesign design_with_zero_factor(const PoleSet& poles, const ComplexPolynomial& s,
                                     const DesignOptions& opts) {
  const int m = static_cast<int>(poles.size());
  const int M = s.degree();
  if (M >= m)
    throw Error(Errc::invalid_argument,
                "zero factor degree " + std::to_string(M) + " must be below m = " + std::to_string(m));
  if (!s.is_monic()) throw Error(Errc::invalid_argument, "zero factor must be monic");

  SignalDesign d = blank(DesignMode::zero_factor, poles);
  d.zero_factor = s;
  const int rest = m - M;
  const double scale = std::ldexp(1.0, rest - 1);
  d.alphas.resize(poles.size());
  for (std::size_t k = 0; k < poles.size(); ++k)
    d.alphas[k] = -s(poles[k]) * cheb_eval(rest, poles[k]) / (scale * poles.node_product(k));

  auto numerator = [&](double x) { return std::abs(s(x) * cheb_eval(rest, x)) / scale; };
  const double sup_num = maximize_on_segment(numerator, opts.grid_nodes).value;
  d.epsilon = sup_num / refined_min_abs_q(poles, opts.grid_nodes);
  d.certificate = Certificate::numerical;
  d.convergent = poles.d_min() > 0.5;
  finish(d, opts.grid_nodes);
  return d;
}

ComplexPolynomial zero_factor_single(cplx z0) { return ComplexPolynomial::linear(z0); }

ComplexPolynomial zero_factor_conjugate(cplx z0) {
  return ComplexPolynomial::linear(z0) * ComplexPolynomial::linear(std::conj(z0));
}

Extremum locate_sup(const SignalDesign& design, int grid_nodes) {
  const std::vector<double> grid = chebyshev_grid(grid_nodes);
  std::vector<cplx> residues(design.alphas);
  std::vector<cplx> points(design.poles.points().begin(), design.poles.points().end());
  if (design.alpha0) {
    residues.push_back(*design.alpha0);
    points.push_back(*design.z0);
  }
  std::vector<double> re(grid.size()), im(grid.size());
  kernels::table().partial_fraction(grid, residues, points, re, im);

  std::vector<double> dev(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    dev[i] = std::abs(cplx{re[i], im[i]} - design.target(grid[i]));
  return refine_max(grid, dev, [&design](double x) { return design.deviation(x); });
}

double verify_sup(SignalDesign& design, int grid_nodes) {
  const Extremum e = locate_sup(design, grid_nodes);
  design.epsilon_observed = e.value;
  design.lambda_star = e.arg;
  return e.value;
}

StieltjesCoefficients stieltjes_coefficients(const SignalDesign& design) {
  if (design.mode != DesignMode::frequency_target && design.mode != DesignMode::derivative_target)
    throw Error(Errc::invalid_argument, "Stieltjes coefficients need a target-mode design");
  const cplx z0 = *design.z0;
  StieltjesCoefficients out;
  out.xi.resize(design.alphas.size());
  for (std::size_t k = 0; k < design.alphas.size(); ++k) {
    const cplx zk = design.poles[k];
    if (std::abs(1.0 - zk) <= kSegmentTolerance)
      throw Error(Errc::invalid_argument, "pole " + std::to_string(k) + " equals 1", k);
    out.xi[k] = design.alphas[k] * (1.0 - z0) / (1.0 - zk);
  }
  if (design.alpha0) out.xi0 = *design.alpha0 - 1.0 / (1.0 - z0);
  return out;
}

}  // namespace markovsig
