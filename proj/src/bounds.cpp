#include <algorithm>
#include <cmath>
#include <limits>

#include "markovsig/error.hpp"
#include "markovsig/geometry.hpp"
#include "markovsig/kernels.hpp"
#include "markovsig/response.hpp"

namespace markovsig {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Objective {
  std::function<double(double)> f;
  std::function<void(std::span<const double>, std::span<double>)> batch;
};

double golden_min(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(hi > lo)) return f(lo);
  return -golden_max([&f](double x) { return -f(x); }, lo, hi, tol).value;
}

std::vector<double> uniform_grid(int points) {
  std::vector<double> xs(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) xs[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (points - 1);
  xs.back() = 1.0;
  return xs;
}

// min of g over point masses.
double min_point(const Objective& g, const BoundsOptions& opts) {
  return minimize_on_segment(g.f, opts.point_grid).value;
}

// min over measures with mean m1 (two atoms at most).
double min_mean(const Objective& g, double m1, const BoundsOptions& opts) {
  std::vector<double> xs = uniform_grid(opts.atom_grid);
  xs.insert(std::upper_bound(xs.begin(), xs.end(), m1), m1);
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<double> vals(xs.size());
  g.batch(xs, vals);
  const kernels::PairMin pm = kernels::table().pair_envelope_min(xs, vals, m1);
  double best = pm.value;

  const std::size_t n = xs.size();
  const double a_lo = xs[pm.lo == 0 ? 0 : pm.lo - 1];
  const double a_hi = std::min(xs[std::min(pm.lo + 1, n - 1)], m1);
  const double b_lo = std::max(xs[pm.hi == 0 ? 0 : pm.hi - 1], m1);
  const double b_hi = xs[std::min(pm.hi + 1, n - 1)];
  auto pair_value = [&](double a, double b) {
    if (a > m1 || b < m1) return kInf;
    if (b - a <= 0.0) return g.f(m1);
    const double w = (b - m1) / (b - a);
    return w * g.f(a) + (1.0 - w) * g.f(b);
  };
  double a = xs[pm.lo], b = xs[pm.hi];
  double cur = pair_value(a, b);
  for (int round = 0; round < 4; ++round) {
    const double fb = b;
    const double na = golden_max([&](double x) { return -pair_value(x, fb); }, a_lo, a_hi, opts.refine_tol).arg;
    if (const double v = pair_value(na, b); v < cur) a = na, cur = v;
    const double fa = a;
    const double nb = golden_max([&](double x) { return -pair_value(fa, x); }, b_lo, b_hi, opts.refine_tol).arg;
    if (const double v = pair_value(a, nb); v < cur) b = nb, cur = v;
  }
  best = std::min(best, cur);
  return best;
}

// min over measures with mean m1 and second moment m2 (three atoms at most).
double min_mean_var(const Objective& g, double m1, double m2, const BoundsOptions& opts) {
  const double var = m2 - m1 * m1;
  // Two-atom family: (a - m1)(b - m1) = -var, a below the mean.
  const double a_max = m1 - var / (1.0 - m1);
  auto two_atom = [&](double a) {
    a = std::clamp(a, -1.0, a_max);
    const double b = std::min(1.0, m1 - var / (a - m1));
    const double w = (b - m1) / (b - a);
    return w * g.f(a) + (1.0 - w) * g.f(b);
  };
  double best = kInf;
  {
    const int pts = opts.point_grid;
    std::vector<double> as(static_cast<std::size_t>(pts)), vals(as.size());
    for (int i = 0; i < pts; ++i) {
      as[static_cast<std::size_t>(i)] = -1.0 + (a_max + 1.0) * i / (pts - 1);
      vals[static_cast<std::size_t>(i)] = two_atom(as[static_cast<std::size_t>(i)]);
    }
    const std::size_t i = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    best = vals[i];
    const double lo = as[i == 0 ? 0 : i - 1], hi = as[std::min(i + 1, as.size() - 1)];
    best = std::min(best, golden_min(two_atom, lo, hi, opts.refine_tol));
  }

  // Three-atom family on a coarse grid; weights from the Vandermonde solve.
  const std::vector<double> xs = uniform_grid(opts.triple_grid);
  std::vector<double> vals(xs.size());
  g.batch(xs, vals);
  auto weights = [&](double a, double b, double c, double w[3]) {
    w[0] = (m2 - (b + c) * m1 + b * c) / ((a - b) * (a - c));
    w[1] = (m2 - (a + c) * m1 + a * c) / ((b - a) * (b - c));
    w[2] = (m2 - (a + b) * m1 + a * b) / ((c - a) * (c - b));
    return w[0] >= -1e-15 && w[1] >= -1e-15 && w[2] >= -1e-15;
  };
  const std::size_t n = xs.size();
  double tbest = kInf;
  std::size_t bi = 0, bj = 1, bk = 2;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        double w[3];
        if (!weights(xs[i], xs[j], xs[k], w)) continue;
        const double v = w[0] * vals[i] + w[1] * vals[j] + w[2] * vals[k];
        if (v < tbest) {
          tbest = v;
          bi = i, bj = j, bk = k;
        }
      }
  if (tbest < kInf) {
    double at[3] = {xs[bi], xs[bj], xs[bk]};
    const std::size_t idx[3] = {bi, bj, bk};
    auto triple_value = [&](const double p[3]) {
      if (!(p[0] < p[1] && p[1] < p[2])) return kInf;
      double w[3];
      if (!weights(p[0], p[1], p[2], w)) return kInf;
      return std::max(w[0], 0.0) * g.f(p[0]) + std::max(w[1], 0.0) * g.f(p[1]) +
             std::max(w[2], 0.0) * g.f(p[2]);
    };
    best = std::min(best, tbest);
    for (int round = 0; round < 3; ++round) {
      for (int c = 0; c < 3; ++c) {
        const double lo = xs[idx[c] == 0 ? 0 : idx[c] - 1];
        const double hi = xs[std::min(idx[c] + 1, n - 1)];
        auto along = [&](double x) {
          double p[3] = {at[0], at[1], at[2]};
          p[c] = x;
          return triple_value(p);
        };
        const double cand = golden_max([&](double x) { return -along(x); }, lo, hi, opts.refine_tol).arg;
        if (along(cand) < triple_value(at)) at[c] = cand;
      }
      best = std::min(best, triple_value(at));
    }
  }
  return best;
}

double constrained_min(const Objective& g, std::span<const double> km, const BoundsOptions& opts) {
  if (km.empty()) return min_point(g, opts);
  const double m1 = km[0];
  if (std::abs(m1) >= 1.0) return g.f(std::clamp(m1, -1.0, 1.0));
  if (km.size() == 1) return min_mean(g, m1, opts);
  const double m2 = km[1];
  if (m2 - m1 * m1 <= 1e-14) return g.f(m1);
  if (m2 >= 1.0 - 1e-14) {
    const double wp = 0.5 * (1.0 + m1);
    return wp * g.f(1.0) + (1.0 - wp) * g.f(-1.0);
  }
  return min_mean_var(g, m1, m2, opts);
}

Range constrained_range(const Objective& g, std::span<const double> km, const BoundsOptions& opts) {
  const Objective neg{[&g](double x) { return -g.f(x); },
                      [&g](std::span<const double> xs, std::span<double> out) {
                        g.batch(xs, out);
                        for (double& v : out) v = -v;
                      }};
  return {constrained_min(g, km, opts), -constrained_min(neg, km, opts)};
}

void check_options(const BoundsOptions& opts) {
  if (opts.atom_grid < 2 || opts.triple_grid < 3 || opts.point_grid < 2)
    throw Error(Errc::invalid_argument, "bounds grids are too small");
  if (!(opts.refine_tol > 0.0)) throw Error(Errc::invalid_argument, "refine_tol must be positive");
  if (!opts.a0_known && !(opts.a0_min >= 0.0 && opts.a0_min <= opts.a0_max))
    throw Error(Errc::invalid_argument, "a0 range must satisfy 0 <= a0_min <= a0_max");
}

}  // namespace

Range moment_constrained_range(const std::function<double(double)>& g,
                               std::span<const double> known_moments, const BoundsOptions& opts) {
  check_options(opts);
  check_moments_feasible(known_moments);
  const Objective obj{g, [&g](std::span<const double> xs, std::span<double> out) {
                        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = g(xs[i]);
                      }};
  return constrained_range(obj, known_moments, opts);
}

namespace {

void check_design_poles(const SignalDesign& design, const PoleSet& poles) {
  if (poles.size() != design.poles.size())
    throw Error(Errc::invalid_argument, "design and frequencies differ in length");
  for (std::size_t k = 0; k < poles.size(); ++k)
    if (std::abs(poles[k] - design.poles[k]) > 1e-9 * std::max(1.0, std::abs(poles[k])))
      throw Error(Errc::invalid_argument,
                  "frequencies[" + std::to_string(k) + "] does not map to the design pole", k);
}

Range bounds_at(const SignalDesign& design, const SystemModel& model, const PoleSet& poles,
                std::span<const cplx> omegas, std::span<const double> known_moments, double theta,
                double t, double t0, const BoundsOptions& opts) {
  const cplx rot = std::polar(1.0, theta);
  const std::vector<cplx> zs(poles.points().begin(), poles.points().end());
  std::vector<cplx> beta(zs.size());
  double lipschitz = 0.0;
  for (std::size_t k = 0; k < zs.size(); ++k) {
    beta[k] = rot * design.alphas[k] * std::exp(-kI * omegas[k] * (t - t0));
    const double d = poles.distances()[k];
    lipschitz += std::abs(beta[k]) / (d * d);
  }
  const Objective g{
      [&](double x) {
        double s = 0.0;
        for (std::size_t k = 0; k < zs.size(); ++k) s += (beta[k] / (x - zs[k])).real();
        return s;
      },
      [&](std::span<const double> xs, std::span<double> res) {
        std::vector<double> im(xs.size());
        kernels::table().partial_fraction(xs, beta, zs, res, im);
      }};
  const Range r = constrained_range(g, known_moments, opts);
  const double pad = lipschitz * opts.refine_tol;
  const double lo = r.lo - pad, hi = r.hi + pad;
  if (opts.a0_known) return {model.a0 * lo, model.a0 * hi};
  return {std::min(opts.a0_min * lo, opts.a0_max * lo), std::max(opts.a0_min * hi, opts.a0_max * hi)};
}

}  // namespace

Range response_bounds_at(const SignalDesign& design, const SystemModel& model,
                         std::span<const cplx> omegas, std::span<const double> known_moments,
                         double theta, double t, double t0, const BoundsOptions& opts) {
  check_options(opts);
  check_moments_feasible(known_moments);
  model.validate();
  const PoleSet poles = poles_for(model, omegas);
  check_design_poles(design, poles);
  return bounds_at(design, model, poles, omegas, known_moments, theta, t, t0, opts);
}

BoundsSeries response_bounds(const SignalDesign& design, const SystemModel& model,
                             std::span<const cplx> omegas, std::span<const double> known_moments,
                             double theta, const TimeGrid& grid, const BoundsOptions& opts) {
  check_options(opts);
  check_moments_feasible(known_moments);
  model.validate();
  const PoleSet poles = poles_for(model, omegas);
  check_design_poles(design, poles);
  BoundsSeries out;
  out.t = grid.times();
  for (double t : out.t) {
    const Range r = bounds_at(design, model, poles, omegas, known_moments, theta, t, grid.t0, opts);
    out.lower.push_back(r.lo);
    out.upper.push_back(r.hi);
  }
  return out;
}

}  // namespace markovsig
