#include "markovsig/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "markovsig/error.hpp"
#include "markovsig/geometry.hpp"
#include "markovsig/kernels.hpp"

namespace markovsig {

namespace {

constexpr int kMaxRetries = 100;

// Minimum-norm correction of v onto {w : sum_j w_j atoms_j^l = target_l}.
std::vector<double> project_onto_moments(std::span<const double> atoms, std::vector<double> v,
                                         std::span<const double> target) {
  const std::size_t rows = target.size();
  const std::size_t k = atoms.size();
  std::vector<std::vector<double>> a(rows, std::vector<double>(k));
  for (std::size_t j = 0; j < k; ++j) {
    double p = 1.0;
    for (std::size_t l = 0; l < rows; ++l) {
      a[l][j] = p;
      p *= atoms[j];
    }
  }
  // Gram system (A A^T) y = A v - b, solved by Gaussian elimination with pivoting.
  std::vector<std::vector<double>> g(rows, std::vector<double>(rows + 1, 0.0));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < rows; ++c)
      g[r][c] = std::inner_product(a[r].begin(), a[r].end(), a[c].begin(), 0.0);
    g[r][rows] = std::inner_product(a[r].begin(), a[r].end(), v.begin(), 0.0) - target[r];
  }
  for (std::size_t c = 0; c < rows; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < rows; ++r)
      if (std::abs(g[r][c]) > std::abs(g[piv][c])) piv = r;
    std::swap(g[c], g[piv]);
    if (std::abs(g[c][c]) < 1e-300) return {};
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == c) continue;
      const double f = g[r][c] / g[c][c];
      for (std::size_t cc = c; cc <= rows; ++cc) g[r][cc] -= f * g[c][cc];
    }
  }
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t r = 0; r < rows; ++r) v[j] -= a[r][j] * g[r][rows] / g[r][r];
  return v;
}

bool moments_match(std::span<const double> atoms, std::span<const double> w,
                   std::span<const double> target) {
  for (std::size_t l = 0; l < target.size(); ++l) {
    double s = 0.0;
    for (std::size_t j = 0; j < atoms.size(); ++j) s += w[j] * std::pow(atoms[j], static_cast<double>(l));
    if (std::abs(s - target[l]) > 1e-10) return false;
  }
  return true;
}

std::vector<double> full_targets(std::span<const double> known_moments) {
  std::vector<double> t{1.0};
  t.insert(t.end(), known_moments.begin(), known_moments.end());
  return t;
}

// One projection attempt; empty on failure.
std::vector<double> try_weights(std::span<const double> atoms, std::span<const double> targets,
                                std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.05, 1.0);
  std::vector<double> v(atoms.size());
  for (double& x : v) x = pos(rng);
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= total;
  std::vector<double> w = project_onto_moments(atoms, std::move(v), targets);
  if (w.empty()) return {};
  // Alternate between the nonnegative orthant and the moment constraints
  // until the projection stays nonnegative.
  for (int round = 0; round < 500; ++round) {
    if (*std::min_element(w.begin(), w.end()) >= -1e-15) break;
    for (double& x : w) x = std::max(x, 0.0);
    w = project_onto_moments(atoms, std::move(w), targets);
    if (w.empty()) return {};
  }
  for (double& x : w) {
    if (x < -1e-15) return {};
    x = std::max(x, 0.0);
  }
  if (!moments_match(atoms, w, targets)) return {};
  return w;
}

}  // namespace

DiscreteMeasure DiscreteMeasure::create(std::vector<double> atoms, std::vector<double> weights) {
  if (atoms.empty()) throw Error(Errc::empty_input, "measure needs at least one atom");
  if (atoms.size() != weights.size())
    throw Error(Errc::invalid_argument, "atoms and weights differ in length");
  double total = 0.0;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    if (!(atoms[j] >= -1.0 && atoms[j] <= 1.0))
      throw Error(Errc::invalid_argument, "atom " + std::to_string(j) + " outside [-1,1]", j);
    if (!(weights[j] >= 0.0))
      throw Error(Errc::invalid_argument, "weight " + std::to_string(j) + " is negative", j);
    total += weights[j];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw Error(Errc::invalid_argument, "weights sum to " + std::to_string(total) + ", not 1");

  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return atoms[a] < atoms[b]; });
  DiscreteMeasure mu;
  for (std::size_t idx : order) {
    if (!mu.atoms_.empty() && mu.atoms_.back() == atoms[idx]) {
      mu.weights_.back() += weights[idx];
    } else {
      mu.atoms_.push_back(atoms[idx]);
      mu.weights_.push_back(weights[idx]);
    }
  }
  return mu;
}

DiscreteMeasure DiscreteMeasure::point_mass(double lambda) { return create({lambda}, {1.0}); }

cplx markov_eval(const DiscreteMeasure& mu, cplx z) {
  if (segment_distance(z) <= kSegmentTolerance)
    throw Error(Errc::point_on_segment, "Markov function evaluated on its support [-1,1]");
  return kernels::table().markov_sum(mu.atoms(), mu.weights(), z);
}

cplx markov_eval_deriv(const DiscreteMeasure& mu, cplx z) {
  if (segment_distance(z) <= kSegmentTolerance)
    throw Error(Errc::point_on_segment, "Markov function evaluated on its support [-1,1]");
  cplx s{0.0};
  for (std::size_t j = 0; j < mu.size(); ++j) {
    const cplx d = mu.atoms()[j] - z;
    s += mu.weights()[j] / (d * d);
  }
  return s;
}

std::vector<double> moments(const DiscreteMeasure& mu, int n) {
  if (n < 0) throw Error(Errc::invalid_argument, "moment order must be nonnegative");
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  out[0] = 1.0;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    double p = mu.atoms()[j];
    for (int l = 1; l <= n; ++l) {
      out[static_cast<std::size_t>(l)] += mu.weights()[j] * p;
      p *= mu.atoms()[j];
    }
  }
  return out;
}

cplx target_functional(const SignalDesign& design, const DiscreteMeasure& mu) {
  switch (design.mode) {
    case DesignMode::unit:
    case DesignMode::zero_factor:
      return cplx{1.0};
    case DesignMode::moments: {
      const std::vector<double> m = moments(mu, design.n);
      cplx s{0.0};
      for (std::size_t l = 0; l < design.gammas.size(); ++l) s += design.gammas[l] * m[l];
      return s;
    }
    case DesignMode::frequency_target:
      return markov_eval(mu, *design.z0);
    case DesignMode::derivative_target:
      return markov_eval_deriv(mu, *design.z0);
  }
  return cplx{0.0};
}

cplx design_functional(const SignalDesign& design, const DiscreteMeasure& mu) {
  cplx s{0.0};
  for (std::size_t k = 0; k < design.alphas.size(); ++k)
    s += design.alphas[k] * markov_eval(mu, design.poles[k]);
  if (design.alpha0) s += *design.alpha0 * markov_eval(mu, *design.z0);
  return s;
}

double measure_deviation(const SignalDesign& design, const DiscreteMeasure& mu) {
  return std::abs(design_functional(design, mu) - target_functional(design, mu));
}

WorstCase worst_case_point_mass(const SignalDesign& design, int grid_points) {
  if (grid_points < 2) throw Error(Errc::invalid_argument, "need at least two grid points");
  auto dev = [&design](double x) {
    return measure_deviation(design, DiscreteMeasure::point_mass(std::clamp(x, -1.0, 1.0)));
  };
  std::vector<double> grid(static_cast<std::size_t>(grid_points));
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = i + 1 == grid.size() ? 1.0 : -1.0 + 2.0 * static_cast<double>(i) / (grid_points - 1);
    values[i] = dev(grid[i]);
  }
  const Extremum e = refine_max(grid, values, dev);
  return {e.arg, e.value};
}

void check_moments_feasible(std::span<const double> known_moments) {
  if (known_moments.size() > 2)
    throw Error(Errc::invalid_argument, "at most two known moments are supported");
  if (known_moments.empty()) return;
  const double m1 = known_moments[0];
  if (!(std::abs(m1) <= 1.0))
    throw Error(Errc::infeasible_moments, "M1 = " + std::to_string(m1) + " outside [-1,1]");
  if (known_moments.size() == 2) {
    const double m2 = known_moments[1];
    if (!(m2 >= m1 * m1 - 1e-14 && m2 <= 1.0 + 1e-14))
      throw Error(Errc::infeasible_moments, "M2 must lie in [M1^2, 1]");
  }
}

DiscreteMeasure measure_with_moments_on_atoms(std::vector<double> atoms,
                                              std::span<const double> known_moments,
                                              std::uint64_t seed) {
  check_moments_feasible(known_moments);
  const std::vector<double> targets = full_targets(known_moments);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<double> w = try_weights(atoms, targets, rng);
    if (!w.empty()) {
      const double total = std::accumulate(w.begin(), w.end(), 0.0);
      if (std::abs(total - 1.0) <= 1e-12) return DiscreteMeasure::create(atoms, std::move(w));
    }
  }
  throw Error(Errc::infeasible_moments, "no nonnegative weights on the given atoms match the moments");
}

DiscreteMeasure random_measure_with_moments(std::span<const double> known_moments, int atom_count,
                                            std::uint64_t seed) {
  if (atom_count < 2) throw Error(Errc::invalid_argument, "atom_count must be at least 2");
  check_moments_feasible(known_moments);
  if (!known_moments.empty() && std::abs(known_moments[0]) >= 1.0)
    throw Error(Errc::infeasible_moments, "|M1| must be below 1 for a random measure");
  const std::vector<double> targets = full_targets(known_moments);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<double> atoms(static_cast<std::size_t>(atom_count));
    for (double& x : atoms) x = unit(rng);
    std::sort(atoms.begin(), atoms.end());
    if (std::adjacent_find(atoms.begin(), atoms.end()) != atoms.end()) continue;
    std::vector<double> w = try_weights(atoms, targets, rng);
    if (w.empty()) continue;
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12) continue;
    return DiscreteMeasure::create(std::move(atoms), std::move(w));
  }
  throw Error(Errc::infeasible_moments, "random measure generation failed after " +
                                            std::to_string(kMaxRetries) + " attempts");
}

DiscreteMeasure random_measure_with_moments(double m1, int atom_count, std::uint64_t seed) {
  const double km[1] = {m1};
  return random_measure_with_moments(std::span<const double>(km, 1), atom_count, seed);
}

DiscreteMeasure random_measure(int max_atoms, std::uint64_t seed) {
  if (max_atoms < 1) throw Error(Errc::invalid_argument, "max_atoms must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(1, max_atoms);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_int_distribution<int> coin(0, 3);
  const int k = count(rng);
  std::vector<double> atoms(static_cast<std::size_t>(k)), w(static_cast<std::size_t>(k));
  double total = 0.0;
  for (int j = 0; j < k; ++j) {
    const int c = coin(rng);
    atoms[static_cast<std::size_t>(j)] = c == 0 ? (unit(rng) < 0.0 ? -1.0 : 1.0) : unit(rng);
    w[static_cast<std::size_t>(j)] = expo(rng);
    total += w[static_cast<std::size_t>(j)];
  }
  for (double& x : w) x /= total;
  // Renormalize to push the sum to 1 within rounding of a single addition chain.
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < w.size(); ++j) s += w[j];
  w.back() = std::max(0.0, 1.0 - s);
  return DiscreteMeasure::create(std::move(atoms), std::move(w));
}

}  // namespace markovsig
