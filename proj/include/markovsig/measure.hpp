#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "markovsig/design.hpp"
#include "markovsig/types.hpp"

namespace markovsig {

/// Probability measure on [-1,1] with finitely many atoms, stored with
/// strictly increasing atoms.
class DiscreteMeasure {
 public:
  /// Sorts atoms, merges repeats. Throws if an atom leaves [-1,1], a weight
  /// is negative, or the weights do not sum to 1 within 1e-12.
  static DiscreteMeasure create(std::vector<double> atoms, std::vector<double> weights);
  static DiscreteMeasure point_mass(double lambda);

  std::span<const double> atoms() const noexcept { return atoms_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return atoms_.size(); }

 private:
  DiscreteMeasure() = default;
  std::vector<double> atoms_;
  std::vector<double> weights_;
};

/// F_mu(z) = sum_j w_j / (lambda_j - z).
cplx markov_eval(const DiscreteMeasure& mu, cplx z);

/// dF_mu/dz = sum_j w_j / (lambda_j - z)^2.
cplx markov_eval_deriv(const DiscreteMeasure& mu, cplx z);

/// M_0..M_n with M_0 = 1.
std::vector<double> moments(const DiscreteMeasure& mu, int n);

/// The quantity the design's approximant predicts, evaluated through mu:
/// 1, sum gamma_l M_l, F_mu(z0), or F_mu'(z0).
cplx target_functional(const SignalDesign& design, const DiscreteMeasure& mu);

/// sum_k alpha_k F_mu(z_k) (+ alpha0 F_mu(z0)).
cplx design_functional(const SignalDesign& design, const DiscreteMeasure& mu);

/// |design_functional - target_functional|, the quantity the certificate bounds.
double measure_deviation(const SignalDesign& design, const DiscreteMeasure& mu);

struct WorstCase {
  double lambda_star;
  double deviation;
};

/// Point mass maximizing measure_deviation, found by scanning point masses on
/// a uniform grid and refining.
WorstCase worst_case_point_mass(const SignalDesign& design, int grid_points = 4097);

/// Measure with prescribed moments M_1..M_n (n <= 2): random atoms, and a
/// random positive weight vector projected onto the moment constraints.
/// Retries with fresh draws at most 100 times before reporting infeasible.
DiscreteMeasure random_measure_with_moments(std::span<const double> known_moments, int atom_count,
                                            std::uint64_t seed);
DiscreteMeasure random_measure_with_moments(double m1, int atom_count, std::uint64_t seed);

/// Same construction on caller-chosen atoms.
DiscreteMeasure measure_with_moments_on_atoms(std::vector<double> atoms,
                                              std::span<const double> known_moments,
                                              std::uint64_t seed);

/// Measure with unconstrained moments and 1..max_atoms atoms; endpoints are
/// drawn now and then so extremal supports get exercised.
DiscreteMeasure random_measure(int max_atoms, std::uint64_t seed);

/// Throws Error(infeasible_moments) unless M_1..M_n can belong to a
/// probability measure on [-1,1] (n <= 2).
void check_moments_feasible(std::span<const double> known_moments);

}  // namespace markovsig
