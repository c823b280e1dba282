#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "markovsig/extremum.hpp"
#include "markovsig/polynomial.hpp"
#include "markovsig/types.hpp"

namespace markovsig {

inline constexpr std::size_t kMaxPoles = 48;

/// Design points z_1..z_m off [-1,1], pairwise distinct.
class PoleSet {
 public:
  /// Throws Error(duplicate_points | point_on_segment | ...) with the index
  /// of the offending point.
  static PoleSet create(std::vector<cplx> points);

  std::size_t size() const noexcept { return points_.size(); }
  std::span<const cplx> points() const noexcept { return points_; }
  cplx operator[](std::size_t k) const noexcept { return points_[k]; }

  /// d(z_k), the distance to [-1,1].
  std::span<const double> distances() const noexcept { return distances_; }
  double d_min() const noexcept { return d_min_; }

  /// prod_{j != k} (z_k - z_j)
  cplx node_product(std::size_t k) const noexcept;

  /// q(lambda) = prod_j (lambda - z_j)
  ComplexPolynomial q() const;

  /// Every point has its conjugate in the set (real points pair with themselves).
  bool conjugation_closed(double tol = 1e-10) const noexcept;

  /// Index of the point equal to conj(points[k]), if any.
  std::optional<std::size_t> conjugate_of(std::size_t k, double tol = 1e-10) const noexcept;

 private:
  PoleSet() = default;
  std::vector<cplx> points_;
  std::vector<double> distances_;
  double d_min_ = 0.0;
};

enum class DesignMode { unit, moments, frequency_target, derivative_target, zero_factor };

const char* to_string(DesignMode mode) noexcept;

enum class Certificate {
  closed_form,  // analytic bound
  numerical,    // sup of the numerator over min |q|, both located on the refined grid
};

struct DesignOptions {
  int grid_nodes = kDefaultGridNodes;
};

/// Residues of a pole-constrained rational approximant together with its
/// certified sup-norm error on [-1,1].
///
/// The approximant is R(lambda) = sum_k alphas[k] / (lambda - z_k), plus
/// alpha0 / (lambda - z0) in derivative-target mode. The target it
/// approximates depends on the mode:
///   unit, zero_factor    1
///   moments              sum_l gammas[l] lambda^l
///   frequency_target     1 / (lambda - z0)
///   derivative_target    1 / (lambda - z0)^2
struct SignalDesign {
  DesignMode mode;
  PoleSet poles;
  std::vector<cplx> alphas;

  int n = 0;
  std::vector<cplx> gammas;
  std::optional<cplx> z0;
  std::optional<cplx> alpha0;
  std::optional<cplx> b_m;
  std::optional<ComplexPolynomial> zero_factor;

  double epsilon = 0.0;
  Certificate certificate = Certificate::closed_form;
  /// unit/moments/zero_factor: d_min > 1/2. Target modes: every pole in H(1).
  bool convergent = true;
  /// Target modes only: H(1) membership per pole.
  std::vector<bool> region_membership;

  double epsilon_observed = 0.0;
  double lambda_star = 0.0;
  std::vector<std::string> warnings;

  cplx approximant(cplx lambda) const noexcept;
  cplx target(cplx lambda) const noexcept;
  double deviation(double lambda) const noexcept { return std::abs(approximant(lambda) - target(lambda)); }
};

/// Constant-target design: alpha_k = -T_m(z_k) / (2^(m-1) prod_{j!=k}(z_k - z_j)),
/// epsilon = 2 / (2 d_min)^m.
SignalDesign design_unit(const PoleSet& poles, const DesignOptions& opts = {});

/// Moment-augmented design: T_{m+n}/2^(m+n-1) = q r - p by Euclidean division,
/// epsilon = 2 / (2^n (2 d_min)^m).
SignalDesign design_moments(const PoleSet& poles, int n, const DesignOptions& opts = {});

/// Approximates 1/(lambda - z0) with (lambda - z0) p = q - b_m T_{m-1},
/// b_m = q(z0) / T_{m-1}(z0); epsilon = |b_m| / (d0 min|q|).
SignalDesign design_frequency_target(const PoleSet& poles, cplx z0, const DesignOptions& opts = {});

/// Approximates 1/(lambda - z0)^2 using an extra residue alpha0 at z0:
/// (lambda - z0)^2 p = q [1 - alpha0 (lambda - z0)] - b_m T_{m-1};
/// epsilon = |b_m| / (d0^2 min|q|).
SignalDesign design_derivative_target(const PoleSet& poles, cplx z0, const DesignOptions& opts = {});

/// Unit design with the error polynomial s T_{m-M} / 2^(m-M-1) for a monic
/// s of degree M < m. The certificate is numerical.
SignalDesign design_with_zero_factor(const PoleSet& poles, const ComplexPolynomial& s,
                                     const DesignOptions& opts = {});

/// Zero factors for shaping: (lambda - z0), or (lambda - z0)(lambda - conj z0)
/// when only the real part of the response matters.
ComplexPolynomial zero_factor_single(cplx z0);
ComplexPolynomial zero_factor_conjugate(cplx z0);

/// alpha_k = p(z_k) / prod_{j!=k}(z_k - z_j).
std::vector<cplx> residues_from_numerator(const ComplexPolynomial& p, const PoleSet& poles);

/// Location and value of sup_{[-1,1]} |R(lambda) - target(lambda)|.
Extremum locate_sup(const SignalDesign& design, int grid_nodes = kDefaultGridNodes);

/// locate_sup, stored into design.epsilon_observed / lambda_star.
double verify_sup(SignalDesign& design, int grid_nodes = kDefaultGridNodes);

struct StieltjesCoefficients {
  std::vector<cplx> xi;
  std::optional<cplx> xi0;
};

/// xi_k = alpha_k (1 - z0) / (1 - z_k); derivative mode adds
/// xi_0 = alpha0 - 1/(1 - z0).
StieltjesCoefficients stieltjes_coefficients(const SignalDesign& design);

}  // namespace markovsig
