#pragma once

#include <span>
#include <vector>

#include "markovsig/types.hpp"

namespace markovsig {

/// Largest degree handled in the monomial basis. Products and Euclidean
/// division lose accuracy quickly past this point.
inline constexpr int kMaxDegree = 64;

/// Polynomial over complex scalars, coefficient j multiplies lambda^j.
class ComplexPolynomial {
 public:
  ComplexPolynomial() : coeffs_{cplx{0.0}} {}
  explicit ComplexPolynomial(std::vector<cplx> coeffs);

  static ComplexPolynomial constant(cplx c) { return ComplexPolynomial({c}); }
  /// lambda - root
  static ComplexPolynomial linear(cplx root) { return ComplexPolynomial({-root, cplx{1.0}}); }

  /// Highest index with a nonzero coefficient; 0 for constants (including zero).
  int degree() const noexcept;
  bool is_zero() const noexcept;
  cplx leading() const noexcept { return coeffs_[static_cast<std::size_t>(degree())]; }

  /// Leading coefficient equals 1 within relative 1e-12.
  bool is_monic() const noexcept;

  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  cplx coeff(int j) const noexcept;

  cplx operator()(cplx z) const noexcept;
  ComplexPolynomial derivative() const;

  ComplexPolynomial& operator+=(const ComplexPolynomial& other);
  ComplexPolynomial& operator-=(const ComplexPolynomial& other);
  ComplexPolynomial& operator*=(cplx s);

  friend ComplexPolynomial operator+(ComplexPolynomial a, const ComplexPolynomial& b) { return a += b; }
  friend ComplexPolynomial operator-(ComplexPolynomial a, const ComplexPolynomial& b) { return a -= b; }
  friend ComplexPolynomial operator*(ComplexPolynomial a, cplx s) { return a *= s; }
  friend ComplexPolynomial operator*(cplx s, ComplexPolynomial a) { return a *= s; }
  friend ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b);

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

/// Horner evaluation.
cplx poly_eval(const ComplexPolynomial& p, cplx z) noexcept;

/// T_m(z) by the three-term recurrence.
cplx cheb_eval(int m, cplx z);

/// dT_m/dz by differentiating the recurrence.
cplx cheb_eval_deriv(int m, cplx z);

/// prod_j (lambda - roots[j]).
ComplexPolynomial monic_from_roots(std::span<const cplx> roots);

/// T_m in the monomial basis.
ComplexPolynomial chebyshev_t(int m);

/// T_m / 2^(m-1), the monic Chebyshev polynomial (m >= 1).
ComplexPolynomial monic_cheb(int m);

struct DivMod {
  ComplexPolynomial quotient;
  ComplexPolynomial remainder;
};

/// Euclidean division a = b * quotient + remainder, deg(remainder) < deg(b).
DivMod poly_divmod(const ComplexPolynomial& a, const ComplexPolynomial& b);

/// Coefficient-wise comparison at relative 1e-10 with absolute floor 1e-14.
bool coeffs_close(const ComplexPolynomial& a, const ComplexPolynomial& b,
                  double rel = 1e-10, double abs_floor = 1e-14);

}  // namespace markovsig
