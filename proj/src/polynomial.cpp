#include "markovsig/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "markovsig/error.hpp"

namespace markovsig {

namespace {

void check_degree(int m) {
  if (m < 0) throw Error(Errc::invalid_argument, "negative Chebyshev degree");
  if (m > kMaxDegree)
    throw Error(Errc::degree_limit,
                "degree " + std::to_string(m) + " exceeds limit " + std::to_string(kMaxDegree));
}

}  // namespace

ComplexPolynomial::ComplexPolynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(cplx{0.0});
  trim();
  if (degree() > kMaxDegree)
    throw Error(Errc::degree_limit, "polynomial degree " + std::to_string(degree()) +
                                        " exceeds limit " + std::to_string(kMaxDegree));
}

void ComplexPolynomial::trim() {
  while (coeffs_.size() > 1 && coeffs_.back() == cplx{0.0}) coeffs_.pop_back();
}

int ComplexPolynomial::degree() const noexcept {
  return static_cast<int>(coeffs_.size()) - 1;
}

bool ComplexPolynomial::is_zero() const noexcept {
  return coeffs_.size() == 1 && coeffs_[0] == cplx{0.0};
}

bool ComplexPolynomial::is_monic() const noexcept {
  return std::abs(leading() - cplx{1.0}) <= 1e-12;
}

cplx ComplexPolynomial::coeff(int j) const noexcept {
  if (j < 0 || j >= static_cast<int>(coeffs_.size())) return cplx{0.0};
  return coeffs_[static_cast<std::size_t>(j)];
}

cplx ComplexPolynomial::operator()(cplx z) const noexcept {
  cplx acc{0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ComplexPolynomial ComplexPolynomial::derivative() const {
  if (coeffs_.size() == 1) return ComplexPolynomial{};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t j = 1; j < coeffs_.size(); ++j) d[j - 1] = coeffs_[j] * static_cast<double>(j);
  return ComplexPolynomial(std::move(d));
}

ComplexPolynomial& ComplexPolynomial::operator+=(const ComplexPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), cplx{0.0});
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  trim();
  return *this;
}

ComplexPolynomial& ComplexPolynomial::operator-=(const ComplexPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), cplx{0.0});
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
  trim();
  return *this;
}

ComplexPolynomial& ComplexPolynomial::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  std::vector<cplx> out(a.coeffs_.size() + b.coeffs_.size() - 1, cplx{0.0});
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return ComplexPolynomial(std::move(out));
}

cplx poly_eval(const ComplexPolynomial& p, cplx z) noexcept { return p(z); }

cplx cheb_eval(int m, cplx z) {
  check_degree(m);
  if (m == 0) return cplx{1.0};
  cplx prev{1.0};
  cplx cur = z;
  for (int k = 1; k < m; ++k) {
    cplx next = 2.0 * z * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

cplx cheb_eval_deriv(int m, cplx z) {
  check_degree(m);
  if (m == 0) return cplx{0.0};
  // T'_{k+1} = 2 T_k + 2 z T'_k - T'_{k-1}
  cplx t_prev{1.0}, t_cur = z;
  cplx d_prev{0.0}, d_cur{1.0};
  for (int k = 1; k < m; ++k) {
    cplx t_next = 2.0 * z * t_cur - t_prev;
    cplx d_next = 2.0 * t_cur + 2.0 * z * d_cur - d_prev;
    t_prev = t_cur;
    t_cur = t_next;
    d_prev = d_cur;
    d_cur = d_next;
  }
  return d_cur;
}

ComplexPolynomial monic_from_roots(std::span<const cplx> roots) {
  if (roots.empty()) throw Error(Errc::empty_input, "monic_from_roots needs at least one root");
  if (roots.size() > static_cast<std::size_t>(kMaxDegree))
    throw Error(Errc::degree_limit, "too many roots");
  std::vector<cplx> c{cplx{1.0}};
  for (cplx r : roots) {
    c.push_back(cplx{0.0});
    for (std::size_t j = c.size() - 1; j > 0; --j) c[j] = c[j - 1] - r * c[j];
    c[0] = -r * c[0];
  }
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial chebyshev_t(int m) {
  check_degree(m);
  std::vector<double> prev{1.0};
  if (m == 0) return ComplexPolynomial({cplx{1.0}});
  std::vector<double> cur{0.0, 1.0};
  for (int k = 1; k < m; ++k) {
    std::vector<double> next(cur.size() + 1, 0.0);
    for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += 2.0 * cur[j];
    for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return ComplexPolynomial(std::vector<cplx>(cur.begin(), cur.end()));
}

ComplexPolynomial monic_cheb(int m) {
  if (m < 1) throw Error(Errc::invalid_argument, "monic Chebyshev polynomial needs m >= 1");
  return chebyshev_t(m) * cplx{std::ldexp(1.0, 1 - m)};
}

DivMod poly_divmod(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  if (b.is_zero()) throw Error(Errc::zero_divisor, "division by the zero polynomial");
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {ComplexPolynomial{}, a};

  std::vector<cplx> rem(a.coeffs().begin(), a.coeffs().end());
  std::vector<cplx> quo(static_cast<std::size_t>(da - db + 1), cplx{0.0});
  const cplx lead = b.leading();
  for (int k = da - db; k >= 0; --k) {
    const cplx c = rem[static_cast<std::size_t>(k + db)] / lead;
    quo[static_cast<std::size_t>(k)] = c;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= c * b.coeff(j);
    rem[static_cast<std::size_t>(k + db)] = cplx{0.0};
  }
  rem.resize(static_cast<std::size_t>(std::max(db, 1)));
  if (db == 0) rem[0] = cplx{0.0};
  return {ComplexPolynomial(std::move(quo)), ComplexPolynomial(std::move(rem))};
}

bool coeffs_close(const ComplexPolynomial& a, const ComplexPolynomial& b, double rel,
                  double abs_floor) {
  const int n = std::max(a.degree(), b.degree());
  double scale = 0.0;
  for (int j = 0; j <= n; ++j) scale = std::max({scale, std::abs(a.coeff(j)), std::abs(b.coeff(j))});
  const double tol = std::max(rel * scale, abs_floor);
  for (int j = 0; j <= n; ++j)
    if (std::abs(a.coeff(j) - b.coeff(j)) > tol) return false;
  return true;
}

}  // namespace markovsig
