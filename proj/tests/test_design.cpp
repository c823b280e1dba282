#include <doctest.h>

#include <cmath>
#include <random>

#include "markovsig/design.hpp"
#include "markovsig/error.hpp"
#include "markovsig/geometry.hpp"

using namespace markovsig;

namespace {

bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

PoleSet poles(std::vector<cplx> z) { return PoleSet::create(std::move(z)); }

std::vector<cplx> dielectric_points() {
  std::vector<cplx> z;
  for (cplx w : {cplx{1, 1}, cplx{0.5, 0.3}, cplx{2, 0.5}}) z.push_back(2.0 + cplx{0, 1} / w);
  return z;
}

PoleSet random_poles(std::mt19937_64& rng, int m, double min_d) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<cplx> z;
  while (static_cast<int>(z.size()) < m) {
    const cplx c{u(rng), u(rng)};
    if (segment_distance(c) < min_d) continue;
    bool far = true;
    for (cplx o : z) far = far && std::abs(o - c) > 0.05;
    if (far) z.push_back(c);
  }
  return PoleSet::create(z);
}

// p(l) = sum_k alpha_k q(l) / (l - z_k)
ComplexPolynomial numerator_from_residues(const SignalDesign& d) {
  const ComplexPolynomial q = d.poles.q();
  ComplexPolynomial p;
  for (std::size_t k = 0; k < d.alphas.size(); ++k)
    p += d.alphas[k] * poly_divmod(q, ComplexPolynomial::linear(d.poles[k])).quotient;
  return p;
}

void check_conjugate_pairing(const SignalDesign& d) {
  REQUIRE(d.poles.conjugation_closed());
  for (std::size_t k = 0; k < d.poles.size(); ++k) {
    const std::size_t j = *d.poles.conjugate_of(k);
    CHECK(near(d.alphas[j], std::conj(d.alphas[k]), 1e-10 * std::max(1.0, std::abs(d.alphas[k]))));
  }
}

}  // namespace

TEST_CASE("PoleSet validation") {
  CHECK_THROWS_AS(PoleSet::create({}), Error);
  try {
    PoleSet::create({2.0, 3.0, 2.0});
    FAIL("expected duplicate_points");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::duplicate_points);
    CHECK(e.index() == 2u);
  }
  try {
    PoleSet::create({2.0, 0.5});
    FAIL("expected point_on_segment");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::point_on_segment);
    CHECK(e.index() == 1u);
  }
  std::vector<cplx> many;
  for (int k = 0; k < 49; ++k) many.push_back(cplx{3.0 + k, 1.0});
  CHECK_THROWS_AS(PoleSet::create(many), Error);
  many.pop_back();
  CHECK_NOTHROW(PoleSet::create(many));
  const PoleSet s = poles({{2, 1}, {-3, 0.5}});
  CHECK(s.d_min() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("design_unit single pole") {
  const SignalDesign d = design_unit(poles({2.0}));
  REQUIRE(d.alphas.size() == 1);
  CHECK(near(d.alphas[0], -2.0, 1e-14));
  CHECK(d.epsilon == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(d.epsilon_observed - 1.0) <= 1e-10);
  CHECK(std::abs(d.lambda_star - 1.0) <= 1e-10);
  CHECK(d.convergent);
}

TEST_CASE("design_unit conjugate pair") {
  const cplx z{2.5, 0.5};
  const SignalDesign d = design_unit(poles({z, std::conj(z)}));
  CHECK(near(d.alphas[1], std::conj(d.alphas[0]), 1e-12));
}

TEST_CASE("design_unit on the dielectric frequencies") {
  const std::vector<cplx> z = dielectric_points();
  CHECK(near(z[0], {2.5, 0.5}, 1e-15));
  CHECK(near(z[1], {2.0 + 0.3 / 0.34, 0.5 / 0.34}, 1e-14));
  CHECK(near(z[1], {2.88235, 1.47059}, 1e-5));
  CHECK(near(z[2], {2.11765, 0.47059}, 1e-5));
  const SignalDesign d = design_unit(poles(z));
  const double dmin = std::abs(z[2] - 1.0);
  CHECK(d.poles.d_min() == doctest::Approx(dmin).epsilon(1e-15));
  CHECK(d.epsilon == doctest::Approx(2.0 / std::pow(2.0 * dmin, 3)).epsilon(1e-14));
  CHECK(d.epsilon_observed <= d.epsilon + 1e-9);
}

TEST_CASE("design_unit flags d_min <= 1/2 without failing") {
  const SignalDesign d = design_unit(poles({{0.0, 0.4}, {0.5, -0.45}}));
  CHECK_FALSE(d.convergent);
  CHECK_FALSE(d.warnings.empty());
  CHECK(d.epsilon_observed <= d.epsilon + 1e-9);
}

TEST_CASE("design_moments single pole, n = 1") {
  const SignalDesign d = design_moments(poles({2.0}), 1);
  REQUIRE(d.gammas.size() == 2);
  CHECK(near(d.gammas[0], 2.0, 1e-14));
  CHECK(d.gammas[1] == cplx{1.0});
  CHECK(near(d.alphas[0], -3.5, 1e-14));
  CHECK(d.epsilon == doctest::Approx(0.5));
  CHECK(std::abs(d.epsilon_observed - 0.5) <= 1e-10);
  CHECK(std::abs(d.lambda_star - 1.0) <= 1e-10);
}

TEST_CASE("design_moments with n = 0 reproduces design_unit") {
  const PoleSet p = poles(dielectric_points());
  const SignalDesign a = design_unit(p), b = design_moments(p, 0);
  for (std::size_t k = 0; k < p.size(); ++k)
    CHECK(near(a.alphas[k], b.alphas[k], 1e-12 * std::abs(a.alphas[k])));
  CHECK(a.epsilon == doctest::Approx(b.epsilon).epsilon(1e-15));
}

TEST_CASE("design_moments reconstructs the monic Chebyshev polynomial") {
  const SignalDesign d = design_moments(poles({2.0, 3.0}), 1);
  const ComplexPolynomial r(d.gammas);
  const ComplexPolynomial p = numerator_from_residues(d);
  const ComplexPolynomial back = d.poles.q() * r - p;
  const ComplexPolynomial t3 = monic_cheb(3);
  for (int j = 0; j <= 3; ++j) CHECK(near(back.coeff(j), t3.coeff(j), 1e-10 * 6.0));
}

TEST_CASE("design_moments degree guard") {
  CHECK_THROWS_AS(design_moments(poles({2.0}), 64), Error);
  CHECK_THROWS_AS(design_moments(poles({2.0}), -1), Error);
}

TEST_CASE("design_frequency_target single pole gives alpha = 1") {
  for (cplx z0 : {cplx{0.0, 2.0}, cplx{3.0, -1.0}, cplx{-1.5, 0.2}}) {
    const SignalDesign d = design_frequency_target(poles({{2.0, 1.0}}), z0);
    CHECK(near(d.alphas[0], 1.0, 1e-13));
    CHECK(d.epsilon_observed <= d.epsilon + 1e-9);
  }
}

TEST_CASE("design_frequency_target conjugate symmetry and divisibility") {
  const cplx z{2.5, 0.5};
  const SignalDesign d = design_frequency_target(poles({z, std::conj(z), 3.0}), 1.8);
  check_conjugate_pairing(d);
  const cplx q0 = d.poles.q()(*d.z0);
  CHECK(std::abs(q0 - *d.b_m * cheb_eval(2, *d.z0)) <= 1e-10 * std::abs(q0));
}

TEST_CASE("frequency-target residues: both closed forms agree") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const PoleSet p = random_poles(rng, 2 + trial % 5, 0.6);
    const cplx z0{0.3, -0.9};
    const SignalDesign d = design_frequency_target(p, z0);
    const int m = static_cast<int>(p.size());
    cplx q0{1.0};
    for (cplx zj : p.points()) q0 *= z0 - zj;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const cplx second = -cheb_eval(m - 1, p[k]) * q0 /
                          (cheb_eval(m - 1, z0) * (p[k] - z0) * p.node_product(k));
      CHECK(near(d.alphas[k], second, 1e-9 * std::abs(second)));
    }
  }
}

TEST_CASE("target modes reject bad target points") {
  const PoleSet p = poles({{2.0, 1.0}, {-2.0, 1.0}, {0.0, 2.0}});
  try {
    design_frequency_target(p, 0.3);
    FAIL("expected point_on_segment");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::point_on_segment);
  }
  try {
    design_frequency_target(p, {0.0, 2.0});
    FAIL("expected duplicate_points");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::duplicate_points);
  }
  // T_2 vanishes at 1/sqrt(2); a point just off the segment is degenerate.
  try {
    design_frequency_target(p, {1.0 / std::sqrt(2.0), 1e-11});
    FAIL("expected degenerate_target");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degenerate_target);
    CHECK(is_numeric(e.code()));
  }
  CHECK_THROWS_AS(design_derivative_target(p, {1.0 / std::sqrt(2.0), 1e-11}), Error);
}

TEST_CASE("design_derivative_target builds a double root at z0") {
  const PoleSet p = poles({2.0, 3.0});
  const cplx z0{2.5, 1.0};
  const SignalDesign d = design_derivative_target(p, z0);
  const ComplexPolynomial q = p.q();
  const ComplexPolynomial one_minus =
      ComplexPolynomial::constant(1.0) - *d.alpha0 * ComplexPolynomial::linear(z0);
  const ComplexPolynomial h = q * one_minus - *d.b_m * chebyshev_t(1);
  CHECK(std::abs(h(z0)) <= 1e-9);
  CHECK(std::abs(h.derivative()(z0)) <= 1e-9);
  CHECK(d.epsilon_observed <= d.epsilon + 1e-9);
  // Point masses: the combination tracks d/dz 1/(l0 - z) at z0 = 1/(l0 - z0)^2.
  for (double l0 : {-1.0, -0.3, 0.2, 1.0}) {
    cplx s = *d.alpha0 / (l0 - z0);
    for (std::size_t k = 0; k < p.size(); ++k) s += d.alphas[k] / (l0 - p[k]);
    CHECK(std::abs(s - 1.0 / ((l0 - z0) * (l0 - z0))) <= d.epsilon + 1e-12);
  }
}

TEST_CASE("design_with_zero_factor") {
  const PoleSet p = poles(dielectric_points());
  const SignalDesign u = design_unit(p);
  const SignalDesign one = design_with_zero_factor(p, ComplexPolynomial::constant(1.0));
  for (std::size_t k = 0; k < p.size(); ++k)
    CHECK(near(one.alphas[k], u.alphas[k], 1e-12 * std::abs(u.alphas[k])));
  CHECK(one.certificate == Certificate::numerical);

  const SignalDesign drop = design_with_zero_factor(p, zero_factor_single(p[1]));
  CHECK(std::abs(drop.alphas[1]) <= 1e-14);
  CHECK(drop.epsilon_observed <= drop.epsilon + 1e-9);

  const cplx z{2.5, 0.5};
  const PoleSet c = poles({z, std::conj(z), 2.2, 3.1});
  const SignalDesign pair = design_with_zero_factor(c, zero_factor_conjugate({0.4, 1.5}));
  check_conjugate_pairing(pair);

  CHECK_THROWS_AS(design_with_zero_factor(poles({2.0}), zero_factor_single(3.0)), Error);
  CHECK_THROWS_AS(design_with_zero_factor(p, ComplexPolynomial({1.0, 2.0})), Error);
}

TEST_CASE("stieltjes coefficients") {
  const SignalDesign d = design_frequency_target(poles({3.0}), 2.0);
  REQUIRE(near(d.alphas[0], 1.0, 1e-13));
  const StieltjesCoefficients s = stieltjes_coefficients(d);
  CHECK(near(s.xi[0], 0.5, 1e-13));
  CHECK_FALSE(s.xi0.has_value());

  SignalDesign zero = d;
  zero.alphas.assign(zero.alphas.size(), cplx{0.0});
  for (cplx x : stieltjes_coefficients(zero).xi) CHECK(x == cplx{0.0});

  const SignalDesign dd = design_derivative_target(poles({2.0, 3.0}), {2.5, 1.0});
  const StieltjesCoefficients sd = stieltjes_coefficients(dd);
  REQUIRE(sd.xi0.has_value());
  CHECK(near(*sd.xi0, *dd.alpha0 - 1.0 / (1.0 - cplx{2.5, 1.0}), 1e-15));
  CHECK_THROWS_AS(stieltjes_coefficients(design_unit(poles({2.0}))), Error);
}

TEST_CASE("two-path residue equality") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const PoleSet p = random_poles(rng, 1 + trial % 8, 0.6);
    const SignalDesign d = design_unit(p);
    const ComplexPolynomial num = p.q() - monic_cheb(static_cast<int>(p.size()));
    const std::vector<cplx> other = residues_from_numerator(num, p);
    for (std::size_t k = 0; k < p.size(); ++k)
      CHECK(std::abs(d.alphas[k] - other[k]) <= 1e-9 * std::abs(other[k]));
  }
}

TEST_CASE("certificate dominates observation in every mode") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const PoleSet p = random_poles(rng, 1 + trial % 6, 0.3);
    CHECK(design_unit(p).epsilon_observed <= design_unit(p).epsilon + 1e-9);
    const SignalDesign mo = design_moments(p, trial % 3);
    CHECK(mo.epsilon_observed <= mo.epsilon + 1e-9);
    const cplx z0{0.2 - 0.01 * trial, -1.3};
    const SignalDesign ft = design_frequency_target(p, z0);
    CHECK(ft.epsilon_observed <= ft.epsilon + 1e-9);
    const SignalDesign dt = design_derivative_target(p, z0);
    CHECK(dt.epsilon_observed <= dt.epsilon + 1e-9);
    if (p.size() >= 2) {
      const SignalDesign zf = design_with_zero_factor(p, zero_factor_single({0.1, 2.0}));
      CHECK(zf.epsilon_observed <= zf.epsilon + 1e-9);
    }
  }
}

TEST_CASE("observed deviation decays on a circle of poles") {
  double prev = 1e300;
  for (int m = 2; m <= 10; ++m) {
    std::vector<cplx> z;
    for (int k = 1; k <= m; ++k) z.push_back(2.0 + 0.5 * std::polar(1.0, 2 * M_PI * k / m));
    const SignalDesign d = design_unit(poles(z));
    CHECK(d.epsilon_observed <= prev * (1 + 1e-12));
    CHECK(d.epsilon_observed <= 2.0 / std::pow(2.0 * d.poles.d_min(), m) + 1e-12);
    prev = d.epsilon_observed;
  }
}

TEST_CASE("partial-fraction identity") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const SignalDesign d = design_moments(random_poles(rng, 1 + trial % 7, 0.6), trial % 3);
    const ComplexPolynomial p = -1.0 * poly_divmod(monic_cheb(static_cast<int>(d.poles.size()) + d.n),
                                                   d.poles.q()).remainder;
    const ComplexPolynomial q = d.poles.q();
    for (int i = 0; i < 50; ++i) {
      const double x = u(rng);
      cplx s{0.0};
      for (std::size_t k = 0; k < d.alphas.size(); ++k) s += d.alphas[k] / (x - d.poles[k]);
      const cplx ref = p(x) / q(x);
      CHECK(std::abs(s - ref) <= 1e-9 * std::abs(ref));
    }
  }
}

TEST_CASE("moments-mode exactness on random pole sets") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 30; ++trial) {
    const SignalDesign d = design_moments(random_poles(rng, 1 + trial % 6, 0.6), 1 + trial % 3);
    const ComplexPolynomial back = d.poles.q() * ComplexPolynomial(d.gammas) - numerator_from_residues(d);
    const ComplexPolynomial t = monic_cheb(static_cast<int>(d.poles.size()) + d.n);
    double scale = 1.0;
    for (cplx c : d.poles.q().coeffs()) scale = std::max(scale, std::abs(c));
    for (int j = 0; j <= t.degree(); ++j) CHECK(std::abs(back.coeff(j) - t.coeff(j)) <= 1e-10 * scale);
  }
}

TEST_CASE("conjugation closure across modes") {
  std::mt19937_64 rng(46);
  std::uniform_real_distribution<double> u(0.6, 3.0), s(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> z;
    for (int k = 0; k < 2; ++k) {
      const cplx c{s(rng), u(rng)};
      z.push_back(c);
      z.push_back(std::conj(c));
    }
    z.push_back(1.0 + u(rng));
    const PoleSet p = poles(z);
    check_conjugate_pairing(design_unit(p));
    check_conjugate_pairing(design_moments(p, 2));
    check_conjugate_pairing(design_frequency_target(p, 1.0 + u(rng) + 3.0));
  }
}
