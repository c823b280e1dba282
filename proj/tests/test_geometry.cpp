#include <doctest.h>

#include <cmath>
#include <random>

#include "markovsig/error.hpp"
#include "markovsig/geometry.hpp"

using namespace markovsig;

namespace {

cplx random_point(std::mt19937_64& rng, double min_distance) {
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (;;) {
    const cplx z{u(rng), u(rng)};
    if (segment_distance(z) > min_distance) return z;
  }
}

}  // namespace

TEST_CASE("segment_distance examples") {
  CHECK(segment_distance(2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(segment_distance({0.5, 0.3}) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(segment_distance({-2.0, 1.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(segment_distance(0.25) == 0.0);
  CHECK(segment_distance({1.0, -0.5}) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("joukowski_radius examples") {
  CHECK(joukowski_radius(1.25) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(joukowski_radius({0.0, 1.0}) == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(joukowski_radius({0.308824, -0.764706}) - 2.061) <= 1e-3);
  const cplx zeta = joukowski_preimage({0.0, 1.0});
  CHECK(std::abs(zeta - cplx{0.0, 1.0 + std::sqrt(2.0)}) <= 1e-14);
}

TEST_CASE("joukowski rejects points on the segment") {
  for (cplx z : {cplx{0.3, 0.0}, cplx{1.0, 0.0}, cplx{-1.0, 1e-13}}) {
    try {
      joukowski_radius(z);
      FAIL("expected degenerate_point");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::degenerate_point);
    }
  }
}

TEST_CASE("in_region_H examples") {
  const cplx z0{0.308824, -0.764706};
  for (double r : {0.1, 0.5, 1.0, 2.0}) CHECK(in_region_H(z0, RegionSpec::make(z0, r)));
  // Far out along the vertical through z0, on z0's side of the real axis.
  for (cplx w : {z0, std::conj(z0)}) {
    const cplx far{w.real(), std::copysign(1e6, w.imag())};
    CHECK(in_region_H(far, RegionSpec::make(w, 1.0)));
  }
  // z0 = 2, z = -2, r = 0.1: only H1 applies (Re z <= -1); |z - z0| = 4 > 0.1 |z + 1| = 0.1.
  const RegionSpec s = RegionSpec::make(2.0, 0.1);
  CHECK_FALSE(in_region_H(-2.0, s));
  CHECK(std::abs(cplx{-2.0} - 2.0) > 0.1 * std::abs(cplx{-2.0} + 1.0));
}

TEST_CASE("RegionSpec validation") {
  CHECK_THROWS_AS(RegionSpec::make(0.0, 1.0), Error);
  CHECK_THROWS_AS(RegionSpec::make({0.0, 1.0}, 0.0), Error);
  CHECK_THROWS_AS(RegionSpec::make(1.25, 2.0), Error);  // r must stay below R = 2
  CHECK_NOTHROW(RegionSpec::make(1.25, 1.9));
}

TEST_CASE("segment_distance is 1-Lipschitz") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3.0, 3.0), s(-0.5, 0.5);
  for (int i = 0; i < 10000; ++i) {
    const cplx a{u(rng), u(rng)};
    const cplx b = a + cplx{s(rng), s(rng)};
    CHECK(std::abs(segment_distance(a) - segment_distance(b)) <= std::abs(a - b) + 1e-15);
  }
}

TEST_CASE("joukowski round trip and lower bound") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 1000; ++i) {
    const cplx z0 = random_point(rng, 0.05);
    const cplx zeta = joukowski_preimage(z0);
    CHECK(std::abs(0.5 * (zeta + 1.0 / zeta) - z0) <= 1e-10);
    const double R = joukowski_radius(z0);
    CHECK(R > 1.0);
    CHECK(segment_distance(z0) >= (R - 1) * (R - 1) / (2 * R) - 1e-12);
  }
}

TEST_CASE("in_region_H is monotone in r") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 1000; ++i) {
    const cplx z0 = random_point(rng, 0.05);
    const double R = joukowski_radius(z0);
    const double r1 = 0.05 + 0.9 * (R - 0.05) * std::uniform_real_distribution<double>(0, 1)(rng);
    const double r2 = r1 + (R - r1) * 0.5;
    const cplx z{u(rng), u(rng)};
    if (in_region_H(z, RegionSpec::make(z0, r1))) CHECK(in_region_H(z, RegionSpec::make(z0, r2)));
  }
}

TEST_CASE("boundary samples lie inside with an outside neighbour") {
  const cplx z0{0.308824, -0.764706};
  const RegionSpec spec = RegionSpec::make(z0, 1.0);
  RegionBox box;
  box.resolution = 120;
  const std::vector<cplx> pts = region_boundary_samples(spec, box);
  CHECK(!pts.empty());
  for (cplx p : pts) CHECK(in_region_H(p, spec));
}
