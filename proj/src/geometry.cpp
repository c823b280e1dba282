#include "markovsig/geometry.hpp"

#include <cmath>
#include <string>

#include "markovsig/error.hpp"

namespace markovsig {

double segment_distance(cplx z) noexcept {
  const double x = z.real();
  if (x >= -1.0 && x <= 1.0) return std::abs(z.imag());
  return std::abs(z - cplx{x > 0.0 ? 1.0 : -1.0});
}

cplx joukowski_preimage(cplx z0) {
  if (segment_distance(z0) <= kSegmentTolerance)
    throw Error(Errc::degenerate_point, "Joukowski preimage of a point on [-1,1] has modulus 1");
  // The two roots of zeta^2 - 2 z0 zeta + 1 = 0 are reciprocal; take the outer one.
  const cplx s = std::sqrt(z0 * z0 - 1.0);
  const cplx plus = z0 + s;
  const cplx minus = z0 - s;
  return std::abs(plus) >= std::abs(minus) ? plus : minus;
}

double joukowski_radius(cplx z0) { return std::abs(joukowski_preimage(z0)); }

RegionSpec RegionSpec::make(cplx z0, double r) {
  if (!(r > 0.0)) throw Error(Errc::invalid_argument, "region parameter r must be positive");
  const double R = joukowski_radius(z0);
  if (!(r < R))
    throw Error(Errc::invalid_argument,
                "region parameter r=" + std::to_string(r) + " must be below R=" + std::to_string(R));
  return RegionSpec{z0, r, R};
}

bool in_region_H(cplx z, const RegionSpec& spec) noexcept {
  const double x = z.real();
  const double dist = std::abs(z - spec.z0);
  if (x <= -1.0 && dist <= spec.r * std::abs(z + 1.0)) return true;
  if (x >= -1.0 && x <= 1.0 && dist <= spec.r * std::abs(z.imag())) return true;
  if (x >= 1.0 && dist <= spec.r * std::abs(z - 1.0)) return true;
  return false;
}

std::vector<cplx> region_boundary_samples(const RegionSpec& spec, const RegionBox& box) {
  const int n = box.resolution;
  if (n < 2) throw Error(Errc::invalid_argument, "region resolution must be at least 2");
  const double hx = (box.x_max - box.x_min) / (n - 1);
  const double hy = (box.y_max - box.y_min) / (n - 1);
  auto point = [&](int i, int j) { return cplx{box.x_min + i * hx, box.y_min + j * hy}; };

  std::vector<char> inside(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) inside[static_cast<std::size_t>(j) * n + i] = in_region_H(point(i, j), spec);

  auto at = [&](int i, int j) -> bool {
    // The box edge is not part of the region boundary.
    if (i < 0 || j < 0 || i >= n || j >= n) return true;
    return inside[static_cast<std::size_t>(j) * n + i];
  };
  std::vector<cplx> out;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (at(i, j) && (!at(i - 1, j) || !at(i + 1, j) || !at(i, j - 1) || !at(i, j + 1)))
        out.push_back(point(i, j));
  return out;
}

}  // namespace markovsig
