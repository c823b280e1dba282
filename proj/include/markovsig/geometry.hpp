#pragma once

#include <vector>

#include "markovsig/types.hpp"

namespace markovsig {

/// Points closer than this to [-1,1] count as lying on the segment.
inline constexpr double kSegmentTolerance = 1e-12;

/// Distance from z to the segment [-1,1].
double segment_distance(cplx z) noexcept;

/// Preimage zeta0 of z0 under z = (zeta + 1/zeta)/2 with |zeta0| > 1.
cplx joukowski_preimage(cplx z0);

/// R = |zeta0|, the Bernstein-ellipse parameter of z0.
double joukowski_radius(cplx z0);

/// Admissible pole region H(r) around a target point z0.
///
/// H(r) is the union of three pieces, one per vertical strip:
///   H1: Re z <= -1 and |z - z0| <= r |z + 1|
///   H2: Re z in [-1,1] and |z - z0| <= r |Im z|
///   H3: Re z >= 1 and |z - z0| <= r |z - 1|
/// Frequency-target designs converge geometrically when every pole lies in
/// H(r) for some r < R. Boundaries count as inside.
struct RegionSpec {
  cplx z0;
  double r;
  double R;

  static RegionSpec make(cplx z0, double r);
};

bool in_region_H(cplx z, const RegionSpec& spec) noexcept;

struct RegionBox {
  double x_min = -3.0, x_max = 3.0;
  double y_min = -3.0, y_max = 3.0;
  int resolution = 200;
};

/// Sample points of the boundary of H(r): grid cells inside the region with
/// at least one 4-neighbour outside.
std::vector<cplx> region_boundary_samples(const RegionSpec& spec, const RegionBox& box);

}  // namespace markovsig
