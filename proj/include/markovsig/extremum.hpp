#pragma once

#include <functional>
#include <span>
#include <vector>

namespace markovsig {

/// Default scan resolution for sup-norm searches on [-1,1].
inline constexpr int kDefaultGridNodes = 4096;

struct Extremum {
  double arg;
  double value;
};

/// `nodes` first-kind Chebyshev nodes plus both endpoints, ascending.
std::vector<double> chebyshev_grid(int nodes);

/// Refine a grid scan of f: golden-section search inside the two grid
/// intervals adjacent to each of the strongest local maxima. `values` holds
/// f on `grid`. Returns the best point seen, grid points included.
Extremum refine_max(std::span<const double> grid, std::span<const double> values,
                    const std::function<double(double)>& f);

/// Maximum of f over [lo, hi] by golden-section search (f unimodal).
Extremum golden_max(const std::function<double(double)>& f, double lo, double hi,
                    double tol = 1e-13);

/// Scan f on chebyshev_grid(nodes) and refine.
Extremum maximize_on_segment(const std::function<double(double)>& f,
                             int nodes = kDefaultGridNodes);
Extremum minimize_on_segment(const std::function<double(double)>& f,
                             int nodes = kDefaultGridNodes);

}  // namespace markovsig
