#include "markovsig/extremum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "markovsig/error.hpp"

namespace markovsig {

namespace {

// Local maxima refined per scan; near-ties between separated peaks are
// common for equioscillating deviations.
constexpr std::size_t kPeaksRefined = 8;

}  // namespace

std::vector<double> chebyshev_grid(int nodes) {
  if (nodes < 1) throw Error(Errc::invalid_argument, "grid needs at least one node");
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(nodes) + 2);
  g.push_back(-1.0);
  for (int j = nodes - 1; j >= 0; --j)
    g.push_back(std::cos((2.0 * j + 1.0) * std::numbers::pi / (2.0 * nodes)));
  g.push_back(1.0);
  return g;
}

Extremum golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? Extremum{c, fc} : Extremum{d, fd};
}

Extremum refine_max(std::span<const double> grid, std::span<const double> values,
                    const std::function<double(double)>& f) {
  const std::size_t n = grid.size();
  if (n == 0 || values.size() != n) throw Error(Errc::invalid_argument, "grid/value size mismatch");

  std::vector<std::size_t> peaks;
  for (std::size_t i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || values[i] >= values[i - 1];
    const bool right_ok = i + 1 == n || values[i] >= values[i + 1];
    if (left_ok && right_ok) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) {
    return values[a] != values[b] ? values[a] > values[b] : a < b;
  });
  if (peaks.size() > kPeaksRefined) peaks.resize(kPeaksRefined);

  Extremum best{grid[peaks.front()], values[peaks.front()]};
  for (std::size_t p : peaks) {
    if (p > 0) {
      const Extremum e = golden_max(f, grid[p - 1], grid[p]);
      if (e.value > best.value) best = e;
    }
    if (p + 1 < n) {
      const Extremum e = golden_max(f, grid[p], grid[p + 1]);
      if (e.value > best.value) best = e;
    }
  }
  return best;
}

Extremum maximize_on_segment(const std::function<double(double)>& f, int nodes) {
  const std::vector<double> grid = chebyshev_grid(nodes);
  std::vector<double> values(grid.size());
  std::transform(grid.begin(), grid.end(), values.begin(), f);
  return refine_max(grid, values, f);
}

Extremum minimize_on_segment(const std::function<double(double)>& f, int nodes) {
  auto neg = [&f](double x) { return -f(x); };
  const Extremum e = maximize_on_segment(neg, nodes);
  return {e.arg, -e.value};
}

}  // namespace markovsig
