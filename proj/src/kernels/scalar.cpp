#include <limits>

#include "backends.hpp"

namespace markovsig::kernels::scalar {

namespace {

void partial_fraction(std::span<const double> lambdas, std::span<const cplx> residues,
                      std::span<const cplx> poles, std::span<double> out_re,
                      std::span<double> out_im) {
  const std::size_t n = lambdas.size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc_re = 0.0, acc_im = 0.0;
    for (std::size_t k = 0; k < poles.size(); ++k) {
      // residue / (a + ib) with a = lambda - Re z, b = -Im z
      const double a = lambdas[i] - poles[k].real();
      const double b = -poles[k].imag();
      const double inv = 1.0 / (a * a + b * b);
      const double ar = residues[k].real(), ai = residues[k].imag();
      acc_re += (ar * a + ai * b) * inv;
      acc_im += (ai * a - ar * b) * inv;
    }
    out_re[i] = acc_re;
    out_im[i] = acc_im;
  }
}

cplx markov_sum(std::span<const double> atoms, std::span<const double> weights, cplx z) {
  double re = 0.0, im = 0.0;
  const double b = -z.imag();
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    const double a = atoms[j] - z.real();
    const double inv = weights[j] / (a * a + b * b);
    re += a * inv;
    im -= b * inv;
  }
  return {re, im};
}

PairMin pair_envelope_min(std::span<const double> xs, std::span<const double> values,
                          double target) {
  PairMin best{std::numeric_limits<double>::infinity(), 0, 0};
  const std::size_t n = xs.size();
  std::size_t split = 0;  // first index with xs >= target
  while (split < n && xs[split] < target) ++split;
  std::size_t upper = split;  // first index with xs > target
  while (upper < n && xs[upper] == target) {
    if (values[upper] < best.value) best = {values[upper], upper, upper};
    ++upper;
  }
  for (std::size_t i = 0; i < split; ++i) {
    const double xi = xs[i], vi = values[i];
    const double num = target - xi;
    for (std::size_t j = upper; j < n; ++j) {
      const double t = num / (xs[j] - xi);
      const double v = vi + (values[j] - vi) * t;
      if (v < best.value) best = {v, i, j};
    }
  }
  return best;
}

}  // namespace

const KernelTable kTable{&partial_fraction, &markov_sum, &pair_envelope_min};

}  // namespace markovsig::kernels::scalar
