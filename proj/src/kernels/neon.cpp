#include <arm_neon.h>

#include <limits>

#include "backends.hpp"

namespace markovsig::kernels::neon {

namespace {

void partial_fraction(std::span<const double> lambdas, std::span<const cplx> residues,
                      std::span<const cplx> poles, std::span<double> out_re,
                      std::span<double> out_im) {
  const std::size_t n = lambdas.size();
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t lam = vld1q_f64(lambdas.data() + i);
    float64x2_t acc_re = vdupq_n_f64(0.0);
    float64x2_t acc_im = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < poles.size(); ++k) {
      const float64x2_t a = vsubq_f64(lam, vdupq_n_f64(poles[k].real()));
      const float64x2_t b = vdupq_n_f64(-poles[k].imag());
      const float64x2_t den = vaddq_f64(vmulq_f64(a, a), vmulq_f64(b, b));
      const float64x2_t inv = vdivq_f64(one, den);
      const float64x2_t ar = vdupq_n_f64(residues[k].real());
      const float64x2_t ai = vdupq_n_f64(residues[k].imag());
      const float64x2_t re = vaddq_f64(vmulq_f64(ar, a), vmulq_f64(ai, b));
      const float64x2_t im = vsubq_f64(vmulq_f64(ai, a), vmulq_f64(ar, b));
      acc_re = vaddq_f64(acc_re, vmulq_f64(re, inv));
      acc_im = vaddq_f64(acc_im, vmulq_f64(im, inv));
    }
    vst1q_f64(out_re.data() + i, acc_re);
    vst1q_f64(out_im.data() + i, acc_im);
  }
  if (i < n)
    scalar::kTable.partial_fraction(lambdas.subspan(i), residues, poles, out_re.subspan(i),
                                    out_im.subspan(i));
}

cplx markov_sum(std::span<const double> atoms, std::span<const double> weights, cplx z) {
  const std::size_t n = atoms.size();
  const float64x2_t zr = vdupq_n_f64(z.real());
  const float64x2_t b = vdupq_n_f64(-z.imag());
  const float64x2_t b2 = vmulq_f64(b, b);
  float64x2_t re = vdupq_n_f64(0.0);
  float64x2_t im = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t a = vsubq_f64(vld1q_f64(atoms.data() + j), zr);
    const float64x2_t w = vld1q_f64(weights.data() + j);
    const float64x2_t inv = vdivq_f64(w, vaddq_f64(vmulq_f64(a, a), b2));
    re = vaddq_f64(re, vmulq_f64(a, inv));
    im = vsubq_f64(im, vmulq_f64(b, inv));
  }
  cplx acc{vaddvq_f64(re), vaddvq_f64(im)};
  if (j < n) acc += scalar::kTable.markov_sum(atoms.subspan(j), weights.subspan(j), z);
  return acc;
}

// The pair scan is dominated by the division; the scalar loop is kept here.
PairMin pair_envelope_min(std::span<const double> xs, std::span<const double> values,
                          double target) {
  return scalar::kTable.pair_envelope_min(xs, values, target);
}

}  // namespace

const KernelTable kTable{&partial_fraction, &markov_sum, &pair_envelope_min};

}  // namespace markovsig::kernels::neon
