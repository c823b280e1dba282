#include <immintrin.h>

#include <limits>
#include <vector>

#include "backends.hpp"

namespace markovsig::kernels::avx2 {

namespace {

void partial_fraction(std::span<const double> lambdas, std::span<const cplx> residues,
                      std::span<const cplx> poles, std::span<double> out_re,
                      std::span<double> out_im) {
  const std::size_t n = lambdas.size();
  const std::size_t m = poles.size();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d lam = _mm256_loadu_pd(lambdas.data() + i);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    for (std::size_t k = 0; k < m; ++k) {
      const __m256d a = _mm256_sub_pd(lam, _mm256_set1_pd(poles[k].real()));
      const __m256d b = _mm256_set1_pd(-poles[k].imag());
      const __m256d den = _mm256_add_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
      const __m256d inv = _mm256_div_pd(one, den);
      const __m256d ar = _mm256_set1_pd(residues[k].real());
      const __m256d ai = _mm256_set1_pd(residues[k].imag());
      const __m256d re = _mm256_add_pd(_mm256_mul_pd(ar, a), _mm256_mul_pd(ai, b));
      const __m256d im = _mm256_sub_pd(_mm256_mul_pd(ai, a), _mm256_mul_pd(ar, b));
      acc_re = _mm256_add_pd(acc_re, _mm256_mul_pd(re, inv));
      acc_im = _mm256_add_pd(acc_im, _mm256_mul_pd(im, inv));
    }
    _mm256_storeu_pd(out_re.data() + i, acc_re);
    _mm256_storeu_pd(out_im.data() + i, acc_im);
  }
  if (i < n)
    scalar::kTable.partial_fraction(lambdas.subspan(i), residues, poles, out_re.subspan(i),
                                    out_im.subspan(i));
}

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

cplx markov_sum(std::span<const double> atoms, std::span<const double> weights, cplx z) {
  const std::size_t n = atoms.size();
  const __m256d zr = _mm256_set1_pd(z.real());
  const __m256d b = _mm256_set1_pd(-z.imag());
  const __m256d b2 = _mm256_mul_pd(b, b);
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d a = _mm256_sub_pd(_mm256_loadu_pd(atoms.data() + j), zr);
    const __m256d w = _mm256_loadu_pd(weights.data() + j);
    const __m256d inv = _mm256_div_pd(w, _mm256_add_pd(_mm256_mul_pd(a, a), b2));
    re = _mm256_add_pd(re, _mm256_mul_pd(a, inv));
    im = _mm256_sub_pd(im, _mm256_mul_pd(b, inv));
  }
  cplx acc{hsum(re), hsum(im)};
  if (j < n) acc += scalar::kTable.markov_sum(atoms.subspan(j), weights.subspan(j), z);
  return acc;
}

// Candidate ordering matches the scalar reference: single atoms first, then
// pairs in lexicographic (lo, hi) order; the earliest minimum wins.
struct Candidate {
  double value;
  bool single;
  std::size_t lo, hi;
};

bool before(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.single != b.single) return a.single;
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.hi < b.hi;
}

PairMin pair_envelope_min(std::span<const double> xs, std::span<const double> values,
                          double target) {
  const double inf = std::numeric_limits<double>::infinity();
  const std::size_t n = xs.size();
  std::size_t split = 0;
  while (split < n && xs[split] < target) ++split;
  std::size_t upper = split;

  Candidate best{inf, false, 0, 0};
  while (upper < n && xs[upper] == target) {
    Candidate c{values[upper], true, upper, upper};
    if (before(c, best)) best = c;
    ++upper;
  }

  __m256d lane_best = _mm256_set1_pd(inf);
  __m256d lane_lo = _mm256_setzero_pd();
  __m256d lane_hi = _mm256_setzero_pd();
  const __m256d tgt = _mm256_set1_pd(target);
  const std::size_t vec_end = upper + ((n - upper) / 4) * 4;
  for (std::size_t i = 0; i < split; ++i) {
    const __m256d xi = _mm256_set1_pd(xs[i]);
    const __m256d vi = _mm256_set1_pd(values[i]);
    const __m256d num = _mm256_sub_pd(tgt, xi);
    const __m256d ii = _mm256_set1_pd(static_cast<double>(i));
    for (std::size_t j = upper; j < vec_end; j += 4) {
      const __m256d xj = _mm256_loadu_pd(xs.data() + j);
      const __m256d vj = _mm256_loadu_pd(values.data() + j);
      const __m256d t = _mm256_div_pd(num, _mm256_sub_pd(xj, xi));
      const __m256d v = _mm256_add_pd(vi, _mm256_mul_pd(_mm256_sub_pd(vj, vi), t));
      const __m256d mask = _mm256_cmp_pd(v, lane_best, _CMP_LT_OQ);
      const double jd = static_cast<double>(j);
      const __m256d jj = _mm256_setr_pd(jd, jd + 1.0, jd + 2.0, jd + 3.0);
      lane_best = _mm256_blendv_pd(lane_best, v, mask);
      lane_lo = _mm256_blendv_pd(lane_lo, ii, mask);
      lane_hi = _mm256_blendv_pd(lane_hi, jj, mask);
    }
    for (std::size_t j = vec_end; j < n; ++j) {
      const double t = (target - xs[i]) / (xs[j] - xs[i]);
      Candidate c{values[i] + (values[j] - values[i]) * t, false, i, j};
      if (before(c, best)) best = c;
    }
  }

  alignas(32) double bv[4], bl[4], bh[4];
  _mm256_store_pd(bv, lane_best);
  _mm256_store_pd(bl, lane_lo);
  _mm256_store_pd(bh, lane_hi);
  for (int l = 0; l < 4; ++l) {
    if (bv[l] == inf) continue;
    Candidate c{bv[l], false, static_cast<std::size_t>(bl[l]), static_cast<std::size_t>(bh[l])};
    if (before(c, best)) best = c;
  }
  return {best.value, best.lo, best.hi};
}

}  // namespace

const KernelTable kTable{&partial_fraction, &markov_sum, &pair_envelope_min};

}  // namespace markovsig::kernels::avx2
