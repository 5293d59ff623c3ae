// AVX2 lanes of the batch kernels. Compiled with -mavx2 -ffp-contract=off in
// its own translation unit; callers must check avx2_available() first. The
// operation sequence mirrors the scalar reference exactly (no FMA), so both
// implementations produce bit-identical results.

#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace conical::kernels::detail {

namespace {

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// Applies the shared rescale policy to (pcur, pprev, e) lanes.
inline void rescale(__m256d& pcur, __m256d& pprev, __m256i& e, bool with_prev) {
  const __m256d huge = _mm256_set1_pd(kHuge);
  const __m256d tiny = _mm256_set1_pd(kTiny);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d down = _mm256_set1_pd(kDown);
  const __m256d up = _mm256_set1_pd(kUp);
  const __m256i shift = _mm256_set1_epi64x(kShift);

  const __m256d acur = abs_pd(pcur);
  const __m256d over = _mm256_cmp_pd(acur, huge, _CMP_GT_OQ);

  __m256d under = _mm256_and_pd(_mm256_cmp_pd(pcur, _mm256_setzero_pd(), _CMP_NEQ_OQ),
                                _mm256_cmp_pd(acur, tiny, _CMP_LT_OQ));
  if (with_prev)
    under = _mm256_and_pd(under, _mm256_cmp_pd(abs_pd(pprev), tiny, _CMP_LT_OQ));
  under = _mm256_andnot_pd(over, under);

  const __m256d factor =
      _mm256_blendv_pd(_mm256_blendv_pd(one, up, under), down, over);
  pcur = _mm256_mul_pd(pcur, factor);
  if (with_prev) pprev = _mm256_mul_pd(pprev, factor);

  e = _mm256_add_epi64(e, _mm256_and_si256(_mm256_castpd_si256(over), shift));
  e = _mm256_sub_epi64(e, _mm256_and_si256(_mm256_castpd_si256(under), shift));
}

}  // namespace

void plm_scaled_batch_avx2(int ell, int m, const double* x, std::size_t n, double* mant,
                           int64_t* e2) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d omx2 = _mm256_mul_pd(_mm256_sub_pd(one, xv), _mm256_add_pd(one, xv));
    const __m256d t = _mm256_sqrt_pd(omx2);

    __m256d pmm = one;
    __m256i e = _mm256_setzero_si256();
    __m256d dummy = _mm256_setzero_pd();
    for (int j = 1; j <= m; ++j) {
      pmm = _mm256_mul_pd(pmm, _mm256_mul_pd(_mm256_set1_pd(double(2 * j - 1)), t));
      rescale(pmm, dummy, e, false);
    }

    __m256d pcur = pmm;
    if (ell > m) {
      __m256d pprev = pmm;
      pcur = _mm256_mul_pd(_mm256_mul_pd(xv, _mm256_set1_pd(double(2 * m + 1))), pmm);
      for (int l = m + 2; l <= ell; ++l) {
        const __m256d a = _mm256_mul_pd(_mm256_set1_pd(double(2 * l - 1)), xv);
        const __m256d num = _mm256_sub_pd(_mm256_mul_pd(a, pcur),
                                          _mm256_mul_pd(_mm256_set1_pd(double(l - 1 + m)), pprev));
        const __m256d pnext = _mm256_div_pd(num, _mm256_set1_pd(double(l - m)));
        pprev = pcur;
        pcur = pnext;
        rescale(pcur, pprev, e, true);
      }
    }
    _mm256_storeu_pd(mant + i, pcur);
    _mm256_storeu_si256((__m256i*)(e2 + i), e);
  }
  if (i < n) plm_scaled_batch_scalar(ell, m, x + i, n - i, mant + i, e2 + i);
}

void wkb_amp_bound_batch_avx2(double h, double eta, const double* x, std::size_t n, double* amp,
                              double* bound) {
  const double c = 0.5 * h / (eta * (eta * eta));
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d etav = _mm256_set1_pd(eta);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d ratio = _mm256_div_pd(xv, etav);
    const __m256d rad = _mm256_sub_pd(one, _mm256_mul_pd(ratio, ratio));
    const __m256d s = _mm256_sqrt_pd(_mm256_sqrt_pd(rad));
    const __m256d a = _mm256_div_pd(one, s);
    const __m256d a2 = _mm256_mul_pd(a, a);
    const __m256d a4 = _mm256_mul_pd(a2, a2);
    const __m256d a6 = _mm256_mul_pd(a4, a2);
    const __m256d a7 = _mm256_mul_pd(a6, a);
    _mm256_storeu_pd(amp + i, a);
    __m256d t = _mm256_mul_pd(cv, abs_pd(xv));
    t = _mm256_mul_pd(t, _mm256_sub_pd(one, _mm256_mul_pd(xv, xv)));
    _mm256_storeu_pd(bound + i, _mm256_mul_pd(t, a7));
  }
  if (i < n) wkb_amp_bound_batch_scalar(h, eta, x + i, n - i, amp + i, bound + i);
}

}  // namespace conical::kernels::detail
