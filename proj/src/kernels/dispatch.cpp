#include <atomic>
#include <cmath>
#include <vector>

#include "conical/errors.hpp"
#include "kernels_internal.hpp"

namespace conical::kernels {

namespace {

std::atomic<Impl> g_forced{Impl::Auto};

bool use_avx2() {
  Impl f = g_forced.load(std::memory_order_relaxed);
  if (f == Impl::Scalar) return false;
  if (f == Impl::Avx2) return true;
  return avx2_available();
}

}  // namespace

bool avx2_available() {
#if defined(CONICAL_WITH_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

void force_impl(Impl impl) {
  if (impl == Impl::Avx2 && !avx2_available())
    throw Error("kernels: AVX2 forced but not available on this CPU");
  g_forced.store(impl, std::memory_order_relaxed);
}

Impl current_impl() { return use_avx2() ? Impl::Avx2 : Impl::Scalar; }

const char* impl_name() { return use_avx2() ? "avx2" : "scalar"; }

void plm_scaled_batch(int ell, int m, const double* x, std::size_t n, double* mant, int64_t* e2) {
#ifdef CONICAL_WITH_AVX2
  if (use_avx2()) {
    detail::plm_scaled_batch_avx2(ell, m, x, n, mant, e2);
    return;
  }
#endif
  detail::plm_scaled_batch_scalar(ell, m, x, n, mant, e2);
}

void wkb_amp_bound_batch(double h, double eta, const double* x, std::size_t n, double* amp,
                         double* bound) {
#ifdef CONICAL_WITH_AVX2
  if (use_avx2()) {
    detail::wkb_amp_bound_batch_avx2(h, eta, x, n, amp, bound);
    return;
  }
#endif
  detail::wkb_amp_bound_batch_scalar(h, eta, x, n, amp, bound);
}

void pbar_batch(int ell, int m, const double* x, std::size_t n, double* out) {
  const bool even = (ell - m) % 2 == 0;
  Scaled norm;
  double extra = 1.0;
  if (even) {
    norm = plm_scaled(ell, m, 0.0);
  } else {
    // P'(0) = (ell+m) P_(ell-1)^m(0) from (1-x^2) P' = (ell+m) P_(ell-1) - ell x P.
    norm = plm_scaled(ell - 1, m, 0.0);
    norm.mant *= double(ell + m);
    extra = std::sqrt(double(ell) * (ell + 1) - double(m) * m);
  }

  std::vector<double> mant(n);
  std::vector<int64_t> e2(n);
  plm_scaled_batch(ell, m, x, n, mant.data(), e2.data());
  for (std::size_t i = 0; i < n; ++i) {
    int64_t de = e2[i] - norm.e2;
    double v = extra * (mant[i] / norm.mant);
    if (de > 2000)
      out[i] = v * HUGE_VAL;
    else if (de < -2000)
      out[i] = 0.0;
    else
      out[i] = std::ldexp(v, (int)de);
  }
}

}  // namespace conical::kernels
