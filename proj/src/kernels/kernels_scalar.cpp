#include <cmath>

#include "kernels_internal.hpp"

namespace conical::kernels {

namespace detail {

namespace {

Scaled plm_scaled_one(int ell, int m, double x) {
  const double omx2 = (1.0 - x) * (1.0 + x);
  const double t = std::sqrt(omx2);
  double pmm = 1.0;
  int64_t e = 0;
  for (int i = 1; i <= m; ++i) {
    pmm = pmm * (double(2 * i - 1) * t);
    if (std::fabs(pmm) > kHuge) {
      pmm *= kDown;
      e += kShift;
    } else if (pmm != 0.0 && std::fabs(pmm) < kTiny) {
      pmm *= kUp;
      e -= kShift;
    }
  }
  if (ell == m) return {pmm, e};

  double pprev = pmm;
  double pcur = (x * double(2 * m + 1)) * pmm;
  for (int l = m + 2; l <= ell; ++l) {
    const double a = double(2 * l - 1) * x;
    const double b = double(l - 1 + m);
    const double inv = double(l - m);
    double pnext = (a * pcur - b * pprev) / inv;
    pprev = pcur;
    pcur = pnext;
    if (std::fabs(pcur) > kHuge) {
      pcur *= kDown;
      pprev *= kDown;
      e += kShift;
    } else if (pcur != 0.0 && std::fabs(pcur) < kTiny && std::fabs(pprev) < kTiny) {
      pcur *= kUp;
      pprev *= kUp;
      e -= kShift;
    }
  }
  return {pcur, e};
}

}  // namespace

void plm_scaled_batch_scalar(int ell, int m, const double* x, std::size_t n, double* mant,
                             int64_t* e2) {
  for (std::size_t i = 0; i < n; ++i) {
    Scaled s = plm_scaled_one(ell, m, x[i]);
    mant[i] = s.mant;
    e2[i] = s.e2;
  }
}

void wkb_amp_bound_batch_scalar(double h, double eta, const double* x, std::size_t n, double* amp,
                                double* bound) {
  const double c = 0.5 * h / (eta * (eta * eta));
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double ratio = xi / eta;
    const double rad = 1.0 - ratio * ratio;
    const double s = std::sqrt(std::sqrt(rad));
    const double a = 1.0 / s;
    const double a2 = a * a;
    const double a4 = a2 * a2;
    const double a6 = a4 * a2;
    const double a7 = a6 * a;
    amp[i] = a;
    double t = c * std::fabs(xi);
    t = t * (1.0 - xi * xi);
    bound[i] = t * a7;
  }
}

}  // namespace detail

Scaled plm_scaled(int ell, int m, double x) {
  double mant;
  int64_t e2;
  detail::plm_scaled_batch_scalar(ell, m, &x, 1, &mant, &e2);
  return {mant, e2};
}

}  // namespace conical::kernels
