#ifndef CONICAL_KERNELS_INTERNAL_HPP
#define CONICAL_KERNELS_INTERNAL_HPP

#include "conical/kernels.hpp"

namespace conical::kernels::detail {

// Rescale thresholds shared by all implementations. The scalar and SIMD
// recurrences apply the identical policy each step, so their outputs match
// bit for bit (multiplying by 1.0 is exact).
inline constexpr double kHuge = 0x1p+600;
inline constexpr double kTiny = 0x1p-600;
inline constexpr double kDown = 0x1p-600;
inline constexpr double kUp = 0x1p+600;
inline constexpr int64_t kShift = 600;

void plm_scaled_batch_scalar(int ell, int m, const double* x, std::size_t n, double* mant,
                             int64_t* e2);
void wkb_amp_bound_batch_scalar(double h, double eta, const double* x, std::size_t n, double* amp,
                                double* bound);

void plm_scaled_batch_avx2(int ell, int m, const double* x, std::size_t n, double* mant,
                           int64_t* e2);
void wkb_amp_bound_batch_avx2(double h, double eta, const double* x, std::size_t n, double* amp,
                              double* bound);

}  // namespace conical::kernels::detail

#endif
