#ifndef CONICAL_KERNELS_HPP
#define CONICAL_KERNELS_HPP

#include <cstddef>
#include <cstdint>

namespace conical::kernels {

/// Value split as mant * 2^e2 to keep the upward recurrence inside double
/// range for large degrees.
struct Scaled {
  double mant;
  int64_t e2;
};

/// Raw associated Legendre P_ell^m (Rodrigues convention, no Condon-Shortley
/// sign) by upward recurrence in ell at fixed m, with power-of-two rescaling.
/// Requires 0 <= m <= ell and |x| <= 1.
Scaled plm_scaled(int ell, int m, double x);

/// Batch form of plm_scaled. The scalar and the SIMD variants perform the
/// identical IEEE operation sequence, so outputs are bit-equal across
/// implementations.
void plm_scaled_batch(int ell, int m, const double* x, std::size_t n, double* mant, int64_t* e2);

/// Normalized P-bar values: P/P(0) for even ell-m, sqrt(ell(ell+1)-m^2) *
/// P/P'(0) for odd ell-m.
void pbar_batch(int ell, int m, const double* x, std::size_t n, double* out);

/// WKB amplitude (1-(x/eta)^2)^(-1/4) and the amplitude-form error bound
/// (h/2) eta^-3 |x| (1-x^2) (1-(x/eta)^2)^(-7/4) for each x in (-eta, eta).
void wkb_amp_bound_batch(double h, double eta, const double* x, std::size_t n, double* amp,
                         double* bound);

enum class Impl { Auto, Scalar, Avx2 };

/// Overrides runtime dispatch (tests use this to compare variants).
void force_impl(Impl impl);
Impl current_impl();
const char* impl_name();
bool avx2_available();

}  // namespace conical::kernels

#endif
