#ifndef CONICAL_LEGENDRE_HPP
#define CONICAL_LEGENDRE_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "conical/bigfloat.hpp"
#include "conical/errors.hpp"
#include "conical/kernels.hpp"
#include "conical/rational.hpp"

namespace conical::legendre {

using conical::Int;
using conical::Rat;

struct LegendreSpec {
  int ell;
  int m;
  LegendreSpec(int ell, int m) : ell(ell), m(m) {
    if (m < 0 || m > ell) throw PreconditionViolation("LegendreSpec: need 0 <= m <= ell");
  }
  int zero_count() const { return (ell - m) / 2; }  // zeros in (0,1)
  bool even_parity() const { return (ell - m) % 2 == 0; }
};

/// Semiclassical frame: h = 1/sqrt(ell(ell+1)), nu = m*h, eta = sqrt(1-nu^2).
template <class F>
struct WkbFrameT {
  F h, nu, eta;
};

using WkbFrame = WkbFrameT<double>;

template <class F>
WkbFrameT<F> make_frame(int ell, int m) {
  F lam = F(ell) * F(ell + 1);
  F h = 1 / sqrt(lam);
  F nu = F(m) * h;
  return {h, nu, sqrt(1 - nu * nu)};
}

inline WkbFrame make_frame(const LegendreSpec& s) { return make_frame<double>(s.ell, s.m); }

/// Integer-coefficient polynomial part p(x) = (d/dx)^(ell+m) (x^2-1)^ell,
/// densely indexed by exponent 0..ell-m (entries of the wrong parity are 0).
/// P_ell^m(x) = (1-x^2)^(m/2) p(x) / (2^ell ell!).
std::vector<Int> poly_part(const LegendreSpec& spec);

/// Exact evaluation of the polynomial part at a rational point.
Rat eval_poly_part(const std::vector<Int>& p, const Rat& x);

/// P_ell^m(x) in double precision (upward recurrence; may overflow to inf for
/// very large ell, where the normalized form below is the right tool).
double eval_P(const LegendreSpec& spec, double x);

/// Generic-precision recurrence evaluation (no rescaling; meant for wide
/// exponent types such as BigFloat).
template <class F>
F eval_P_generic(int ell, int m, const F& x) {
  F omx2 = (1 - x) * (1 + x);
  F pmm = 1;
  F t = sqrt(omx2);
  for (int i = 1; i <= m; ++i) pmm *= F(2 * i - 1) * t;
  if (ell == m) return pmm;
  F pprev = pmm;
  F pcur = x * F(2 * m + 1) * pmm;
  for (int l = m + 2; l <= ell; ++l) {
    F pnext = (F(2 * l - 1) * x * pcur - F(l - 1 + m) * pprev) / F(l - m);
    pprev = pcur;
    pcur = pnext;
  }
  return pcur;
}

/// Normalized value: P/P(0) for even parity, sqrt(ell(ell+1)-m^2) P/P'(0)
/// for odd parity.
double normalized_P(const LegendreSpec& spec, double x);

/// Certified enclosure of the k-th zero in (0,1): exact sign changes of the
/// polynomial part across [lo, hi], enclosures pairwise disjoint.
struct ZeroEnclosure {
  int k;  // 1-based
  Rat lo, hi;
  Rat mid() const { return (lo + hi) / 2; }
  Rat width() const { return hi - lo; }
};

/// All floor((ell-m)/2) zeros of P_ell^m in (0,1), each enclosed to the
/// requested width. Exact integer arithmetic end to end.
std::vector<ZeroEnclosure> zeros_exact(const LegendreSpec& spec, const Rat& width);

/// Phase: theta(x) = atan(u) - nu atan(nu u), u = (x/eta)/sqrt(1-(x/eta)^2).
/// Strictly increasing, theta(0) = 0, sup over (0,eta) equal to (1-nu)pi/2.
template <class F>
F phase_theta(const WkbFrameT<F>& fr, const F& x) {
  F ratio = x / fr.eta;
  F rad = 1 - ratio * ratio;
  if (!(rad > 0)) throw DomainViolation("phase_theta: |x| must be < eta");
  F u = ratio / sqrt(rad);
  return atan(u) - fr.nu * atan(fr.nu * u);
}

template <class F>
F phase_sup(const WkbFrameT<F>& fr) {
  return (1 - fr.nu) * const_pi<F>() / 2;
}

/// WKB approximation W and the amplitude-form absolute error bound of the
/// normalized polynomial, valid on (-eta, eta).
struct WkbValue {
  double W;
  double bound;
};
WkbValue wkb_approx(const WkbFrameT<double>& fr, const LegendreSpec& spec, double x);

/// Phase-form error bound (h/2) (1-(x/eta)^2)^(-1/4) / (theta(eta)-theta(|x|)).
/// Proven on [0, eta); extends to negative x because the error is even.
template <class F>
F wkb_error_phase_form(const WkbFrameT<F>& fr, const F& x) {
  F ax = x < 0 ? F(-x) : x;
  F ratio = ax / fr.eta;
  F rad = 1 - ratio * ratio;
  if (!(rad > 0)) throw DomainViolation("wkb_error_phase_form: |x| must be < eta");
  F amp = 1 / sqrt(sqrt(rad));
  return fr.h / 2 * amp / (phase_sup(fr) - phase_theta(fr, ax));
}

/// Target phase of the k-th zero: h (k - (1+(-1)^(ell-m))/4) pi.
template <class F>
F zero_target_phase(const WkbFrameT<F>& fr, const LegendreSpec& spec, int k) {
  F shift = spec.even_parity() ? F(1) / 2 : F(0);
  return fr.h * (F(k) - shift) * const_pi<F>();
}

/// The unique x in (0, eta) with theta(x) equal to the k-th target phase.
/// Exists iff 1 <= k <= floor((ell-m)/2).
template <class F>
F approx_zero(const WkbFrameT<F>& fr, const LegendreSpec& spec, int k) {
  if (k < 1 || k > spec.zero_count())
    throw IndexOutOfRange("approx_zero: k outside 1..floor((ell-m)/2)");
  F target = zero_target_phase(fr, spec, k);
  // Monotone bisection; relative tolerance 1e-14 on the bracket.
  F lo = 0, hi = fr.eta;
  for (int it = 0; it < 2000; ++it) {
    F mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) break;
    F th;
    try {
      th = phase_theta(fr, mid);
    } catch (const DomainViolation&) {
      hi = mid;
      continue;
    }
    if (th < target)
      lo = mid;
    else
      hi = mid;
    if ((hi - lo) <= 1e-14 * hi) break;
  }
  return (lo + hi) / 2;
}

/// |theta(exact zero) - target phase| together with the proven bound
/// (h/2)(ell-m-2k+0.42)^(-1).
struct PhaseGap {
  double gap;
  double bound;
};
PhaseGap zero_phase_gap(const LegendreSpec& spec, int k, const Rat& enclosure_width);

/// Same, reusing an already computed enclosure.
PhaseGap zero_phase_gap_from(const LegendreSpec& spec, const ZeroEnclosure& enc);

}  // namespace conical::legendre

#endif
