#include "conical/legendre.hpp"

#include <algorithm>
#include <deque>

namespace conical::legendre {

std::vector<Int> poly_part(const LegendreSpec& spec) {
  const int ell = spec.ell, m = spec.m;
  const int deg = ell - m;
  std::vector<Int> p(deg + 1, Int(0));
  // (x^2-1)^ell = sum_i C(ell,i) (-1)^(ell-i) x^(2i); differentiate ell+m times.
  Int binom;
  for (int i = 0; i <= ell; ++i) {
    int e = 2 * i - (ell + m);
    if (e < 0) continue;
    mpz_bin_uiui(binom.get_mpz_t(), ell, i);
    Int c = binom;
    for (int f = 2 * i; f > e; --f) c *= f;  // (2i)! / e!
    if ((ell - i) % 2 != 0) c = -c;
    p[e] = c;
  }
  return p;
}

Rat eval_poly_part(const std::vector<Int>& p, const Rat& x) {
  Rat acc(0);
  for (int e = (int)p.size() - 1; e >= 0; --e) {
    acc *= x;
    if (p[e] != 0) acc += p[e];
  }
  return acc;
}

double eval_P(const LegendreSpec& spec, double x) {
  kernels::Scaled s = kernels::plm_scaled(spec.ell, spec.m, x);
  if (s.e2 > 2000) return s.mant * HUGE_VAL;
  if (s.e2 < -2000) return 0.0;
  return std::ldexp(s.mant, (int)s.e2);
}

double normalized_P(const LegendreSpec& spec, double x) {
  double out;
  kernels::pbar_batch(spec.ell, spec.m, &x, 1, &out);
  return out;
}

WkbValue wkb_approx(const WkbFrameT<double>& fr, const LegendreSpec& spec, double x) {
  double ratio = x / fr.eta;
  double rad = 1 - ratio * ratio;
  if (!(rad > 0)) throw DomainViolation("wkb_approx: |x| must be < eta");
  double amp = 1.0 / std::sqrt(std::sqrt(rad));
  double phase = phase_theta(fr, x) / fr.h;
  double W = amp * (spec.even_parity() ? std::cos(phase) : std::sin(phase));
  double amp7 = amp * amp;          // rad^(-1/2)
  amp7 = amp7 * amp7 * amp7 * amp;  // rad^(-7/4)
  double bound = 0.5 * fr.h / (fr.eta * fr.eta * fr.eta) * std::fabs(x) * (1 - x * x) * amp7;
  return {W, bound};
}

namespace {

// g(y) with ptilde(x) = g(x^2): polynomial part with the parity factor x
// stripped and exponents halved. All deg(g) roots are simple, in (0,1).
std::vector<Int> even_part(const std::vector<Int>& p, int parity) {
  std::vector<Int> g;
  for (size_t e = parity; e < p.size(); e += 2) g.push_back(p[e]);
  return g;
}

// Sign of g(num^2 / 2^(2k)); exact integer Horner.
int sign_at_dyadic_sq(const std::vector<Int>& g, const Int& num, unsigned k) {
  const Int y_num = num * num;
  Int acc = g.back();
  Int t;
  for (int e = (int)g.size() - 2; e >= 0; --e) {
    acc *= y_num;
    if (g[e] != 0) {
      t = g[e];
      mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), 2 * k * (unsigned)((int)g.size() - 1 - e));
      acc += t;
    }
  }
  return sgn(acc);
}

Int shifted(const Int& v, unsigned bits) {
  Int r;
  mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), bits);
  return r;
}

// Endpoints share the denominator 2^k; signs at both are nonzero.
struct Bracket {
  Int lo, hi;
  unsigned k;
  int sign_lo, sign_hi;
};

Rat dyadic_rat(const Int& num, unsigned k) { return make_rat(num, shifted(Int(1), k)); }

Rat bracket_width(const Bracket& b) { return dyadic_rat(b.hi - b.lo, b.k); }

// The midpoint num/2^k hit the root exactly. Roots are simple, so a small
// symmetric dyadic interval around it has opposite endpoint signs.
Bracket enclose_exact_hit(const std::vector<Int>& g, const Int& num, unsigned k, const Rat& width) {
  for (unsigned j = 1; j <= 512; ++j) {
    unsigned kk = k + j;
    Int base = shifted(num, j);
    Bracket b{base - 1, base + 1, kk, 0, 0};
    if (bracket_width(b) > width) continue;
    b.sign_lo = sign_at_dyadic_sq(g, b.lo, kk);
    b.sign_hi = sign_at_dyadic_sq(g, b.hi, kk);
    if (b.sign_lo * b.sign_hi < 0) return b;
  }
  throw Error("zeros_exact: failed to certify an exactly-hit root");
}

void bisect_to_width(const std::vector<Int>& g, Bracket& b, const Rat& width) {
  while (bracket_width(b) > width) {
    Int mid = b.lo + b.hi;  // at denominator 2^(k+1)
    unsigned k1 = b.k + 1;
    int sm = sign_at_dyadic_sq(g, mid, k1);
    if (sm == 0) {
      b = enclose_exact_hit(g, mid, k1, width);
      return;
    }
    b.lo *= 2;
    b.hi *= 2;
    b.k = k1;
    if (sm == b.sign_lo)
      b.lo = mid;
    else
      b.hi = mid;
  }
}

}  // namespace

std::vector<ZeroEnclosure> zeros_exact(const LegendreSpec& spec, const Rat& width) {
  if (width <= 0) throw PreconditionViolation("zeros_exact: width must be positive");
  const int count = spec.zero_count();
  if (count == 0) return {};

  const std::vector<Int> p = poly_part(spec);
  const std::vector<Int> g = even_part(p, spec.even_parity() ? 0 : 1);

  // Seed cut points between WKB-approximated zeros. Certification below never
  // trusts the seeds; bad seeds only cost extra splits.
  const unsigned seed_k = 24;
  const WkbFrame fr = make_frame(spec);
  std::vector<double> approx(count);
  for (int k = 1; k <= count; ++k) approx[k - 1] = approx_zero(fr, spec, k);

  std::vector<Int> cuts;
  cuts.push_back(Int(0));
  for (int i = 0; i + 1 < count; ++i) {
    double c = 0.5 * (approx[i] + approx[i + 1]);
    cuts.push_back(Int((long)std::floor(std::ldexp(c, (int)seed_k))));
  }
  cuts.push_back(shifted(Int(1), seed_k));

  std::vector<int> cut_signs(cuts.size());
  for (size_t i = 0; i < cuts.size(); ++i) {
    cut_signs[i] = sign_at_dyadic_sq(g, cuts[i], seed_k);
    for (int tries = 0; cut_signs[i] == 0 && tries < 8; ++tries) {
      cuts[i] += 1;  // roots are simple and isolated; step off the root
      cut_signs[i] = sign_at_dyadic_sq(g, cuts[i], seed_k);
    }
    if (cut_signs[i] == 0) throw Error("zeros_exact: could not move a seed cut off a root");
  }

  std::deque<Bracket> pending;
  std::vector<Bracket> found;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    Bracket b{cuts[i], cuts[i + 1], seed_k, cut_signs[i], cut_signs[i + 1]};
    if (b.lo >= b.hi) continue;
    if (b.sign_lo * b.sign_hi < 0)
      found.push_back(b);
    else
      pending.push_back(b);
  }

  // Worklist: split sign-preserving intervals until every root is bracketed.
  // The total root count in (0,1) equals deg(g), so when `found` reaches it
  // the remaining intervals are root-free and can be dropped.
  size_t guard = 0;
  while ((int)found.size() < count) {
    if (pending.empty() || ++guard > 200000)
      throw Error("zeros_exact: root isolation failed to converge");
    Bracket b = pending.front();
    pending.pop_front();
    Int mid = b.lo + b.hi;
    unsigned k1 = b.k + 1;
    int sm = sign_at_dyadic_sq(g, mid, k1);
    Int lo_s = shifted(b.lo, 1), hi_s = shifted(b.hi, 1);
    for (int tries = 0; sm == 0 && tries < 64; ++tries) {
      mid = 2 * mid + 1;
      k1 += 1;
      lo_s *= 2;
      hi_s *= 2;
      sm = sign_at_dyadic_sq(g, mid, k1);
    }
    if (sm == 0) throw Error("zeros_exact: could not split off an exact root");
    Bracket left{lo_s, mid, k1, b.sign_lo, sm};
    Bracket right{mid, hi_s, k1, sm, b.sign_hi};
    for (Bracket* half : {&left, &right}) {
      if (half->lo >= half->hi) continue;
      if (half->sign_lo * half->sign_hi < 0)
        found.push_back(*half);
      else
        pending.push_back(*half);
    }
  }

  for (auto& b : found) bisect_to_width(g, b, width);

  std::sort(found.begin(), found.end(), [](const Bracket& a, const Bracket& b) {
    return shifted(a.lo, b.k) < shifted(b.lo, a.k);
  });

  std::vector<ZeroEnclosure> out;
  out.reserve(found.size());
  for (size_t i = 0; i < found.size(); ++i)
    out.push_back({(int)i + 1, dyadic_rat(found[i].lo, found[i].k),
                   dyadic_rat(found[i].hi, found[i].k)});
  return out;
}

PhaseGap zero_phase_gap_from(const LegendreSpec& spec, const ZeroEnclosure& enc) {
  const WkbFrame fr = make_frame(spec);
  double zeta = to_double(enc.mid());
  double gap = std::fabs(phase_theta(fr, zeta) - zero_target_phase(fr, spec, enc.k));
  double bound = 0.5 * fr.h / (spec.ell - spec.m - 2 * enc.k + 0.42);
  return {gap, bound};
}

PhaseGap zero_phase_gap(const LegendreSpec& spec, int k, const Rat& enclosure_width) {
  if (k < 1 || k > spec.zero_count())
    throw IndexOutOfRange("zero_phase_gap: k outside 1..floor((ell-m)/2)");
  auto enc = zeros_exact(spec, enclosure_width);
  return zero_phase_gap_from(spec, enc[k - 1]);
}

}  // namespace conical::legendre
