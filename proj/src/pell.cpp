#include "conical/pell.hpp"

#include <algorithm>

#include "conical/legendre.hpp"

namespace conical::pell {

namespace {

void verify(const PellSolution& s) {
  if (s.p * s.p - 32 * s.q * s.q != -7)
    throw Error("pell: generated pair fails p^2 - 32 q^2 = -7");
}

PellSolution advance(const PellSolution& s) {
  // norm-1 unit (17, 3) of x^2 - 32 y^2 = 1
  PellSolution next{17 * s.p + 96 * s.q, 3 * s.p + 17 * s.q, s.alpha + 1, s.sigma};
  verify(next);
  return next;
}

template <class Keep>
std::vector<PellSolution> merge_classes(Keep keep) {
  PellSolution a{5, 1, 0, +1};
  PellSolution b{11, 2, 0, -1};
  verify(a);
  verify(b);
  std::vector<PellSolution> out;
  while (true) {
    PellSolution& next = (a.p < b.p) ? a : b;
    if (!keep(next, out.size())) break;
    out.push_back(next);
    next = advance(next);
  }
  return out;
}

}  // namespace

std::vector<PellSolution> enumerate(int count) {
  if (count < 1) throw PreconditionViolation("pell::enumerate: count must be >= 1");
  return merge_classes([&](const PellSolution&, size_t have) { return (int)have < count; });
}

std::vector<PellSolution> enumerate_until_q(const Int& qmax) {
  return merge_classes([&](const PellSolution& s, size_t) { return s.q <= qmax; });
}

ExclusionCandidate to_candidate(const PellSolution& sol) {
  ExclusionCandidate c;
  c.p = sol.p;
  c.q = sol.q;
  if (!sol.q.fits_slong_p() || !sol.p.fits_slong_p())
    throw PreconditionViolation("to_candidate: solution too large for candidate parameters");
  const long q = sol.q.get_si();
  const long N = (sol.p.get_si() - 1) / 2;

  // m1 odd and m1 + eps1 = q fix (m1, eps1); eps2 = eps1; eps3 is the parity
  // of N; the rest of the degree goes into m2.
  long m1, e1;
  if (q % 2 == 1) {
    m1 = q;
    e1 = 0;
  } else {
    m1 = q - 1;
    e1 = 1;
  }
  const long e3 = N % 2;
  const long twice_m2 = N - 2 * m1 - 2 * e1 - e3;
  if (twice_m2 < 0 || twice_m2 % 2 != 0)
    throw Infeasible("to_candidate: no admissible m2 for this solution");
  c.m1 = m1;
  c.m2 = twice_m2 / 2;
  c.eps[0] = (int)e1;
  c.eps[1] = (int)e1;
  c.eps[2] = (int)e3;
  c.k0 = (m1 + 1) / 2;
  c.N = N;
  c.nu_order = 2 * c.m2 + c.eps[1] + c.eps[2];
  return c;
}

Rat quotient_bound(const ExclusionCandidate& cand) {
  Rat value = make_rat(Int(cand.m1 + cand.eps[0] + 1), Int(2 * cand.N));
  if (!cand.trivial() && value > make_rat(33, 180))
    throw Error("quotient_bound: value exceeds 33/180 for a nontrivial candidate");
  return value;
}

namespace {

BigFloat theta_for(const ExclusionCandidate& cand, const BigFloat& nu, const BigFloat& x) {
  legendre::WkbFrameT<BigFloat> fr;
  BigFloat lam = BigFloat(cand.N) * BigFloat(cand.N + 1);
  fr.h = 1 / sqrt(lam);
  fr.nu = nu;
  fr.eta = sqrt(1 - nu * nu);
  return legendre::phase_theta(fr, x);
}

ExclusionReport run_at_bits(const ExclusionCandidate& cand, unsigned bits) {
  set_bigfloat_bits(bits);
  ExclusionReport rep;
  rep.cand = cand;
  rep.precision_bits = bits;

  BigFloat lam = BigFloat(cand.N) * BigFloat(cand.N + 1);
  BigFloat h = 1 / sqrt(lam);
  rep.nu = BigFloat(cand.nu_order) / sqrt(lam);
  if (!(rep.nu < BigFloat("0.304")))
    throw Error("exclusion_check: nu bound 0.304 violated");

  const BigFloat x = 1 / sqrt(BigFloat(3));
  rep.theta_at_target = theta_for(cand, rep.nu, x);
  rep.theta_at_nu_cap = theta_for(cand, BigFloat("0.304"), x);

  const BigFloat pi = const_pi<BigFloat>();
  BigFloat parity_shift = (cand.eps[0] % 2 == 0) ? BigFloat(1) / 2 : BigFloat(0);
  rep.phase_bound = h * (BigFloat(cand.k0) - parity_shift) * pi;

  const long lm = cand.N - cand.nu_order;  // ell - m = 2 m1 + eps1 + eps2
  rep.cor53_bound = h / 2 / (BigFloat(lm - 2 * cand.k0) + BigFloat("0.42"));
  const long legacy_den = 2 * cand.m1 + cand.eps[0] - 2 * cand.k0;
  rep.legacy_bound = legacy_den > 0 ? h / 2 / BigFloat(legacy_den) : BigFloat(0);

  rep.margin = rep.theta_at_target - rep.phase_bound - rep.cor53_bound;
  rep.excluded = rep.margin > 0;
  rep.zero_cross_checked = false;
  rep.zero_below_target = false;
  return rep;
}

}  // namespace

ExclusionReport exclusion_check(const ExclusionCandidate& cand, unsigned precision_bits) {
  if (cand.trivial())
    throw PreconditionViolation(
        "exclusion_check: the two surviving small solutions are out of scope");
  if (precision_bits < 64) throw PreconditionViolation("exclusion_check: need >= 64 bits");

  ExclusionReport rep = run_at_bits(cand, precision_bits);
  ExclusionReport rep2 = run_at_bits(cand, precision_bits * 2);
  set_bigfloat_bits(precision_bits);
  BigFloat drift = abs(rep.theta_at_target - rep2.theta_at_target);
  if (!(drift * 4 < abs(rep.margin)))
    throw PrecisionInsufficient("exclusion_check: margin below evaluation error");

  if (cand.N <= 400) {
    legendre::LegendreSpec spec((int)cand.N, (int)cand.nu_order);
    auto zeros = legendre::zeros_exact(spec, make_rat(Int(1), Int("100000000000000000000")));
    const auto& enc = zeros[cand.k0 - 1];
    rep.zero_cross_checked = true;
    // zeta < 1/sqrt(3) iff hi^2 < 1/3, exactly.
    rep.zero_below_target = enc.hi * enc.hi < make_rat(1, 3);
    rep.zero_enclosure_hi = enc.hi.get_str(10);
  }
  return rep;
}

}  // namespace conical::pell
