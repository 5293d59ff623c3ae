#ifndef CONICAL_PELL_HPP
#define CONICAL_PELL_HPP

#include <string>
#include <vector>

#include "conical/bigfloat.hpp"
#include "conical/rational.hpp"

namespace conical::pell {

/// Solution of p^2 - 32 q^2 = -7, tagged with its class sign and how many
/// times the fundamental unit was applied to the base solution of that class.
struct PellSolution {
  Int p, q;
  int alpha;  // unit applications (0 for the base solutions)
  int sigma;  // +1 for the (5,1) class, -1 for the (11,2) class
};

/// First `count` solutions ascending by p, generated from the base classes
/// (5,1) and (11,2) by (p,q) -> (17p+96q, 3p+17q); every output is verified
/// against the defining equation exactly.
std::vector<PellSolution> enumerate(int count);

/// All solutions with q <= qmax, ascending.
std::vector<PellSolution> enumerate_until_q(const Int& qmax);

/// Candidate parameters derived from a Pell solution: q = m1+eps1 with m1
/// odd, eps1 = eps2, N = (p-1)/2 = 2|m|+|eps|, k0 = (m1+1)/2.
struct ExclusionCandidate {
  long m1, m2;
  int eps[3];
  long k0;
  long N;
  long nu_order;  // 2 m2 + eps2 + eps3, the Legendre order in the t->0 limit
  Int p, q;
  bool trivial() const { return N < 90; }
};

/// Throws Infeasible when the derived m2 would be negative.
ExclusionCandidate to_candidate(const PellSolution& sol);

/// (m1+eps1+1) / (4|m|+2|eps|) as an exact rational; asserts <= 33/180 for
/// nontrivial candidates.
Rat quotient_bound(const ExclusionCandidate& cand);

struct ExclusionReport {
  ExclusionCandidate cand;
  unsigned precision_bits;
  BigFloat nu;
  BigFloat theta_at_target;      // theta(1/sqrt(3)) at the candidate's nu
  BigFloat theta_at_nu_cap;      // theta(1/sqrt(3)) at nu = 0.304
  BigFloat phase_bound;          // h (k0 - (1+(-1)^eps1)/4) pi
  BigFloat cor53_bound;          // (h/2) (l - m - 2 k0 + 0.42)^-1
  BigFloat legacy_bound;         // (h/2) (2 m1 + eps1 - 2 k0)^-1
  BigFloat margin;               // theta_at_target - phase_bound - cor53_bound
  bool excluded;
  bool zero_cross_checked;       // exact-zero comparison ran (N <= 400)
  bool zero_below_target;        // certified zeta_k0 < 1/sqrt(3) strictly
  std::string zero_enclosure_hi; // decimal of the enclosure's upper end
};

/// The full endpoint comparison at the requested precision. Throws
/// PreconditionViolation for the two trivial solutions and
/// PrecisionInsufficient when doubling the precision moves theta by more
/// than a quarter of the margin.
ExclusionReport exclusion_check(const ExclusionCandidate& cand, unsigned precision_bits);

}  // namespace conical::pell

#endif
