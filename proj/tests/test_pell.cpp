#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "conical/pell.hpp"

using namespace conical;
using namespace conical::pell;

TEST_CASE("first six solutions") {
  auto sols = enumerate(6);
  REQUIRE(sols.size() == 6);
  const long want_p[6] = {5, 11, 181, 379, 6149, 12875};
  const long want_q[6] = {1, 2, 32, 67, 1087, 2276};
  for (int i = 0; i < 6; ++i) {
    CHECK(sols[i].p == want_p[i]);
    CHECK(sols[i].q == want_q[i]);
    CHECK(sols[i].p * sols[i].p - 32 * sols[i].q * sols[i].q == -7);
  }
}

TEST_CASE("solution formula cross-check with psi = 17 + 12 sqrt(2)") {
  set_bigfloat_bits(256);
  const BigFloat sqrt2 = sqrt(BigFloat(2));
  const BigFloat psi = 17 + 12 * sqrt2;
  for (const auto& s : enumerate(10)) {
    // q = ((4 sqrt2 + 5 sigma) psi^alpha + (4 sqrt2 - 5 sigma) psi^-alpha) / (8 sqrt2).
    // Our enumeration indexes both classes from their base solution at
    // alpha = 0; the closed formula reaches the (11,2) class at alpha = 1.
    int alpha = s.alpha + (s.sigma < 0 ? 1 : 0);
    BigFloat pa = pow(psi, alpha);
    BigFloat sg = s.sigma;
    BigFloat q_pred = ((4 * sqrt2 + 5 * sg) * pa + (4 * sqrt2 - 5 * sg) / pa) / (8 * sqrt2);
    BigFloat diff = abs(q_pred - BigFloat(s.q.get_str()));
    CHECK(diff < 1e-40);
  }
}

TEST_CASE("candidate derivation for the named cases") {
  auto sols = enumerate(4);
  auto c1 = to_candidate(sols[0]);
  CHECK(c1.m1 == 1);
  CHECK(c1.m2 == 0);
  CHECK((c1.eps[0] == 0 && c1.eps[1] == 0 && c1.eps[2] == 0));
  CHECK(c1.k0 == 1);
  CHECK(c1.N == 2);
  CHECK(c1.trivial());

  auto c2 = to_candidate(sols[1]);
  CHECK(c2.m1 == 1);
  CHECK(c2.m2 == 0);
  CHECK((c2.eps[0] == 1 && c2.eps[1] == 1 && c2.eps[2] == 1));
  CHECK(c2.N == 5);
  CHECK(c2.trivial());

  auto c3 = to_candidate(sols[2]);
  CHECK(c3.m1 == 31);
  CHECK(c3.m2 == 13);
  CHECK((c3.eps[0] == 1 && c3.eps[1] == 1 && c3.eps[2] == 0));
  CHECK(c3.k0 == 16);
  CHECK(c3.N == 90);
  CHECK(c3.nu_order == 27);
  CHECK(!c3.trivial());

  auto c4 = to_candidate(sols[3]);
  CHECK(c4.m1 == 67);
  CHECK(c4.m2 == 27);
  CHECK((c4.eps[0] == 0 && c4.eps[1] == 0 && c4.eps[2] == 1));
  CHECK(c4.N == 189);
  CHECK(c4.k0 == 34);
}

TEST_CASE("pell equation constraint holds for every candidate") {
  for (const auto& s : enumerate_until_q(Int(1000000))) {
    auto c = to_candidate(s);
    // N^2 + N - 8 (m1+eps1)^2 + 2 = 0 exactly
    Int N(c.N), q(c.m1 + c.eps[0]);
    CHECK(N * N + N - 8 * q * q + 2 == 0);
    // round trip through (q, N)
    CHECK(c.q == q);
    CHECK(Int(2 * (c.m1 + c.m2)) + c.eps[0] + c.eps[1] + c.eps[2] == N);
    if (!c.trivial()) {
      double nu = double(c.nu_order) / std::sqrt(double(c.N) * (double(c.N) + 1.0));
      CHECK(nu < 0.304);
    }
  }
}

TEST_CASE("quotient bound values and monotone decrease") {
  auto sols = enumerate(8);
  CHECK(quotient_bound(to_candidate(sols[2])) == make_rat(33, 180));
  CHECK(quotient_bound(to_candidate(sols[3])) == make_rat(68, 378));
  CHECK(quotient_bound(to_candidate(sols[3])) < make_rat(33, 180));
  // decreases along each class
  Rat prev_plus = make_rat(1, 1), prev_minus = make_rat(1, 1);
  for (const auto& s : sols) {
    auto c = to_candidate(s);
    if (c.trivial()) continue;
    Rat v = quotient_bound(c);
    Rat& prev = s.sigma > 0 ? prev_plus : prev_minus;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("exclusion of the first nontrivial candidate") {
  auto sols = enumerate(3);
  auto rep = exclusion_check(to_candidate(sols[2]), 256);
  set_bigfloat_bits(256);
  CHECK(rep.nu < BigFloat("0.304"));
  CHECK(rep.theta_at_nu_cap >= BigFloat("0.5818"));
  CHECK(rep.theta_at_target > rep.theta_at_nu_cap);  // theta decreases in nu
  CHECK(rep.phase_bound <= BigFloat(33) / 180 * const_pi<BigFloat>());
  CHECK(rep.cor53_bound <= BigFloat("0.002"));
  CHECK(rep.margin >= BigFloat("0.003"));
  CHECK(rep.excluded);
  CHECK(rep.zero_cross_checked);
  CHECK(rep.zero_below_target);
}

TEST_CASE("second nontrivial candidate also has its zero certified below 1/sqrt(3)") {
  auto sols = enumerate(4);
  auto rep = exclusion_check(to_candidate(sols[3]), 256);  // N = 189 <= 400
  CHECK(rep.excluded);
  CHECK(rep.zero_cross_checked);
  CHECK(rep.zero_below_target);
}

TEST_CASE("trivial candidates are rejected by precondition") {
  auto sols = enumerate(2);
  CHECK_THROWS_AS(exclusion_check(to_candidate(sols[0]), 256), PreconditionViolation);
  CHECK_THROWS_AS(exclusion_check(to_candidate(sols[1]), 256), PreconditionViolation);
}

TEST_CASE("enumerate_until_q stops at the cap") {
  auto sols = enumerate_until_q(Int(100));
  REQUIRE(sols.size() == 4);
  CHECK(sols.back().q == 67);
}
