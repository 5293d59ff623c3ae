#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conical/harmonics.hpp"
#include "conical/niven.hpp"
#include "conical/poly_core.hpp"

using namespace conical;
using namespace conical::harmonics;

namespace {
const std::vector<double> kDeskA{-1.0, 4.0 / 3.0, 4.0};
const std::vector<Rat> kDeskARat{make_rat(-1), make_rat(4, 3), make_rat(4)};
}  // namespace

TEST_CASE("trivial harmonic: the confocal quadric at xi = 0") {
  auto q = build_Q(kDeskA, {0, 0, 0}, {0.0});
  // K_0(x) = x1^2 - (3/4) x2^2 - (1/4) x3^2, harmonic on A^3
  CHECK(std::fabs(q.expanded.coeff({2, 0, 0}) - 1.0) < 1e-15);
  CHECK(std::fabs(q.expanded.coeff({0, 2, 0}) + 0.75) < 1e-15);
  CHECK(std::fabs(q.expanded.coeff({0, 0, 2}) + 0.25) < 1e-15);
  CHECK(relative_laplacian_residual(q.expanded) < 1e-15);
}

TEST_CASE("empty product: Q = x1 x2 x3") {
  auto q = build_Q(kDeskA, {1, 1, 1}, {});
  CHECK(q.expanded.term_count() == 1);
  CHECK(q.expanded.coeff({1, 1, 1}) == 1.0);
  CHECK(relative_laplacian_residual(q.expanded) == 0.0);
  CHECK(q.C_norm == 1.0);
  REQUIRE(q.P_factor.size() == 1);
  CHECK(q.P_factor[0] == 1.0);
}

TEST_CASE("degree-90 harmonic from the figure family") {
  niven::NivenProblem prob(kDeskA, {1, 1, 0}, {31, 13});
  auto sol = niven::solve(prob, 1e-9);
  auto q = build_Q(kDeskA, prob.eps(), sol.xi);
  CHECK(q.expanded.degree() == 90);
  CHECK(relative_laplacian_residual(q.expanded) <= 1e-9);
  // P_factor is monic with the solved roots
  REQUIRE(q.P_factor.size() == 45);
  CHECK(q.P_factor.back() == 1.0);
  double at_root = 0.0, scale = 0.0, power = 1.0;
  for (int e = 44; e >= 0; --e) at_root = at_root * sol.xi[7] + q.P_factor[e];
  for (int e = 0; e <= 44; ++e, power *= std::fabs(sol.xi[7])) scale += std::fabs(q.P_factor[e]) * power;
  CHECK(std::fabs(at_root) < 1e-12 * scale);
}

TEST_CASE("bracket values equal the Niven residuals") {
  niven::NivenProblem prob(kDeskA, {0, 0, 0}, {2, 1});
  auto sol = niven::solve(prob, 1e-12);
  auto q = build_Q(kDeskA, prob.eps(), sol.xi);
  auto brackets = laplacian_residual_factored(q);
  auto res = niven::residual(prob, sol.xi);
  REQUIRE(brackets.size() == res.size());
  for (size_t k = 0; k < brackets.size(); ++k) {
    CHECK(brackets[k] == res[k]);
    CHECK(std::fabs(brackets[k]) <= 1e-12);
  }
}

TEST_CASE("deltaQ two ways: direct expansion vs bracket factorization") {
  // perturb xi so the brackets are visibly nonzero, then compare lap(Q)
  // against 2 sum_k bracket_k * Q / K_(xi_k) termwise (the factorization
  // carries an overall factor 2: lap K_xi = 2 sum_j 1/(xi - a_j)).
  niven::NivenProblem prob(kDeskA, {1, 0, 0}, {1, 1});
  auto sol = niven::solve(prob, 1e-12);
  std::vector<double> xi = sol.xi;
  xi[0] += 1e-3;
  xi[1] -= 2e-3;
  auto q = build_Q(kDeskA, prob.eps(), xi);
  auto brackets = laplacian_residual_factored(q);

  HPoly<double> expect(3, q.expanded.degree() - 2);
  for (size_t k = 0; k < xi.size(); ++k) {
    // Q / K_(xi_k) = x^eps * prod_(l != k) K_(xi_l)
    std::vector<double> others;
    for (size_t l = 0; l < xi.size(); ++l)
      if (l != k) others.push_back(xi[l]);
    auto partial = build_Q(kDeskA, prob.eps(), others);
    expect += partial.expanded.scaled(2.0 * brackets[k]);
  }
  HPoly<double> direct = q.expanded.laplacian();
  HPoly<double> diff = direct - expect;
  CHECK(max_abs_coeff(diff) <= 1e-9 * std::max(1.0, max_abs_coeff(direct)));
}

TEST_CASE("brackets respond linearly to perturbations, slope from the Hessian") {
  niven::NivenProblem prob(kDeskA, {0, 0, 0}, {2, 1});
  auto sol = niven::solve(prob, 1e-12);
  auto base = laplacian_residual_factored(build_Q(kDeskA, prob.eps(), sol.xi));
  const double delta = 1e-3;
  auto pe = niven::potential(prob, sol.xi);
  const int n = prob.n();
  for (int j = 0; j < n; ++j) {
    auto xi = sol.xi;
    xi[j] += delta;
    auto moved = laplacian_residual_factored(build_Q(kDeskA, prob.eps(), xi));
    for (int k = 0; k < n; ++k) {
      // d(bracket_k)/d(xi_j) = -hess[k][j]
      double predicted = base[k] - delta * pe.hess[(size_t)k * n + j];
      CHECK(std::fabs(moved[k] - predicted) <= 5e-2 * std::max(1.0, std::fabs(moved[k])));
    }
  }
}

TEST_CASE("eps parity at the coefficient level") {
  niven::NivenProblem prob(kDeskA, {1, 0, 1}, {1, 1});
  auto sol = niven::solve(prob, 1e-12);
  auto q = build_Q(kDeskA, prob.eps(), sol.xi);
  for (int j = 0; j < 3; ++j) {
    HPoly<double> flipped = q.expanded.reflected(j);
    HPoly<double> want = prob.eps()[j] ? q.expanded.scaled(-1.0) : q.expanded;
    CHECK(flipped == want);
  }
}

TEST_CASE("restriction to the cone: exact and numeric division") {
  ConeParams cone(kDeskARat);
  // exact path: xi = (0) harmonic contains K_a as a factor (K_0 = -K_a)
  auto exact = build_Q_exact(kDeskARat, {1, 1, 1}, {Rat(0)});
  auto quot = try_divide_exact(exact, cone.quadric());
  REQUIRE(quot.has_value());
  CHECK(*quot == HPoly<Rat>::monomial(3, {1, 1, 1}, Rat(-1)));

  // numeric remainder for the same polynomial
  auto numer = build_Q(kDeskA, {1, 1, 1}, {0.0});
  auto division = divide_numeric(numer.expanded, to_double_poly(cone.quadric()));
  CHECK(division.remainder_rel <= 1e-12);

  // a generic non-divisible polynomial leaves a visible remainder
  auto off = build_Q(kDeskA, {1, 1, 1}, {0.37});
  CHECK(divide_numeric(off.expanded, to_double_poly(cone.quadric())).remainder_rel > 1e-3);
}

TEST_CASE("conical coordinates of the ones vector") {
  std::vector<double> x{1.0, 1.0, 1.0};
  auto cc = cartesian_to_conical(x, kDeskA);
  CHECK(std::fabs(cc.r - std::sqrt(3.0)) < 1e-14);
  REQUIRE(cc.s.size() == 2);
  CHECK(std::fabs(cc.s[0] - 0.0) < 1e-12);
  CHECK(std::fabs(cc.s[1] - 26.0 / 9.0) < 1e-11);
}

TEST_CASE("coordinate degeneration: s1 -> a2 kills x2") {
  ConicalCoords cc{1.0, {4.0 / 3.0 - 1e-13, 2.0}};
  auto x = conical_to_cartesian(cc, kDeskA, {1, 1, 1});
  CHECK(std::fabs(x[1]) < 1e-5);
}

TEST_CASE("round trip on random positive points") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> ud(0.05, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x{ud(rng), ud(rng), ud(rng)};
    auto cc = cartesian_to_conical(x, kDeskA);
    auto back = conical_to_cartesian(cc, kDeskA, {1, 1, 1});
    for (int j = 0; j < 3; ++j) CHECK(std::fabs(back[j] - x[j]) <= 1e-12 * x[j]);
  }
}

TEST_CASE("interlacing violations are rejected") {
  CHECK_THROWS_AS(conical_to_cartesian({1.0, {2.0, 0.0}}, kDeskA, {1, 1, 1}),
                  InterlacingViolation);
  CHECK_THROWS_AS(cartesian_to_conical({1.0, -1.0, 1.0}, kDeskA), PreconditionViolation);
}

TEST_CASE("gram matrix of the N=2 family") {
  niven::NivenProblem prob(kDeskA, {0, 0, 0}, {1, 0});
  auto sol = niven::solve(prob, 1e-12);
  auto q = build_Q(kDeskA, prob.eps(), sol.xi);
  auto gram = sphere_gram({q.expanded}, 4);
  REQUIRE(gram.size() == 1);
  CHECK(gram[0][0] > 0.0);
}

TEST_CASE("quadrature integrates |x|^2 restricted to the sphere exactly") {
  HPoly<double> r2(3, 2);
  r2.add_term({2, 0, 0}, 1.0);
  r2.add_term({0, 2, 0}, 1.0);
  r2.add_term({0, 0, 2}, 1.0);
  auto gram = sphere_gram({r2}, 4);
  CHECK(std::fabs(gram[0][0] - 4.0 * M_PI) < 1e-12);
}

TEST_CASE("gram rejects mixed degrees and wrong dimension") {
  HPoly<double> a(3, 2), b(3, 4);
  a.add_term({2, 0, 0}, 1.0);
  b.add_term({4, 0, 0}, 1.0);
  CHECK_THROWS_AS(sphere_gram({a, b}, 6), PreconditionViolation);
  HPoly<double> c(4, 2);
  c.add_term({2, 0, 0, 0}, 1.0);
  CHECK_THROWS_AS(sphere_gram({c}, 6), PreconditionViolation);
}

TEST_CASE("qmc gram on S^3 roughly integrates the round quadric") {
  HPoly<double> r2(4, 2);
  for (int j = 0; j < 4; ++j) {
    Mono e(4, 0);
    e[j] = 2;
    r2.add_term(e, 1.0);
  }
  auto qg = sphere_gram_qmc({r2}, 20000);
  // |S^3| = 2 pi^2
  CHECK(std::fabs(qg.gram[0][0] - 2.0 * M_PI * M_PI) < 0.05);
  CHECK(qg.standard_error < 0.05);
}

TEST_CASE("pair count equals the spherical harmonic dimension") {
  for (int d : {3, 4})
    for (int N = 1; N <= 12; ++N)
      CHECK(harmonic_pair_count(d, N) == spherical_harmonic_dim(d, N));
}
