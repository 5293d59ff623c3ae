#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conical/niven.hpp"

using namespace conical;
using namespace conical::niven;

namespace {
const std::vector<double> kDeskA{-1.0, 4.0 / 3.0, 4.0};
}

TEST_CASE("gradient vanishes at the forced xi = 0 solutions") {
  for (int e : {0, 1}) {
    NivenProblem prob(kDeskA, {e, e, e}, {1, 0});
    auto pe = potential(prob, {0.0});
    CHECK(std::fabs(pe.grad[0]) < 1e-14);
    auto sol = solve(prob, 1e-13);
    CHECK(std::fabs(sol.xi[0]) < 1e-13);
    CHECK(sol.region_check);
  }
}

TEST_CASE("band-2 solution hits the cubic root 26/9") {
  NivenProblem prob(kDeskA, {0, 0, 0}, {0, 1});
  auto sol = solve(prob, 1e-13);
  REQUIRE(sol.xi.size() == 1);
  CHECK(std::fabs(sol.xi[0] - 26.0 / 9.0) < 1e-12);
}

TEST_CASE("gradient matches central finite differences") {
  std::mt19937 rng(3);
  NivenProblem prob(kDeskA, {1, 0, 1}, {2, 2});
  auto sol = solve(prob, 1e-12);
  std::uniform_real_distribution<double> nudge(-0.01, 0.01);
  std::vector<double> xi = sol.xi;
  for (auto& v : xi) v += nudge(rng);
  REQUIRE(prob.in_domain(xi));
  auto pe = potential(prob, xi);
  const double h = 1e-6;
  for (size_t k = 0; k < xi.size(); ++k) {
    auto hi = xi, lo = xi;
    hi[k] += h;
    lo[k] -= h;
    double fd = (potential(prob, hi).value - potential(prob, lo).value) / (2 * h);
    CHECK(std::fabs(fd - pe.grad[k]) <= 1e-6 * std::max(1.0, std::fabs(pe.grad[k])));
    // and the gradient is the negated Niven residual
    CHECK(pe.grad[k] == -residual(prob, xi)[k]);
  }
}

TEST_CASE("hessian is positive definite at solutions of random problems") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> mm(0, 4), ee(0, 1);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> m{mm(rng), mm(rng)};
    if (m[0] + m[1] == 0) m[0] = 1;
    std::vector<int> eps{ee(rng), ee(rng), ee(rng)};
    NivenProblem prob(kDeskA, eps, m);
    auto sol = solve(prob, 1e-12);
    CHECK(sol.residual_inf <= 1e-12);
    CHECK(hessian_positive_definite(prob, sol.xi));
  }
}

TEST_CASE("scaling and translation equivariance") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> As(0.3, 3.0), Bs(-2.0, 2.0);
  NivenProblem base(kDeskA, {1, 0, 0}, {2, 1});
  auto sol = solve(base, 1e-13);
  for (int trial = 0; trial < 8; ++trial) {
    double A = As(rng), B = Bs(rng);
    std::vector<double> a2;
    for (double v : kDeskA) a2.push_back(A * v + B);
    NivenProblem moved(a2, base.eps(), base.m());
    auto sol2 = solve(moved, 1e-13);
    for (size_t k = 0; k < sol.xi.size(); ++k) {
      double want = A * sol.xi[k] + B;
      CHECK(std::fabs(sol2.xi[k] - want) <= 1e-12 * std::max(1.0, std::fabs(want)) * 10);
    }
  }
}

TEST_CASE("permutation symmetry for centrally symmetric a in d = 4") {
  const std::vector<double> a{-3.0, -1.25, 1.25, 3.0};
  const std::vector<int> eps{1, 0, 1, 0}, m{2, 1, 1};
  NivenProblem prob(a, eps, m);
  auto sol = solve(prob, 1e-13);
  std::vector<int> eps_r(eps.rbegin(), eps.rend());
  std::vector<int> m_r(m.rbegin(), m.rend());
  NivenProblem mirrored(a, eps_r, m_r);
  auto sol_r = solve(mirrored, 1e-13);
  REQUIRE(sol.xi.size() == sol_r.xi.size());
  const size_t n = sol.xi.size();
  for (size_t k = 0; k < n; ++k) CHECK(std::fabs(sol_r.xi[k] + sol.xi[n - 1 - k]) < 1e-11);
}

TEST_CASE("residual contract on every returned solution") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> mm(0, 3), ee(0, 1);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<int> m{mm(rng), mm(rng)};
    std::vector<int> eps{ee(rng), ee(rng), ee(rng)};
    NivenProblem prob(kDeskA, eps, m);
    auto sol = solve(prob, 1e-12);
    CHECK(sol.residual_inf <= 1e-12);
    CHECK(sol.region_check);
    if (prob.n() > 0) {
      auto res = residual(prob, sol.xi);
      for (double r : res) CHECK(std::fabs(r) <= 1e-12);
    }
  }
}

TEST_CASE("trace of the trivial branch stays at zero") {
  auto tr = trace_curve(standard_curve(), {0, 0, 0}, {1, 0}, {0.05, 0.2, 0.4, 0.6, 0.8, 0.95},
                        1e-13);
  for (const auto& row : tr.xi) {
    REQUIRE(row.size() == 1);
    CHECK(std::fabs(row[0]) < 1e-12);
  }
}

TEST_CASE("endpoint identities: n = 1 closed case") {
  auto mr = endpoint_identities({0.0}, 1.0);
  CHECK(mr.res_Av < 1e-15);
  CHECK(mr.res_Aw < 1e-15);
}

TEST_CASE("endpoint identities at scale") {
  // double path: hits the representation floor near 1e-10 for n = 40
  for (auto [n, delta] : {std::pair{15, 3.0}, {40, 1.0}}) {
    auto xi = solve_symmetric_pair(n, delta);
    auto mr = endpoint_identities(xi, delta);
    CHECK(mr.res_Av <= 1e-9);
    CHECK(mr.res_Aw <= 1e-9);
  }
  // refined path: the identities themselves are far tighter
  for (auto [n, delta] : {std::pair{15, 3.0}, {40, 1.0}, {40, 3.0}}) {
    auto mr = endpoint_identities_refined(n, delta);
    CHECK(mr.res_Av <= 1e-12);
    CHECK(mr.res_Aw <= 1e-12);
  }
}

TEST_CASE("asymptotics of the trivial branch") {
  auto t0 = asymptotic_t0({0, 0, 0}, {1, 0});
  REQUIRE(t0.value_at_0.size() == 1);
  CHECK(std::fabs(t0.value_at_0[0]) < 1e-10);  // -1 + 3 (1/sqrt 3)^2 = 0
  auto t1 = asymptotic_t1({0, 0, 0}, {1, 0});
  REQUIRE(t1.value_at_1.size() == 1);
  CHECK(std::fabs(t1.value_at_1[0]) < 1e-15);  // -cos(pi/2)
}

TEST_CASE("t->1 pole coefficient of the m=(0,1) branch is 4/3") {
  // closed form: xi(t) = 2(3+t^2)/(3(1-t^2)) for eps=0, m=(0,1)
  auto t1 = asymptotic_t1({0, 0, 0}, {0, 1});
  REQUIRE(t1.pole_coeff.size() == 1);
  CHECK(std::fabs(t1.pole_coeff[0] - 4.0 / 3.0) < 1e-10);
  double t = 0.999;
  auto xi = solve_on_curve(standard_curve(), {0, 0, 0}, {0, 1}, t, {}, 1e-13);
  CHECK(std::fabs((1 - t) * xi[0] - t1.pole_coeff[0]) < 4e-3);
  double closed = 2.0 * (3.0 + t * t) / (3.0 * (1.0 - t * t));
  CHECK(std::fabs(xi[0] - closed) < 1e-9 * closed);
}

TEST_CASE("t->0 slope: the eps2 variant matches the trace") {
  // eps2 != eps3 separates the two closed-form candidates
  const std::vector<int> eps{0, 1, 0}, m{0, 1};
  auto t0 = asymptotic_t0(eps, m);
  REQUIRE(t0.slope_eps2.size() == 1);
  const double t = 1e-3;
  auto xi = solve_on_curve(standard_curve(), eps, m, t, {}, 1e-9);
  double slope = (xi[0] - 2.0) / t;
  CHECK(std::fabs(slope - t0.slope_eps2[0]) < 1e-2);
  CHECK(std::fabs(slope - t0.slope_eps3[0]) > 0.5);  // the alternate reading is off
}

TEST_CASE("derivative at t=1: the two degree-five branches are stationary") {
  auto d1 = derivative_at_t1({0, 0, 0}, {1, 0});
  REQUIRE(d1.size() == 1);
  CHECK(std::fabs(d1[0]) < 1e-14);
  CHECK(k_constant({0, 0, 0}, {1, 0}) == make_rat(1, 2));

  auto d2 = derivative_at_t1({1, 1, 1}, {1, 0});
  CHECK(k_constant({1, 1, 1}, {1, 0}) == make_rat(3, 2));
  CHECK(std::fabs(d2[0]) < 1e-14);

  CHECK_THROWS_AS(derivative_at_t1({1, 0, 0}, {1, 0}), PreconditionViolation);
}

TEST_CASE("K for the figure family") {
  // (2*13)(4*31+2*13+2+2+0+1)/(2*(2*31+1+1+1)) = 26*155/130 = 31
  CHECK(k_constant({1, 1, 0}, {31, 13}) == make_rat(63, 2));
}

TEST_CASE("solver rejects bad inputs") {
  CHECK_THROWS_AS(NivenProblem({1.0, 1.0, 2.0}, {0, 0, 0}, {1, 0}), PreconditionViolation);
  CHECK_THROWS_AS(NivenProblem(kDeskA, {0, 2, 0}, {1, 0}), PreconditionViolation);
  CHECK_THROWS_AS(NivenProblem(kDeskA, {0, 0, 0}, {-1, 0}), PreconditionViolation);
  NivenProblem prob(kDeskA, {0, 0, 0}, {1, 0});
  CHECK_THROWS_AS(residual(prob, {-1.0}), DomainViolation);
}
