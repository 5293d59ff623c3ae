#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "conical/poly_core.hpp"

using namespace conical;

namespace {

ConeParams desk_cone() { return ConeParams({make_rat(-1), make_rat(4, 3), make_rat(4)}); }

// Independent expansion of laplacian(K_a x^alpha) using the product rule
// termwise: K_a lap(x^a) + x^a lap(K_a) + 2 sum_j (2 x_j / a_j) d_j x^a.
HPoly<Rat> quadric_image_oracle(const ConeParams& cone, const Mono& alpha) {
  const int d = cone.dim();
  HPoly<Rat> xa = HPoly<Rat>::monomial(d, alpha, Rat(1));
  HPoly<Rat> out = cone.quadric() * xa.laplacian();
  out += xa * cone.quadric().laplacian();
  for (int j = 0; j < d; ++j) {
    Mono e(d, 0);
    e[j] = 1;
    HPoly<Rat> dK = HPoly<Rat>::monomial(d, e, 2 / cone.a()[j]);
    out += (dK * xa.derivative(j)).scaled(Rat(2));
  }
  return out;
}

}  // namespace

TEST_CASE("quadric map matrix: 1x1 constant case is zero on A^3") {
  RatMat m = quadric_map_matrix(desk_cone(), 2);
  REQUIRE(m.rows() == 1);
  CHECK(m.at(0, 0) == 0);
  CHECK(dim_vanishing_space(desk_cone(), 2) == 1);
}

TEST_CASE("quadric map matrix columns match the symbolic oracle at N=4") {
  ConeParams cone = desk_cone();
  RatMat m = quadric_map_matrix(cone, 4);
  REQUIRE(m.rows() == 6);
  auto basis = monomial_basis(3, 2);
  for (size_t j = 0; j < basis.size(); ++j) {
    HPoly<Rat> want = quadric_image_oracle(cone, basis[j]);
    for (size_t i = 0; i < basis.size(); ++i) CHECK(m.at((int)i, (int)j) == want.coeff(basis[i]));
  }
}

TEST_CASE("bareiss rank agrees with rational elimination") {
  std::mt19937 rng(5);
  ConeParams cone = desk_cone();
  for (int N = 2; N <= 8; ++N) {
    RatMat m = quadric_map_matrix(cone, N);
    CHECK(rank_bareiss(m) == rank_rational(m));
  }
}

TEST_CASE("dimension pattern at the desk cone") {
  ConeParams cone = desk_cone();
  CHECK(dim_vanishing_space(cone, 2) == 1);
  CHECK(dim_vanishing_space(cone, 3) == 0);
  CHECK(dim_vanishing_space(cone, 5) == 1);
  CHECK(dim_vanishing_space(cone, 1) == 0);
  CHECK(dim_vanishing_space(cone, 0) == 0);
}

TEST_CASE("corank is invariant under rescaling of a") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> num(1, 9), den(1, 9), pick_n(2, 6), sgn2(-7, 7);
  for (int trial = 0; trial < 10; ++trial) {
    // random a in A^3: two random reciprocals, the third balances the sum
    Rat r1 = make_rat(sgn2(rng), den(rng)), r2 = make_rat(sgn2(rng), den(rng));
    if (r1 == 0 || r2 == 0 || r1 + r2 == 0) {
      --trial;
      continue;
    }
    ConeParams cone({1 / r1, 1 / r2, -1 / (r1 + r2)});
    Rat lambda = make_rat(num(rng), den(rng));
    int N = pick_n(rng);
    CHECK(dim_vanishing_space(cone, N) == dim_vanishing_space(cone.scaled(lambda), N));
  }
}

TEST_CASE("nullspace vectors produce exactly harmonic multiples") {
  ConeParams cone = desk_cone();
  for (int N : {2, 5}) {
    auto basis_polys = vanishing_nullspace(cone, N);
    REQUIRE(basis_polys.size() == 1);
    HPoly<Rat> product = cone.quadric() * basis_polys[0];
    CHECK(product.laplacian().is_zero());
  }
}

TEST_CASE("laplacian division: zero rhs") {
  ConeParams cone = desk_cone();
  // N=3: invertible, unique zero solution
  auto r = solve_laplacian_division(cone, HPoly<Rat>::zero(3, 1), 3);
  CHECK(r.status == LaplaceDivision::Status::Unique);
  CHECK(r.q.is_zero());
  // N=2: K_a itself is harmonic, nullspace dim 1
  auto r2 = solve_laplacian_division(cone, HPoly<Rat>::zero(3, 0), 2);
  CHECK(r2.status == LaplaceDivision::Status::NonUnique);
  CHECK(r2.nullity() == 1);
}

TEST_CASE("laplacian division: rhs off the column space") {
  // at N=2 the 1x1 map is [0] on A^3, so any nonzero constant is unreachable
  ConeParams cone = desk_cone();
  auto r = solve_laplacian_division(cone, HPoly<Rat>::constant(3, Rat(1)), 2);
  CHECK(r.status == LaplaceDivision::Status::NoSolution);
}

TEST_CASE("laplacian division: reconstructs a known preimage") {
  ConeParams cone = desk_cone();
  HPoly<Rat> x1 = HPoly<Rat>::variable(3, 0);
  HPoly<Rat> f = (cone.quadric() * x1).laplacian();
  auto r = solve_laplacian_division(cone, f, 3);
  REQUIRE(r.status == LaplaceDivision::Status::Unique);
  CHECK(r.q == x1);
}

TEST_CASE("taylor recursion: zero seed stays zero") {
  ConeParams cone = desk_cone();
  CoeffSeries empty;
  empty.d = 3;
  auto q = taylor_recursion(cone, empty, 6, Rat(0));
  for (int ell = 0; ell <= 6; ++ell) CHECK(q[ell].is_zero());
}

TEST_CASE("taylor recursion: seed propagates and perturbation fills in") {
  ConeParams cone = desk_cone();
  CoeffSeries helm;
  helm.d = 3;
  helm.c0.emplace(0, HPoly<Rat>::constant(3, Rat(1)));
  auto q = taylor_recursion(cone, helm, 7, Rat(1));
  CHECK(q[3] == HPoly<Rat>::monomial(3, {1, 1, 1}, Rat(1)));
  CHECK(q[1].is_zero());
  CHECK(q[2].is_zero());
  CHECK(!q[5].is_zero());
  CHECK(!q[7].is_zero());
  const HPoly<Rat> u = cone.quadric();
  for (int ell = 1; ell <= 7; ++ell) {
    // re-substitute: lap(u q_ell) must equal the assembled right side exactly
    CHECK((u * q[ell]).laplacian() == recursion_rhs(cone, helm, q, ell));
  }
}

TEST_CASE("taylor recursion rejects nonzero seed off A^d") {
  ConeParams off({make_rat(1), make_rat(2), make_rat(3)});
  CoeffSeries empty;
  empty.d = 3;
  CHECK_THROWS_AS(taylor_recursion(off, empty, 4, Rat(1)), PreconditionViolation);
}
