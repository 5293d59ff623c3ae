#ifndef CONICAL_POLY_CORE_HPP
#define CONICAL_POLY_CORE_HPP

#include <map>
#include <tuple>
#include <vector>

#include "conical/cone.hpp"
#include "conical/hpoly.hpp"
#include "conical/ratmat.hpp"

namespace conical {

/// Matrix of r -> laplacian(K_a * r) on the degree-(N-2) monomial basis.
/// Column j holds the image of the j-th basis monomial expanded in the same
/// basis (listing order of monomial_basis).
RatMat quadric_map_matrix(const ConeParams& cone, int N);

/// dim V_N(C_a): the corank of quadric_map_matrix(cone, N). Returns 0 for
/// N < 2 (no homogeneous harmonic of negative multiplier degree vanishes).
int dim_vanishing_space(const ConeParams& cone, int N);

/// Exact basis of the nullspace of r -> laplacian(K_a * r) at degree N-2,
/// returned as polynomials of degree N-2.
std::vector<HPoly<Rat>> vanishing_nullspace(const ConeParams& cone, int N);

struct LaplaceDivision {
  enum class Status { Unique, NoSolution, NonUnique };
  Status status;
  HPoly<Rat> q;                          // particular solution when consistent
  std::vector<HPoly<Rat>> nullspace;     // kernel basis when NonUnique
  int nullity() const { return (int)nullspace.size(); }
};

/// Solves laplacian(K_a * q) = f for q of degree N-2, where f has degree N-2.
LaplaceDivision solve_laplacian_division(const ConeParams& cone, const HPoly<Rat>& f, int N);

/// Homogeneous parts of the perturbation coefficients of the operator
///   L = sum a_jk d2/dxjdxk + sum b_j d/dxj + c
/// after the normalization a_jk(0) = delta_jk. Keys are (j, k, order) with
/// order >= 1 for a2, (j, order) with order >= 0 for b1, and order >= 0 for c0.
/// Each stored polynomial must be homogeneous of exactly its order. Missing
/// entries are zero.
struct CoeffSeries {
  int d = 0;
  std::map<std::tuple<int, int, int>, HPoly<Rat>> a2;
  std::map<std::pair<int, int>, HPoly<Rat>> b1;
  std::map<int, HPoly<Rat>> c0;

  const HPoly<Rat>* a(int j, int k, int order) const {
    auto it = a2.find({j, k, order});
    return it == a2.end() ? nullptr : &it->second;
  }
  const HPoly<Rat>* b(int j, int order) const {
    auto it = b1.find({j, order});
    return it == b1.end() ? nullptr : &it->second;
  }
  const HPoly<Rat>* c(int order) const {
    auto it = c0.find(order);
    return it == c0.end() ? nullptr : &it->second;
  }
};

/// Formal power-series recursion for L(uq) = 0 with u = K_a: returns
/// q_0..q_L with q_0 = ... = q_{d-1} = 0 and q_d = seed * x_1...x_d, each
/// later part obtained by inverting q -> laplacian(u q). Throws
/// NonGenericCone if an inversion at order not in {0, d} has positive corank.
std::vector<HPoly<Rat>> taylor_recursion(const ConeParams& cone, const CoeffSeries& series,
                                         int L, const Rat& seed);

/// Right-hand side of the order-ell recursion equation, assembled from
/// already-known parts q_0..q_{ell-1}. Exposed so tests can re-substitute.
HPoly<Rat> recursion_rhs(const ConeParams& cone, const CoeffSeries& series,
                         const std::vector<HPoly<Rat>>& q, int ell);

}  // namespace conical

#endif
