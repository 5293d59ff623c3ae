#include "conical/poly_core.hpp"

#include <optional>

namespace conical {

namespace {

std::vector<Rat> to_basis_vector(const HPoly<Rat>& p, const std::vector<Mono>& basis) {
  std::vector<Rat> v(basis.size(), Rat(0));
  size_t hits = 0;
  for (size_t i = 0; i < basis.size(); ++i) {
    Rat c = p.coeff(basis[i]);
    if (c != 0) ++hits;
    v[i] = std::move(c);
  }
  if (hits != p.term_count()) throw Error("polynomial has terms outside the expected basis");
  return v;
}

HPoly<Rat> from_basis_vector(int d, int degree, const std::vector<Rat>& v,
                             const std::vector<Mono>& basis) {
  HPoly<Rat> p(d, degree);
  for (size_t i = 0; i < basis.size(); ++i)
    if (v[i] != 0) p.add_term(basis[i], v[i]);
  return p;
}

}  // namespace

RatMat quadric_map_matrix(const ConeParams& cone, int N) {
  if (N < 2) throw PreconditionViolation("quadric_map_matrix: N must be >= 2");
  const int d = cone.dim();
  const HPoly<Rat> K = cone.quadric();
  const std::vector<Mono> basis = monomial_basis(d, N - 2);
  RatMat m((int)basis.size(), (int)basis.size());
  for (size_t j = 0; j < basis.size(); ++j) {
    HPoly<Rat> image = (K * HPoly<Rat>::monomial(d, basis[j], Rat(1))).laplacian();
    std::vector<Rat> col = to_basis_vector(image, basis);
    for (size_t i = 0; i < basis.size(); ++i) m.at((int)i, (int)j) = std::move(col[i]);
  }
  return m;
}

int dim_vanishing_space(const ConeParams& cone, int N) {
  if (N < 2) return 0;
  RatMat m = quadric_map_matrix(cone, N);
  return m.cols() - rank_bareiss(m);
}

std::vector<HPoly<Rat>> vanishing_nullspace(const ConeParams& cone, int N) {
  if (N < 2) return {};
  const int d = cone.dim();
  const std::vector<Mono> basis = monomial_basis(d, N - 2);
  auto vecs = nullspace(quadric_map_matrix(cone, N));
  std::vector<HPoly<Rat>> out;
  out.reserve(vecs.size());
  for (const auto& v : vecs) out.push_back(from_basis_vector(d, N - 2, v, basis));
  return out;
}

LaplaceDivision solve_laplacian_division(const ConeParams& cone, const HPoly<Rat>& f, int N) {
  if (N < 2) throw PreconditionViolation("solve_laplacian_division: N must be >= 2");
  if (f.dim() != cone.dim() || f.degree() != N - 2)
    throw PreconditionViolation("solve_laplacian_division: f must have degree N-2");
  const int d = cone.dim();
  const std::vector<Mono> basis = monomial_basis(d, N - 2);
  RatMat m = quadric_map_matrix(cone, N);
  LinearSolve ls = solve_linear(m, to_basis_vector(f, basis));

  LaplaceDivision out;
  out.q = HPoly<Rat>::zero(d, N - 2);
  switch (ls.status) {
    case LinearSolve::Status::NoSolution:
      out.status = LaplaceDivision::Status::NoSolution;
      return out;
    case LinearSolve::Status::Unique:
      out.status = LaplaceDivision::Status::Unique;
      break;
    case LinearSolve::Status::NonUnique:
      out.status = LaplaceDivision::Status::NonUnique;
      for (const auto& v : ls.nullvecs) out.nullspace.push_back(from_basis_vector(d, N - 2, v, basis));
      break;
  }
  out.q = from_basis_vector(d, N - 2, ls.solution, basis);
  return out;
}

HPoly<Rat> recursion_rhs(const ConeParams& cone, const CoeffSeries& series,
                         const std::vector<HPoly<Rat>>& q, int ell) {
  const int d = cone.dim();
  const HPoly<Rat> u = cone.quadric();
  HPoly<Rat> rhs(d, ell);

  for (int lp = 1; lp <= ell; ++lp) {
    const HPoly<Rat>& qpart = q[ell - lp];
    if (qpart.is_zero()) continue;
    HPoly<Rat> uq = u * qpart;  // degree ell - lp + 2

    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        const HPoly<Rat>* ajk = series.a(j, k, lp);
        if (!ajk) continue;
        rhs -= *ajk * uq.derivative(j).derivative(k);
      }
      const HPoly<Rat>* bj = series.b(j, lp - 1);
      if (bj) rhs -= *bj * uq.derivative(j);
    }
    if (lp >= 2) {
      const HPoly<Rat>* cl = series.c(lp - 2);
      if (cl) rhs -= *cl * uq;
    }
  }
  return rhs;
}

std::vector<HPoly<Rat>> taylor_recursion(const ConeParams& cone, const CoeffSeries& series,
                                         int L, const Rat& seed) {
  const int d = cone.dim();
  if (L < 0) throw PreconditionViolation("taylor_recursion: L must be >= 0");

  std::vector<HPoly<Rat>> q;
  q.reserve(L + 1);
  q.push_back(HPoly<Rat>::zero(d, 0));  // q_0 = 0

  for (int ell = 1; ell <= L; ++ell) {
    HPoly<Rat> rhs = recursion_rhs(cone, series, q, ell);
    LaplaceDivision div = solve_laplacian_division(cone, rhs, ell + 2);

    if (ell == d) {
      if (div.status == LaplaceDivision::Status::NoSolution)
        throw NonGenericCone("taylor_recursion: inconsistent system at the kernel order", ell, 0);
      if (div.status == LaplaceDivision::Status::Unique && seed != 0)
        throw PreconditionViolation(
            "taylor_recursion: nonzero seed but x_1...x_d is not in the kernel (is a in A^d?)");
      HPoly<Rat> qd = div.q;
      if (seed != 0) {
        Mono all_ones(d, 1);
        qd += HPoly<Rat>::monomial(d, all_ones, seed);
      }
      q.push_back(std::move(qd));
      continue;
    }

    if (div.status != LaplaceDivision::Status::Unique)
      throw NonGenericCone("taylor_recursion: map not invertible away from the kernel orders",
                           ell, div.nullity());
    q.push_back(std::move(div.q));
  }
  return q;
}

std::optional<HPoly<Rat>> try_divide_exact(const HPoly<Rat>& dividend, const HPoly<Rat>& divisor) {
  if (divisor.is_zero()) throw PreconditionViolation("try_divide_exact: zero divisor");
  if (dividend.dim() != divisor.dim()) throw PreconditionViolation("try_divide_exact: dim mismatch");
  const int d = dividend.dim();
  const int qdeg = dividend.degree() - divisor.degree();
  if (dividend.is_zero()) return HPoly<Rat>::zero(d, std::max(qdeg, 0));
  if (qdeg < 0) return std::nullopt;

  const auto& lead = *divisor.terms().begin();  // listing-order leading term
  HPoly<Rat> rem = dividend;
  HPoly<Rat> quot(d, qdeg);
  while (!rem.is_zero()) {
    const auto& rlead = *rem.terms().begin();
    Mono diff(d);
    for (int i = 0; i < d; ++i) {
      diff[i] = rlead.first[i] - lead.first[i];
      if (diff[i] < 0) return std::nullopt;
    }
    Rat c = rlead.second / lead.second;
    HPoly<Rat> t = HPoly<Rat>::monomial(d, diff, c);
    quot += t;
    rem -= t * divisor;
  }
  return quot;
}

}  // namespace conical
