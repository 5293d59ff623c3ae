#include "conical/ratmat.hpp"

#include <utility>

namespace conical {

namespace {

// Row-wise denominator clearing; the rank is unchanged.
std::vector<std::vector<Int>> to_integer_rows(const RatMat& m) {
  std::vector<std::vector<Int>> rows(m.rows(), std::vector<Int>(m.cols()));
  for (int r = 0; r < m.rows(); ++r) {
    Int lcm(1);
    for (int c = 0; c < m.cols(); ++c) {
      const Rat& v = m.at(r, c);
      if (v != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
    }
    for (int c = 0; c < m.cols(); ++c) {
      const Rat& v = m.at(r, c);
      rows[r][c] = v.get_num() * (lcm / v.get_den());
    }
  }
  return rows;
}

// Reduced row echelon form in place. Returns pivot column per pivot row.
std::vector<int> rref(RatMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int r = row; r < m.rows(); ++r)
      if (m.at(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m.at(piv, c), m.at(row, c));
    Rat inv = 1 / m.at(row, col);
    for (int c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      Rat f = m.at(r, col);
      for (int c = col; c < m.cols(); ++c) m.at(r, c) -= f * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int rank_bareiss(const RatMat& m) {
  auto a = to_integer_rows(m);
  const int nr = m.rows(), nc = m.cols();
  Int prev(1);
  int rank = 0;
  for (int col = 0; col < nc && rank < nr; ++col) {
    int piv = -1;
    for (int r = rank; r < nr; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank) std::swap(a[piv], a[rank]);
    const Int pivot = a[rank][col];
    Int t, q, rem;
    for (int r = rank + 1; r < nr; ++r) {
      for (int c = col + 1; c < nc; ++c) {
        t = pivot * a[r][c] - a[r][col] * a[rank][c];
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        if (rem != 0) throw Error("rank_bareiss: exact division failed");
        a[r][c] = q;
      }
      a[r][col] = 0;
    }
    prev = pivot;
    ++rank;
  }
  return rank;
}

int rank_rational(const RatMat& m) {
  RatMat work = m;
  return (int)rref(work).size();
}

std::vector<std::vector<Rat>> nullspace(const RatMat& m) {
  RatMat work = m;
  std::vector<int> pivots = rref(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Rat>> basis;
  for (int fc = 0; fc < m.cols(); ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Rat> v(m.cols(), Rat(0));
    v[fc] = 1;
    for (size_t pr = 0; pr < pivots.size(); ++pr) v[pivots[pr]] = -work.at((int)pr, fc);
    basis.push_back(std::move(v));
  }
  return basis;
}

LinearSolve solve_linear(const RatMat& m, const std::vector<Rat>& b) {
  if ((int)b.size() != m.rows()) throw PreconditionViolation("solve_linear: rhs size mismatch");
  RatMat aug(m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = b[r];
  }
  std::vector<int> pivots = rref(aug);

  LinearSolve out;
  for (int c : pivots)
    if (c == m.cols()) {
      out.status = LinearSolve::Status::NoSolution;
      return out;
    }

  out.solution.assign(m.cols(), Rat(0));
  for (size_t pr = 0; pr < pivots.size(); ++pr)
    out.solution[pivots[pr]] = aug.at((int)pr, m.cols());

  if ((int)pivots.size() == m.cols()) {
    out.status = LinearSolve::Status::Unique;
  } else {
    out.status = LinearSolve::Status::NonUnique;
    out.nullvecs = nullspace(m);
  }
  return out;
}

}  // namespace conical
