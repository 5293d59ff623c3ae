#ifndef CONICAL_RATMAT_HPP
#define CONICAL_RATMAT_HPP

#include <vector>

#include "conical/rational.hpp"

namespace conical {

/// Dense exact-rational matrix, row major.
class RatMat {
 public:
  RatMat() : rows_(0), cols_(0) {}
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols, Rat(0)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int r, int c) { return data_[size_t(r) * cols_ + c]; }
  const Rat& at(int r, int c) const { return data_[size_t(r) * cols_ + c]; }

  bool operator==(const RatMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  int rows_, cols_;
  std::vector<Rat> data_;
};

/// Rank by fraction-free (Bareiss) elimination: denominators are cleared
/// row-wise, then all pivoting steps divide exactly in the integers.
int rank_bareiss(const RatMat& m);

/// Rank by plain rational Gaussian elimination. Slower; kept as the
/// independent cross-check for rank_bareiss.
int rank_rational(const RatMat& m);

/// Basis of {v : Mv = 0}, exact, one vector per free column.
std::vector<std::vector<Rat>> nullspace(const RatMat& m);

struct LinearSolve {
  enum class Status { Unique, NoSolution, NonUnique };
  Status status;
  std::vector<Rat> solution;                 // a particular solution when consistent
  std::vector<std::vector<Rat>> nullvecs;    // nullspace basis when NonUnique
};

/// Solves Mx = b exactly over the rationals.
LinearSolve solve_linear(const RatMat& m, const std::vector<Rat>& b);

}  // namespace conical

#endif
