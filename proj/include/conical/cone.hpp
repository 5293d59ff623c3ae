#ifndef CONICAL_CONE_HPP
#define CONICAL_CONE_HPP

#include <algorithm>
#include <vector>

#include "conical/hpoly.hpp"
#include "conical/rational.hpp"

namespace conical {

/// The vector a defining the quadric K_a(x) = sum x_j^2 / a_j and the cone
/// C_a = {K_a = 0}. Entries are sorted ascending on construction.
class ConeParams {
 public:
  explicit ConeParams(std::vector<Rat> a) : a_(std::move(a)) {
    if (a_.size() < 2) throw PreconditionViolation("ConeParams: need d >= 2");
    for (const auto& v : a_)
      if (v == 0) throw PreconditionViolation("ConeParams: zero entry in a");
    std::sort(a_.begin(), a_.end());
    Rat s(0);
    for (const auto& v : a_) s += 1 / v;
    inverse_sum_zero_ = (s == 0);
  }

  int dim() const { return (int)a_.size(); }
  const std::vector<Rat>& a() const { return a_; }
  bool inverse_sum_zero() const { return inverse_sum_zero_; }

  bool distinct() const {
    for (size_t i = 0; i + 1 < a_.size(); ++i)
      if (a_[i] == a_[i + 1]) return false;
    return true;
  }

  /// K_a as an exact degree-2 polynomial.
  HPoly<Rat> quadric() const {
    int d = dim();
    HPoly<Rat> q(d, 2);
    for (int j = 0; j < d; ++j) {
      Mono e(d, 0);
      e[j] = 2;
      q.add_term(std::move(e), 1 / a_[j]);
    }
    return q;
  }

  ConeParams scaled(const Rat& lambda) const {
    std::vector<Rat> b;
    b.reserve(a_.size());
    for (const auto& v : a_) b.push_back(v * lambda);
    return ConeParams(std::move(b));
  }

 private:
  std::vector<Rat> a_;
  bool inverse_sum_zero_;
};

}  // namespace conical

#endif
