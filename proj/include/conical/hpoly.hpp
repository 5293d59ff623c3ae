#ifndef CONICAL_HPOLY_HPP
#define CONICAL_HPOLY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "conical/errors.hpp"
#include "conical/rational.hpp"

namespace conical {

/// Exponent multi-index of a monomial; length d, entries sum to the degree.
using Mono = std::vector<int>;

inline int mono_degree(const Mono& m) { return std::accumulate(m.begin(), m.end(), 0); }

/// Monomial listing order used everywhere (matrix layout, serialization):
/// lower total degree first, ties broken lexicographically with x1 dominant
/// and the larger exponent vector listed first. For a fixed degree this puts
/// x1^N first and xd^N last.
struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    return a > b;  // lexicographically greater vector comes first
  }
};

template <class T>
bool coeff_is_zero(const T& c) {
  return c == T(0);
}


/// Sparse homogeneous polynomial in d variables of degree N. The coefficient
/// type is either Rat (exact paths) or double (numeric paths). Canonical form:
/// no explicit zero coefficients are stored and every exponent sums to N.
template <class T>
class HPoly {
 public:
  using Terms = std::map<Mono, T, MonoLess>;

  HPoly() : d_(0), degree_(0) {}
  HPoly(int d, int degree) : d_(d), degree_(degree) {
    if (d <= 0) throw PreconditionViolation("HPoly: dimension must be positive");
    if (degree < 0) throw PreconditionViolation("HPoly: negative degree");
  }

  static HPoly zero(int d, int degree) { return HPoly(d, degree); }

  static HPoly monomial(int d, Mono exp, T coeff) {
    HPoly p(d, mono_degree(exp));
    p.add_term(std::move(exp), std::move(coeff));
    return p;
  }

  /// x_j as a degree-1 polynomial (j is 0-based).
  static HPoly variable(int d, int j) {
    Mono e(d, 0);
    e[j] = 1;
    return monomial(d, e, T(1));
  }

  static HPoly constant(int d, T c) {
    HPoly p(d, 0);
    p.add_term(Mono(d, 0), std::move(c));
    return p;
  }

  int dim() const { return d_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  T coeff(const Mono& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? T(0) : it->second;
  }

  void add_term(Mono e, T c) {
    if ((int)e.size() != d_) throw PreconditionViolation("HPoly: exponent length mismatch");
    if (mono_degree(e) != degree_) throw PreconditionViolation("HPoly: exponent degree mismatch");
    if (coeff_is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), std::move(c));
    } else {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  HPoly& operator+=(const HPoly& o) {
    require_same_shape(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  HPoly& operator-=(const HPoly& o) {
    require_same_shape(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend HPoly operator+(HPoly a, const HPoly& b) { return a += b; }
  friend HPoly operator-(HPoly a, const HPoly& b) { return a -= b; }

  HPoly operator-() const {
    HPoly r(d_, degree_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  HPoly scaled(const T& s) const {
    HPoly r(d_, degree_);
    if (coeff_is_zero(s)) return r;
    for (const auto& [e, c] : terms_) {
      T v = c * s;
      if (!coeff_is_zero(v)) r.terms_.emplace(e, std::move(v));
    }
    return r;
  }

  friend HPoly operator*(const HPoly& a, const HPoly& b) {
    if (a.d_ != b.d_) throw PreconditionViolation("HPoly: dimension mismatch");
    HPoly r(a.d_, a.degree_ + b.degree_);
    Mono e(a.d_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (int i = 0; i < a.d_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  /// d/dx_j; drops the degree by one (zero polynomial if degree is 0).
  HPoly derivative(int j) const {
    HPoly r(d_, std::max(degree_ - 1, 0));
    if (degree_ == 0) return r;
    for (const auto& [e, c] : terms_) {
      if (e[j] == 0) continue;
      Mono f = e;
      f[j] -= 1;
      r.add_term(std::move(f), c * T(e[j]));
    }
    return r;
  }

  /// Sum of second partials; degree max(N-2, 0).
  HPoly laplacian() const {
    HPoly r(d_, std::max(degree_ - 2, 0));
    if (degree_ < 2) return r;
    for (const auto& [e, c] : terms_)
      for (int j = 0; j < d_; ++j) {
        if (e[j] < 2) continue;
        Mono f = e;
        f[j] -= 2;
        r.add_term(std::move(f), c * T(e[j]) * T(e[j] - 1));
      }
    return r;
  }

  T eval(const std::vector<T>& x) const {
    T acc(0);
    for (const auto& [e, c] : terms_) {
      T t(c);
      for (int j = 0; j < d_; ++j)
        for (int k = 0; k < e[j]; ++k) t *= x[j];
      acc += t;
    }
    return acc;
  }

  /// Flips the sign of coordinate j: p(..., -x_j, ...).
  HPoly reflected(int j) const {
    HPoly r(d_, degree_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, (e[j] % 2 == 0) ? c : -c);
    return r;
  }

  bool operator==(const HPoly& o) const {
    return d_ == o.d_ && degree_ == o.degree_ && terms_ == o.terms_;
  }

 private:
  void require_same_shape(const HPoly& o) const {
    if (d_ != o.d_ || degree_ != o.degree_)
      throw PreconditionViolation("HPoly: shape mismatch in +/-");
  }

  int d_;
  int degree_;
  Terms terms_;
};

/// All degree-`deg` monomials of d variables in the canonical listing order.
inline std::vector<Mono> monomial_basis(int d, int deg) {
  std::vector<Mono> out;
  Mono cur(d, 0);
  // Recursive enumeration, then sort into listing order.
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == d - 1) {
      cur[pos] = rem;
      out.push_back(cur);
      return;
    }
    for (int e = rem; e >= 0; --e) {
      cur[pos] = e;
      self(self, pos + 1, rem - e);
    }
  };
  if (deg >= 0 && d > 0) rec(rec, 0, deg);
  std::sort(out.begin(), out.end(), MonoLess{});
  return out;
}

inline long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// C(deg+d-1, d-1), the size of monomial_basis(d, deg).
inline long monomial_count(int d, int deg) { return binomial(deg + d - 1, d - 1); }

inline double max_abs_coeff(const HPoly<double>& p) {
  double m = 0.0;
  for (const auto& [e, c] : p.terms()) m = std::max(m, std::fabs(c));
  return m;
}

inline HPoly<double> to_double_poly(const HPoly<Rat>& p) {
  HPoly<double> r(p.dim(), p.degree());
  for (const auto& [e, c] : p.terms()) r.add_term(e, to_double(c));
  return r;
}

/// Exact single-divisor division. Returns the quotient iff divisor divides
/// dividend with zero remainder; nullopt otherwise. Requires the divisor's
/// leading monomial (listing order) to have a nonzero coefficient, which is
/// automatic for canonical form.
std::optional<HPoly<Rat>> try_divide_exact(const HPoly<Rat>& dividend, const HPoly<Rat>& divisor);

}  // namespace conical

#endif
