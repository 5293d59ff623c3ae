#include "conical/harmonics.hpp"

#include <cmath>
#include <map>


namespace conical::harmonics {

namespace {

struct Accum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double t = s + x;
    if (std::fabs(s) >= std::fabs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double get() const { return s + c; }
};

// Product with per-coefficient compensated accumulation; the expanded
// harmonics of high degree see heavy cancellation.
HPoly<double> mul_compensated(const HPoly<double>& a, const HPoly<double>& b) {
  std::map<Mono, Accum, MonoLess> acc;
  const int d = a.dim();
  Mono e(d);
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      for (int i = 0; i < d; ++i) e[i] = ea[i] + eb[i];
      acc[e].add(ca * cb);
    }
  HPoly<double> r(d, a.degree() + b.degree());
  for (const auto& [exp, v] : acc) r.add_term(exp, v.get());
  return r;
}

HPoly<double> quadric_factor(const std::vector<double>& a, double xi) {
  const int d = (int)a.size();
  HPoly<double> k(d, 2);
  for (int j = 0; j < d; ++j) {
    double diff = xi - a[j];
    if (diff == 0.0) throw DomainViolation("build_Q: xi equals a cone parameter");
    Mono e(d, 0);
    e[j] = 2;
    k.add_term(std::move(e), 1.0 / diff);
  }
  return k;
}

}  // namespace

ConicHarmonic build_Q(const std::vector<double>& a, const std::vector<int>& eps,
                      const std::vector<double>& xi) {
  const int d = (int)a.size();
  if ((int)eps.size() != d) throw PreconditionViolation("build_Q: eps length mismatch");
  ConicHarmonic out;
  out.a = a;
  out.eps = eps;
  out.xi = xi;

  Mono e(d);
  for (int j = 0; j < d; ++j) e[j] = eps[j];
  HPoly<double> q = HPoly<double>::monomial(d, e, 1.0);
  for (double x : xi) q = mul_compensated(q, quadric_factor(a, x));
  out.expanded = std::move(q);

  const int n = (int)xi.size();
  double cnorm = ((size_t)n * (d - 1)) % 2 == 0 ? 1.0 : -1.0;
  for (double x : xi)
    for (int j = 0; j < d; ++j) cnorm /= (x - a[j]);
  out.C_norm = cnorm;

  // monic prod (tau - xi_k), coefficients ascending by power
  std::vector<double> pf{1.0};
  for (double x : xi) {
    std::vector<double> nf(pf.size() + 1, 0.0);
    for (size_t i = 0; i < pf.size(); ++i) {
      nf[i + 1] += pf[i];
      nf[i] -= x * pf[i];
    }
    pf = std::move(nf);
  }
  out.P_factor = std::move(pf);
  return out;
}

HPoly<Rat> build_Q_exact(const std::vector<Rat>& a, const std::vector<int>& eps,
                         const std::vector<Rat>& xi) {
  const int d = (int)a.size();
  if ((int)eps.size() != d) throw PreconditionViolation("build_Q_exact: eps length mismatch");
  Mono e(d);
  for (int j = 0; j < d; ++j) e[j] = eps[j];
  HPoly<Rat> q = HPoly<Rat>::monomial(d, e, Rat(1));
  for (const Rat& x : xi) {
    HPoly<Rat> k(d, 2);
    for (int j = 0; j < d; ++j) {
      Rat diff = x - a[j];
      if (diff == 0) throw DomainViolation("build_Q_exact: xi equals a cone parameter");
      Mono f(d, 0);
      f[j] = 2;
      k.add_term(std::move(f), 1 / diff);
    }
    q = q * k;
  }
  return q;
}

std::vector<double> laplacian_residual_factored(const ConicHarmonic& q) {
  const int d = (int)q.a.size();
  const int n = (int)q.xi.size();
  std::vector<double> brackets(n);
  for (int k = 0; k < n; ++k) {
    Accum acc;
    for (int j = 0; j < d; ++j) {
      double diff = q.xi[k] - q.a[j];
      if (diff == 0.0) throw DomainViolation("laplacian_residual_factored: xi hits a");
      acc.add((1.0 + 2.0 * q.eps[j]) / diff);
    }
    for (int l = 0; l < n; ++l) {
      if (l == k) continue;
      double diff = q.xi[k] - q.xi[l];
      if (diff == 0.0) throw DomainViolation("laplacian_residual_factored: coincident xi");
      acc.add(4.0 / diff);
    }
    brackets[k] = acc.get();
  }
  return brackets;
}

double relative_laplacian_residual(const HPoly<double>& q) {
  const int N = q.degree();
  if (N < 2) return 0.0;
  double num = max_abs_coeff(q.laplacian());
  double den = double(N) * (N - 1) * max_abs_coeff(q);
  return den == 0.0 ? 0.0 : num / den;
}

NumericDivision divide_numeric(const HPoly<double>& dividend, const HPoly<double>& divisor) {
  if (divisor.is_zero()) throw PreconditionViolation("divide_numeric: zero divisor");
  const int d = dividend.dim();
  const int qdeg = dividend.degree() - divisor.degree();
  NumericDivision out{HPoly<double>::zero(d, std::max(qdeg, 0)), 0.0};
  const double scale = max_abs_coeff(dividend);
  if (scale == 0.0) return out;
  if (qdeg < 0) {
    out.remainder_rel = 1.0;
    return out;
  }

  const auto& lead = *divisor.terms().begin();
  HPoly<double> rem = dividend;
  double rem_max = 0.0;
  while (!rem.is_zero()) {
    const auto lt = *rem.terms().begin();
    Mono diff(d);
    bool divisible = true;
    for (int i = 0; i < d; ++i) {
      diff[i] = lt.first[i] - lead.first[i];
      if (diff[i] < 0) divisible = false;
    }
    if (!divisible) {
      rem_max = std::max(rem_max, std::fabs(lt.second));
      rem.add_term(lt.first, -lt.second);  // move into the remainder pile
      continue;
    }
    HPoly<double> t = HPoly<double>::monomial(d, diff, lt.second / lead.second);
    out.quotient += t;
    rem -= t * divisor;
    rem.add_term(lt.first, -rem.coeff(lt.first));  // cancel fp residue exactly
  }
  out.remainder_rel = rem_max / scale;
  return out;
}

ConicalCoords cartesian_to_conical(const std::vector<double>& x, const std::vector<double>& a) {
  const int d = (int)a.size();
  if ((int)x.size() != d) throw PreconditionViolation("cartesian_to_conical: length mismatch");
  for (double v : x)
    if (!(v > 0.0)) throw PreconditionViolation("cartesian_to_conical: x must be in (0,inf)^d");
  for (int j = 0; j + 1 < d; ++j)
    if (!(a[j] < a[j + 1]))
      throw PreconditionViolation("cartesian_to_conical: a must be strictly ascending");

  auto f = [&](double s) {
    Accum acc;
    for (int j = 0; j < d; ++j) acc.add(x[j] * x[j] / (s - a[j]));
    return acc.get();
  };

  ConicalCoords out;
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  out.r = std::sqrt(r2);
  out.s.resize(d - 1);
  for (int j = 0; j < d - 1; ++j) {
    const double width = a[j + 1] - a[j];
    double lo = a[j], hi = a[j + 1];
    // move strictly inside; f -> +inf at a_j+, -inf at a_(j+1)-
    double dl = 0.25 * width;
    while (!(f(a[j] + dl) > 0.0)) dl *= 0.5;
    lo = a[j] + dl;
    double dh = 0.25 * width;
    while (!(f(a[j + 1] - dh) < 0.0)) dh *= 0.5;
    hi = a[j + 1] - dh;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (f(mid) > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    out.s[j] = 0.5 * (lo + hi);
  }
  return out;
}

std::vector<double> conical_to_cartesian(const ConicalCoords& coords, const std::vector<double>& a,
                                         const std::vector<int>& signs) {
  const int d = (int)a.size();
  if ((int)coords.s.size() != d - 1)
    throw PreconditionViolation("conical_to_cartesian: s must have length d-1");
  if ((int)signs.size() != d) throw PreconditionViolation("conical_to_cartesian: signs length mismatch");
  for (int j = 0; j < d - 1; ++j)
    if (!(a[j] < coords.s[j] && coords.s[j] < a[j + 1]))
      throw InterlacingViolation("conical_to_cartesian: s does not interlace a");

  std::vector<double> x(d);
  for (int j = 0; j < d; ++j) {
    double num = 1.0, den = 1.0;
    for (int i = 0; i < d - 1; ++i) num *= a[j] - coords.s[i];
    for (int i = 0; i < d; ++i)
      if (i != j) den *= a[j] - a[i];
    double rad = coords.r * coords.r * num / den;
    if (rad < 0.0) {
      if (rad > -1e-14 * coords.r * coords.r)
        rad = 0.0;
      else
        throw NegativeRadicand("conical_to_cartesian: inconsistent coordinates");
    }
    x[j] = (signs[j] >= 0 ? 1.0 : -1.0) * std::sqrt(rad);
  }
  return x;
}

std::vector<std::pair<double, double>> gauss_legendre(int n) {
  std::vector<std::pair<double, double>> nw(n);
  for (int i = 0; i < n; ++i) {
    // Newton from the Chebyshev-based estimate.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (n == 1) p1 = x;
      for (int l = 2; l <= n; ++l) {
        double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      double pn = (n == 0) ? 1.0 : p1;
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = pn / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nw[i] = {x, 2.0 / ((1.0 - x * x) * pp * pp)};
  }
  return nw;
}

std::vector<std::vector<double>> sphere_gram(const std::vector<HPoly<double>>& qs, int order) {
  if (qs.empty()) return {};
  const int d = qs[0].dim();
  if (d != 3) throw PreconditionViolation("sphere_gram: deterministic quadrature is d = 3 only");
  const int N = qs[0].degree();
  for (const auto& q : qs)
    if (q.dim() != d || q.degree() != N)
      throw PreconditionViolation("sphere_gram: mixed degrees rejected");
  if (order < 1) throw PreconditionViolation("sphere_gram: order must be >= 1");

  const auto nodes = gauss_legendre(order);
  const int n_phi = 2 * order + 2;
  const double w_phi = 2.0 * M_PI / n_phi;

  const size_t count = qs.size();
  std::vector<std::vector<double>> vals(count);
  std::vector<double> weights;
  for (const auto& [c, wc] : nodes) {
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int iphi = 0; iphi < n_phi; ++iphi) {
      const double phi = w_phi * iphi;
      std::vector<double> pt{c, sin_theta * std::cos(phi), sin_theta * std::sin(phi)};
      for (size_t i = 0; i < count; ++i) vals[i].push_back(qs[i].eval(pt));
      weights.push_back(wc * w_phi);
    }
  }

  std::vector<std::vector<double>> gram(count, std::vector<double>(count, 0.0));
  for (size_t i = 0; i < count; ++i)
    for (size_t j = i; j < count; ++j) {
      Accum acc;
      for (size_t p = 0; p < weights.size(); ++p) acc.add(weights[p] * vals[i][p] * vals[j][p]);
      gram[i][j] = gram[j][i] = acc.get();
    }
  return gram;
}

namespace {

double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

}  // namespace

QmcGram sphere_gram_qmc(const std::vector<HPoly<double>>& qs, int samples) {
  if (qs.empty()) return {{}, 0.0};
  const int d = qs[0].dim();
  const int N = qs[0].degree();
  for (const auto& q : qs)
    if (q.dim() != d || q.degree() != N)
      throw PreconditionViolation("sphere_gram_qmc: mixed degrees rejected");
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  if (d > 8) throw PreconditionViolation("sphere_gram_qmc: d too large");

  const size_t count = qs.size();
  const int blocks = 8;
  std::vector<std::vector<std::vector<double>>> block_sums(
      blocks, std::vector<std::vector<double>>(count, std::vector<double>(count, 0.0)));
  std::vector<int> block_n(blocks, 0);

  std::vector<double> pt(d), vals(count);
  for (int s = 0; s < samples; ++s) {
    // Halton point -> Gaussian via Box-Muller pairs -> normalize.
    double norm2 = 0.0;
    for (int j = 0; j < d; j += 2) {
      double u1 = halton(s + 1, primes[j]), u2 = halton(s + 1, primes[j + 1 < d ? j + 1 : 0]);
      u1 = std::min(std::max(u1, 1e-12), 1.0 - 1e-12);
      double rad = std::sqrt(-2.0 * std::log(u1));
      pt[j] = rad * std::cos(2.0 * M_PI * u2);
      if (j + 1 < d) pt[j + 1] = rad * std::sin(2.0 * M_PI * u2);
    }
    for (int j = 0; j < d; ++j) norm2 += pt[j] * pt[j];
    const double inv = 1.0 / std::sqrt(norm2);
    for (int j = 0; j < d; ++j) pt[j] *= inv;

    for (size_t i = 0; i < count; ++i) vals[i] = qs[i].eval(pt);
    const int b = s % blocks;
    block_n[b]++;
    for (size_t i = 0; i < count; ++i)
      for (size_t j = 0; j < count; ++j) block_sums[b][i][j] += vals[i] * vals[j];
  }

  // Surface area of S^(d-1).
  const double area = 2.0 * std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0);
  QmcGram out;
  out.gram.assign(count, std::vector<double>(count, 0.0));
  double var_acc = 0.0;
  size_t var_n = 0;
  for (size_t i = 0; i < count; ++i)
    for (size_t j = 0; j < count; ++j) {
      double mean = 0.0;
      std::vector<double> bm(blocks);
      for (int b = 0; b < blocks; ++b) {
        bm[b] = area * block_sums[b][i][j] / block_n[b];
        mean += bm[b];
      }
      mean /= blocks;
      out.gram[i][j] = mean;
      double v = 0.0;
      for (int b = 0; b < blocks; ++b) v += (bm[b] - mean) * (bm[b] - mean);
      var_acc += v / (blocks - 1) / blocks;
      ++var_n;
    }
  out.standard_error = std::sqrt(var_acc / std::max<size_t>(var_n, 1));
  return out;
}

long harmonic_pair_count(int d, int N) {
  // eps in {0,1}^d, m in N^(d-1), 2|m| + |eps| = N
  long total = 0;
  for (int abs_eps = N % 2; abs_eps <= std::min(d, N); abs_eps += 2) {
    long eps_choices = binomial(d, abs_eps);
    long target = (N - abs_eps) / 2;
    total += eps_choices * binomial(target + d - 2, d - 2);  // weak compositions
  }
  return total;
}

long spherical_harmonic_dim(int d, int N) {
  if (N == 0) return 1;
  return binomial(N + d - 1, d - 1) - binomial(N + d - 3, d - 1);
}

}  // namespace conical::harmonics
