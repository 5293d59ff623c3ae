#include "conical/niven.hpp"

#include <algorithm>
#include <cmath>

#include "conical/bigfloat.hpp"
#include "conical/legendre.hpp"

namespace conical::niven {

namespace {

// Neumaier-compensated accumulator; the residual contract (1e-12 absolute)
// needs better than naive summation when individual terms are large.
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

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

// Dense LLT; returns false if a pivot is not strictly positive.
bool cholesky_solve(std::vector<double> h, std::vector<double> rhs, int n,
                    std::vector<double>& out) {
  for (int j = 0; j < n; ++j) {
    double d = h[j * n + j];
    for (int k = 0; k < j; ++k) d -= h[j * n + k] * h[j * n + k];
    if (!(d > 0.0)) return false;
    d = std::sqrt(d);
    h[j * n + j] = d;
    for (int i = j + 1; i < n; ++i) {
      double v = h[i * n + j];
      for (int k = 0; k < j; ++k) v -= h[i * n + k] * h[j * n + k];
      h[i * n + j] = v / d;
    }
  }
  for (int i = 0; i < n; ++i) {
    double v = rhs[i];
    for (int k = 0; k < i; ++k) v -= h[i * n + k] * rhs[k];
    rhs[i] = v / h[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double v = rhs[i];
    for (int k = i + 1; k < n; ++k) v -= h[k * n + i] * rhs[k];
    rhs[i] = v / h[i * n + i];
  }
  out = std::move(rhs);
  return true;
}

}  // namespace

NivenProblem::NivenProblem(std::vector<double> a, std::vector<int> eps, std::vector<int> m)
    : a_(std::move(a)), eps_(std::move(eps)), m_(std::move(m)) {
  const int d = (int)a_.size();
  if (d < 2) throw PreconditionViolation("NivenProblem: need d >= 2");
  if ((int)eps_.size() != d) throw PreconditionViolation("NivenProblem: eps must have length d");
  if ((int)m_.size() != d - 1)
    throw PreconditionViolation("NivenProblem: m must have length d-1");
  for (int j = 0; j + 1 < d; ++j)
    if (!(a_[j] < a_[j + 1])) throw PreconditionViolation("NivenProblem: a must be strictly ascending");
  for (int e : eps_)
    if (e != 0 && e != 1) throw PreconditionViolation("NivenProblem: eps entries must be 0 or 1");
  n_ = 0;
  for (int mj : m_) {
    if (mj < 0) throw PreconditionViolation("NivenProblem: m entries must be >= 0");
    n_ += mj;
  }
  int abs_eps = 0;
  for (int e : eps_) abs_eps += e;
  degree_ = 2 * n_ + abs_eps;
  band_.reserve(n_);
  for (int j = 0; j < d - 1; ++j)
    for (int i = 0; i < m_[j]; ++i) band_.push_back(j);
}

bool NivenProblem::in_domain(const std::vector<double>& xi) const {
  if ((int)xi.size() != n_) return false;
  for (int k = 0; k < n_; ++k) {
    if (!(band_lo(k) < xi[k] && xi[k] < band_hi(k))) return false;
    if (k > 0 && band_[k] == band_[k - 1] && !(xi[k - 1] < xi[k])) return false;
  }
  return true;
}

std::vector<double> residual(const NivenProblem& p, const std::vector<double>& xi) {
  const int n = p.n(), d = p.d();
  std::vector<double> r(n);
  for (int k = 0; k < n; ++k) {
    Accum acc;
    for (int j = 0; j < d; ++j) {
      double diff = xi[k] - p.a()[j];
      if (diff == 0.0) throw DomainViolation("residual: xi hits a cone parameter");
      acc.add((1.0 + 2.0 * p.eps()[j]) / diff);
    }
    for (int l = 0; l < n; ++l) {
      if (l == k) continue;
      double diff = xi[k] - xi[l];
      if (diff == 0.0) throw DomainViolation("residual: coincident xi components");
      acc.add(4.0 / diff);
    }
    r[k] = acc.get();
  }
  return r;
}

PotentialEval potential(const NivenProblem& p, const std::vector<double>& xi) {
  const int n = p.n(), d = p.d();
  PotentialEval out;
  Accum val;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < d; ++j) {
      double diff = xi[k] - p.a()[j];
      if (diff == 0.0) throw DomainViolation("potential: xi hits a cone parameter");
      val.add(-(1.0 + 2.0 * p.eps()[j]) * std::log(std::fabs(diff)));
    }
    for (int l = k + 1; l < n; ++l) {
      double diff = xi[l] - xi[k];
      if (diff == 0.0) throw DomainViolation("potential: coincident xi components");
      val.add(-4.0 * std::log(std::fabs(diff)));
    }
  }
  out.value = val.get();

  std::vector<double> res = residual(p, xi);
  out.grad.resize(n);
  for (int k = 0; k < n; ++k) out.grad[k] = -res[k];

  out.hess.assign((size_t)n * n, 0.0);
  for (int k = 0; k < n; ++k) {
    Accum diag;
    for (int j = 0; j < d; ++j) {
      double diff = xi[k] - p.a()[j];
      diag.add((1.0 + 2.0 * p.eps()[j]) / (diff * diff));
    }
    for (int l = 0; l < n; ++l) {
      if (l == k) continue;
      double diff = xi[k] - xi[l];
      double w = 4.0 / (diff * diff);
      diag.add(w);
      out.hess[(size_t)k * n + l] = -w;
    }
    out.hess[(size_t)k * n + k] = diag.get();
  }
  return out;
}

bool hessian_positive_definite(const NivenProblem& p, const std::vector<double>& xi) {
  const int n = p.n();
  if (n == 0) return true;
  PotentialEval pe = potential(p, xi);
  std::vector<double> dummy;
  return cholesky_solve(pe.hess, std::vector<double>(n, 0.0), n, dummy);
}

std::vector<double> chebyshev_start(const NivenProblem& p) {
  std::vector<double> xi;
  xi.reserve(p.n());
  const auto& m = p.m();
  for (int j = 0; j < p.d() - 1; ++j) {
    int c = m[j];
    if (c == 0) continue;
    double lo = p.a()[j], hi = p.a()[j + 1];
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 1; i <= c; ++i)
      xi.push_back(mid - half * std::cos((2.0 * i - 1.0) * M_PI / (2.0 * c)));
  }
  return xi;
}

namespace {

// Largest step fraction keeping xi + lambda*s strictly inside D_m, before the
// 0.95 fraction-to-boundary cap.
double max_step(const NivenProblem& p, const std::vector<double>& xi,
                const std::vector<double>& s) {
  double lam = HUGE_VAL;
  const int n = p.n();
  for (int k = 0; k < n; ++k) {
    if (s[k] > 0.0) lam = std::min(lam, (p.band_hi(k) - xi[k]) / s[k]);
    if (s[k] < 0.0) lam = std::min(lam, (p.band_lo(k) - xi[k]) / s[k]);
    if (k > 0 && p.band(k) == p.band(k - 1)) {
      double ds = s[k - 1] - s[k];
      if (ds > 0.0) lam = std::min(lam, (xi[k] - xi[k - 1]) / ds);
    }
  }
  return lam;
}

}  // namespace

namespace {

NivenSolution newton_loop(const NivenProblem& p, std::vector<double> xi, double tol,
                          bool best_effort) {
  const int n = p.n();
  if (n == 0) return {std::vector<double>{}, 0.0, true};
  if (!p.in_domain(xi)) throw PreconditionViolation("solve: start point outside D_m");

  std::vector<double> best_xi = xi;
  double best_res = inf_norm(residual(p, xi));
  int stalls = 0;
  for (int iter = 0; iter < 400; ++iter) {
    std::vector<double> res = residual(p, xi);
    double res_inf = inf_norm(res);
    if (res_inf < best_res) {
      best_res = res_inf;
      best_xi = xi;
    }
    if (res_inf <= tol) return {xi, res_inf, p.in_domain(xi)};

    PotentialEval pe = potential(p, xi);
    std::vector<double> step;
    std::vector<double> h = pe.hess;
    bool ok = false;
    for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
      ok = cholesky_solve(h, res, n, step);
      if (!ok) {
        double ridge = 0.0;
        for (int i = 0; i < n; ++i) ridge = std::max(ridge, std::fabs(pe.hess[(size_t)i * n + i]));
        ridge *= std::pow(10.0, attempt - 12);
        h = pe.hess;
        for (int i = 0; i < n; ++i) h[(size_t)i * n + i] += ridge;
      }
    }
    if (!ok) {
      if (best_effort) return {best_xi, best_res, p.in_domain(best_xi)};
      throw NonConvergence("solve: Hessian factorization failed", res_inf);
    }

    double lam = std::min(1.0, 0.95 * max_step(p, xi, step));
    bool accepted = false;
    const double phi0 = pe.value;
    for (; lam > 1e-18; lam *= 0.5) {
      std::vector<double> trial(n);
      for (int k = 0; k < n; ++k) trial[k] = xi[k] + lam * step[k];
      if (!p.in_domain(trial)) continue;
      double phi1;
      try {
        phi1 = potential(p, trial).value;
      } catch (const DomainViolation&) {
        continue;
      }
      if (phi1 <= phi0 + 1e-12 * (1.0 + std::fabs(phi0))) {
        xi = std::move(trial);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (best_effort) return {best_xi, best_res, p.in_domain(best_xi)};
      throw NonConvergence("solve: line search stalled", res_inf);
    }

    // Sub-ulp steps mean the residual is at its conditioning floor; further
    // iterations cannot move xi.
    double scale = 1.0;
    for (double v : xi) scale = std::max(scale, std::fabs(v));
    if (lam * inf_norm(step) < 4e-16 * scale) {
      if (++stalls >= 2) {
        double now = inf_norm(residual(p, xi));
        if (now < best_res) {
          best_res = now;
          best_xi = xi;
        }
        if (best_effort) return {best_xi, best_res, p.in_domain(best_xi)};
        throw NonConvergence("solve: residual floor reached above tol", now);
      }
    } else {
      stalls = 0;
    }
  }
  double res_inf = inf_norm(residual(p, xi));
  if (res_inf < best_res) {
    best_res = res_inf;
    best_xi = xi;
  }
  if (best_res <= tol || best_effort) return {best_xi, best_res, p.in_domain(best_xi)};
  throw NonConvergence("solve: iteration limit reached", best_res);
}

}  // namespace

NivenSolution solve_from(const NivenProblem& p, std::vector<double> xi, double tol) {
  if (tol <= 0) throw PreconditionViolation("solve: tol must be positive");
  return newton_loop(p, std::move(xi), tol, false);
}

NivenSolution solve_deep(const NivenProblem& p, std::vector<double> xi0) {
  return newton_loop(p, std::move(xi0), 0.0, true);
}

NivenSolution solve(const NivenProblem& p, double tol) {
  return solve_from(p, chebyshev_start(p), tol);
}

Curve standard_curve() {
  return {"a(t)=(-1,2/(1+t),2/(1-t))",
          [](double t) { return std::vector<double>{-1.0, 2.0 / (1.0 + t), 2.0 / (1.0 - t)}; }};
}

Curve caption_curve() {
  return {"a(t)=(-1,2/(2+t),2/(2-t))",
          [](double t) { return std::vector<double>{-1.0, 2.0 / (2.0 + t), 2.0 / (2.0 - t)}; }};
}

std::vector<double> solve_on_curve(const Curve& curve, const std::vector<int>& eps,
                                   const std::vector<int>& m, double t, std::vector<double> warm,
                                   double tol) {
  NivenProblem prob(curve.a_of_t(t), eps, m);
  if (warm.empty() || !prob.in_domain(warm)) warm = chebyshev_start(prob);
  return solve_from(prob, std::move(warm), tol).xi;
}

namespace {

// Warm-started solve at target t; on corrector failure bisect the parameter
// step until it converges or the step drops below 1e-9.
std::vector<double> continue_to(const Curve& curve, const std::vector<int>& eps,
                                const std::vector<int>& m, double t_from, double t_to,
                                std::vector<double> xi, double tol) {
  double t_cur = t_from;
  int safety = 0;
  while (t_cur != t_to) {
    double t_next = t_to;
    for (;;) {
      try {
        NivenProblem prob(curve.a_of_t(t_next), eps, m);
        std::vector<double> start = xi;
        if (start.empty() || !prob.in_domain(start)) start = chebyshev_start(prob);
        xi = solve_from(prob, std::move(start), tol).xi;
        t_cur = t_next;
        break;
      } catch (const NonConvergence&) {
        double half = 0.5 * (t_next - t_cur);
        if (std::fabs(half) < 1e-9)
          throw StepFailure("trace_curve: continuation step underflow near t=" +
                            std::to_string(t_next));
        t_next = t_cur + half;
      }
    }
    if (++safety > 100000) throw StepFailure("trace_curve: too many continuation substeps");
  }
  return xi;
}

}  // namespace

CurveTrace trace_curve(const Curve& curve, const std::vector<int>& eps, const std::vector<int>& m,
                       const std::vector<double>& t_grid, double tol) {
  if (t_grid.empty()) throw PreconditionViolation("trace_curve: empty grid");
  for (size_t i = 0; i + 1 < t_grid.size(); ++i)
    if (!(t_grid[i] < t_grid[i + 1]))
      throw PreconditionViolation("trace_curve: grid must be strictly increasing");

  CurveTrace tr;
  tr.curve_name = curve.name;
  tr.eps = eps;
  tr.m = m;
  tr.t = t_grid;
  tr.xi.reserve(t_grid.size());

  NivenProblem first(curve.a_of_t(t_grid[0]), eps, m);
  std::vector<double> xi = solve_from(first, chebyshev_start(first), tol).xi;
  tr.xi.push_back(xi);
  for (size_t i = 1; i < t_grid.size(); ++i) {
    xi = continue_to(curve, eps, m, t_grid[i - 1], t_grid[i], std::move(xi), tol);
    tr.xi.push_back(xi);
  }
  return tr;
}

AsymptoticT0 asymptotic_t0(const std::vector<int>& eps, const std::vector<int>& m) {
  if (eps.size() != 3 || m.size() != 2)
    throw PreconditionViolation("asymptotic_t0: the curve family is three-dimensional");
  const int m1 = m[0], m2 = m[1];
  const int N = 2 * (m1 + m2) + eps[0] + eps[1] + eps[2];
  const int order = 2 * m2 + eps[1] + eps[2];

  AsymptoticT0 out;
  if (m1 > 0) {
    legendre::LegendreSpec spec(N, order);
    if (spec.zero_count() < m1)
      throw IndexOutOfRange("asymptotic_t0: fewer certified zeros than m1");
    auto zeros = legendre::zeros_exact(spec, make_rat(1, 1000000000000L));
    for (int k = 0; k < m1; ++k) {
      double z = to_double(zeros[k].mid());
      out.value_at_0.push_back(-1.0 + 3.0 * z * z);
    }
  }
  const int denom = 2 * m2 + eps[1] + eps[2];
  for (int j = 1; j <= m2; ++j) {
    out.slope_eps2.push_back(-2.0 * std::cos((2.0 * j - 1.0 + eps[1]) * M_PI / denom));
    out.slope_eps3.push_back(-2.0 * std::cos((2.0 * j - 1.0 + eps[2]) * M_PI / denom));
  }
  return out;
}

AsymptoticT1 asymptotic_t1(const std::vector<int>& eps, const std::vector<int>& m) {
  if (eps.size() != 3 || m.size() != 2)
    throw PreconditionViolation("asymptotic_t1: the curve family is three-dimensional");
  const int m1 = m[0], m2 = m[1];
  const int N = 2 * (m1 + m2) + eps[0] + eps[1] + eps[2];
  const int order = 2 * m1 + eps[0] + eps[1];

  AsymptoticT1 out;
  for (int k = 1; k <= m1; ++k)
    out.value_at_1.push_back(-std::cos((2.0 * k - 1.0 + eps[0]) * M_PI / order));
  if (m2 > 0) {
    legendre::LegendreSpec spec(N, order);
    if (spec.zero_count() < m2)
      throw IndexOutOfRange("asymptotic_t1: fewer certified zeros than m2");
    auto zeros = legendre::zeros_exact(spec, make_rat(1, 1000000000000L));
    for (int k = m1 + 1; k <= m1 + m2; ++k) {
      double z = to_double(zeros[m1 + m2 - k].mid());  // index |m|-k+1, 1-based
      out.pole_coeff.push_back(2.0 * (1.0 - z * z));
    }
  }
  return out;
}

IdentityResiduals endpoint_identities(const std::vector<double>& xi, double delta) {
  const int n = (int)xi.size();
  if (n == 0) throw PreconditionViolation("endpoint_identities: empty xi");
  for (int k = 0; k < n; ++k) {
    if (xi[k] == 1.0 || xi[k] == -1.0) throw DomainViolation("endpoint_identities: xi hits +-1");
    for (int l = k + 1; l < n; ++l)
      if (xi[k] == xi[l]) throw DomainViolation("endpoint_identities: coincident xi components");
  }

  std::vector<double> A((size_t)n * n, 0.0);
  for (int k = 0; k < n; ++k) {
    Accum diag;
    double dm = xi[k] - 1.0, dp = xi[k] + 1.0;
    diag.add(delta / (dm * dm));
    diag.add(delta / (dp * dp));
    for (int l = 0; l < n; ++l) {
      if (l == k) continue;
      double diff = xi[k] - xi[l];
      double w = 4.0 / (diff * diff);
      diag.add(w);
      A[(size_t)k * n + l] = -w;
    }
    A[(size_t)k * n + k] = diag.get();
  }

  IdentityResiduals out{0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    Accum av, aw;
    for (int l = 0; l < n; ++l) {
      av.add(A[(size_t)k * n + l] * (1.0 + xi[l]) / (2.0 * delta));
      aw.add(A[(size_t)k * n + l] * (1.0 - xi[l] * xi[l]) / (4.0 * (n - 1) + 2.0 * delta));
    }
    double target = 1.0 / ((xi[k] - 1.0) * (xi[k] - 1.0));
    out.res_Av = std::max(out.res_Av, std::fabs(av.get() - target));
    out.res_Aw = std::max(out.res_Aw, std::fabs(aw.get() - 1.0));
  }
  return out;
}

IdentityResiduals endpoint_identities_refined(int n, double delta) {
  std::vector<double> seed = solve_symmetric_pair(n, delta, 1e-8);
  set_bigfloat_bits(128);
  std::vector<BigFloat> xi(seed.begin(), seed.end());
  const BigFloat d(delta);

  auto sys_residual = [&](const std::vector<BigFloat>& y, std::vector<BigFloat>& r) {
    for (int k = 0; k < n; ++k) {
      BigFloat acc = d / (y[k] - 1) + d / (y[k] + 1);
      for (int l = 0; l < n; ++l)
        if (l != k) acc += 4 / (y[k] - y[l]);
      r[k] = acc;
    }
  };

  std::vector<BigFloat> r(n), step(n);
  std::vector<BigFloat> J((size_t)n * n);
  for (int iter = 0; iter < 6; ++iter) {
    sys_residual(xi, r);
    for (int k = 0; k < n; ++k) {
      BigFloat diag = d / ((xi[k] - 1) * (xi[k] - 1)) + d / ((xi[k] + 1) * (xi[k] + 1));
      for (int l = 0; l < n; ++l) {
        if (l == k) continue;
        BigFloat w = 4 / ((xi[k] - xi[l]) * (xi[k] - xi[l]));
        diag += w;
        J[(size_t)k * n + l] = -w;
      }
      J[(size_t)k * n + k] = diag;
    }
    // Gaussian elimination with partial pivoting on (J, r); step = J^-1 r.
    std::vector<BigFloat> A = J;
    step = r;
    for (int c = 0; c < n; ++c) {
      int piv = c;
      for (int rr = c + 1; rr < n; ++rr)
        if (abs(A[(size_t)rr * n + c]) > abs(A[(size_t)piv * n + c])) piv = rr;
      if (piv != c) {
        for (int cc = 0; cc < n; ++cc) std::swap(A[(size_t)piv * n + cc], A[(size_t)c * n + cc]);
        std::swap(step[piv], step[c]);
      }
      for (int rr = c + 1; rr < n; ++rr) {
        BigFloat f = A[(size_t)rr * n + c] / A[(size_t)c * n + c];
        for (int cc = c; cc < n; ++cc) A[(size_t)rr * n + cc] -= f * A[(size_t)c * n + cc];
        step[rr] -= f * step[c];
      }
    }
    for (int rr = n - 1; rr >= 0; --rr) {
      for (int cc = rr + 1; cc < n; ++cc) step[rr] -= A[(size_t)rr * n + cc] * step[cc];
      step[rr] /= A[(size_t)rr * n + rr];
    }
    for (int k = 0; k < n; ++k) xi[k] += step[k];  // grad = -residual; J = -H
  }

  // identities at the refined point
  IdentityResiduals out{0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    BigFloat av = 0, aw = 0;
    for (int l = 0; l < n; ++l) {
      BigFloat akl;
      if (k == l) {
        akl = d / ((xi[k] - 1) * (xi[k] - 1)) + d / ((xi[k] + 1) * (xi[k] + 1));
        for (int l2 = 0; l2 < n; ++l2)
          if (l2 != k) akl += 4 / ((xi[k] - xi[l2]) * (xi[k] - xi[l2]));
      } else {
        akl = -4 / ((xi[k] - xi[l]) * (xi[k] - xi[l]));
      }
      av += akl * (1 + xi[l]) / (2 * d);
      aw += akl * (1 - xi[l] * xi[l]) / (4 * (n - 1) + 2 * d);
    }
    BigFloat rv = abs(av - 1 / ((xi[k] - 1) * (xi[k] - 1)));
    BigFloat rw = abs(aw - 1);
    out.res_Av = std::max(out.res_Av, rv.convert_to<double>());
    out.res_Aw = std::max(out.res_Aw, rw.convert_to<double>());
  }
  return out;
}

std::vector<double> solve_symmetric_pair(int n, double delta, double tol) {
  if (n < 1) throw PreconditionViolation("solve_symmetric_pair: n must be >= 1");
  int e;
  if (delta == 1.0)
    e = 0;
  else if (delta == 3.0)
    e = 1;
  else
    throw PreconditionViolation("solve_symmetric_pair: delta must be 1 or 3");
  NivenProblem prob({-1.0, 1.0}, {e, e}, {n});
  auto sol = solve_deep(prob, chebyshev_start(prob));
  if (sol.residual_inf > tol)
    throw NonConvergence("solve_symmetric_pair: floor above the requested tolerance",
                         sol.residual_inf);
  return sol.xi;
}

Rat k_constant(const std::vector<int>& eps, const std::vector<int>& m) {
  if (eps.size() != 3 || m.size() != 2)
    throw PreconditionViolation("k_constant: three-dimensional parameters required");
  long m1 = m[0], m2 = m[1], e1 = eps[0], e2 = eps[1], e3 = eps[2];
  return make_rat(1, 2) + make_rat((2 * m2 + e3) * (4 * m1 + 2 * m2 + 2 * e1 + 2 * e2 + e3 + 1),
                                   2 * (2 * m1 + e1 + e2 + 1));
}

std::vector<double> derivative_at_t1(const std::vector<int>& eps, const std::vector<int>& m) {
  if (eps.size() != 3 || m.size() != 2)
    throw PreconditionViolation("derivative_at_t1: three-dimensional parameters required");
  if (eps[0] != eps[1])
    throw PreconditionViolation("derivative_at_t1: requires eps1 == eps2");
  const int m1 = m[0];
  const double K = to_double(k_constant(eps, m));
  AsymptoticT1 endpoint = asymptotic_t1(eps, m);
  std::vector<double> out;
  out.reserve(m1);
  for (int k = 0; k < m1; ++k) {
    double x1 = endpoint.value_at_1[k];
    out.push_back(-(1.0 + x1) / 4.0 + K * (1.0 - x1 * x1) / (4.0 * m1 + 4.0 * eps[0] - 2.0));
  }
  return out;
}

}  // namespace conical::niven
