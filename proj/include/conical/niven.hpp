#ifndef CONICAL_NIVEN_HPP
#define CONICAL_NIVEN_HPP

#include <functional>
#include <string>
#include <vector>

#include "conical/errors.hpp"
#include "conical/rational.hpp"

namespace conical::niven {

/// Parameters (a, eps, m) of Niven's equations. Components of the solution
/// live in the open bands (a_j, a_{j+1}); band j holds m_j of them, all
/// strictly ordered (the domain D_m).
class NivenProblem {
 public:
  NivenProblem(std::vector<double> a, std::vector<int> eps, std::vector<int> m);

  int d() const { return (int)a_.size(); }
  int n() const { return n_; }
  int degree() const { return degree_; }  // N = 2|m| + |eps|

  const std::vector<double>& a() const { return a_; }
  const std::vector<int>& eps() const { return eps_; }
  const std::vector<int>& m() const { return m_; }

  /// Band index (0-based) of solution component k (0-based).
  int band(int k) const { return band_[k]; }
  double band_lo(int k) const { return a_[band_[k]]; }
  double band_hi(int k) const { return a_[band_[k] + 1]; }

  /// True iff xi lies strictly inside D_m.
  bool in_domain(const std::vector<double>& xi) const;

 private:
  std::vector<double> a_;
  std::vector<int> eps_, m_, band_;
  int n_, degree_;
};

struct NivenSolution {
  std::vector<double> xi;
  double residual_inf;
  bool region_check;
};

/// Left sides of Niven's equations at xi (one entry per component).
std::vector<double> residual(const NivenProblem& p, const std::vector<double>& xi);

struct PotentialEval {
  double value;
  std::vector<double> grad;  // equals -residual componentwise
  std::vector<double> hess;  // n x n, row major, positive definite on D_m
};

/// The convex barrier potential whose critical points solve Niven's
/// equations. The pair term counts each unordered pair once with weight 4,
/// which is what makes grad = -residual hold identically.
PotentialEval potential(const NivenProblem& p, const std::vector<double>& xi);

/// Per-band Chebyshev points, the default interior start.
std::vector<double> chebyshev_start(const NivenProblem& p);

/// Cholesky-based positive definiteness check of the potential's Hessian.
bool hessian_positive_definite(const NivenProblem& p, const std::vector<double>& xi);

/// Damped Newton on D_m: backtracking factor 1/2, steps capped at 0.95x the
/// distance to the nearest domain wall. Throws NonConvergence with the last
/// residual on failure.
NivenSolution solve(const NivenProblem& p, double tol = 1e-12);
NivenSolution solve_from(const NivenProblem& p, std::vector<double> xi0, double tol);

/// Newton driven to the residual's conditioning floor: returns the best
/// iterate seen instead of enforcing a tolerance. The reported residual_inf
/// tells the caller what was achievable; components are accurate to machine
/// precision even when stiff wall terms keep the residual itself large.
NivenSolution solve_deep(const NivenProblem& p, std::vector<double> xi0);

struct Curve {
  std::string name;
  std::function<std::vector<double>(double)> a_of_t;
};

/// a(t) = (-1, 2/(1+t), 2/(1-t)): round cone at t=0, degenerate pair of
/// planes as t -> 1.
Curve standard_curve();
/// The variant a(t) = (-1, 2/(2+t), 2/(2-t)).
Curve caption_curve();

struct CurveTrace {
  std::string curve_name;
  std::vector<int> eps, m;
  std::vector<double> t;
  std::vector<std::vector<double>> xi;  // one row per grid point
};

/// Continuation along the curve: each grid sample is fully converged, warm
/// started from its predecessor; failed steps are bisected down to 1e-9
/// before giving up with StepFailure.
CurveTrace trace_curve(const Curve& curve, const std::vector<int>& eps, const std::vector<int>& m,
                       const std::vector<double>& t_grid, double tol = 1e-12);

/// One converged solution on the curve, warm started from `warm` (may be
/// empty). Used to extend traces toward t = 1.
std::vector<double> solve_on_curve(const Curve& curve, const std::vector<int>& eps,
                                   const std::vector<int>& m, double t, std::vector<double> warm,
                                   double tol = 1e-12);

/// Endpoint asymptotics at t -> 0 for the standard curve family:
/// xi_k(0) = -1 + 3 zeta_k^2 for k <= m1 (zeta_k certified zeros of
/// P^(2m2+e2+e3)_N), and xi_k(t) ~ 2 + slope * t for k > m1. Two closed-form
/// candidates exist for the slope numerator (eps2 vs eps3); both are
/// reported. Tracing confirms the eps2 form; see the continuation tests.
struct AsymptoticT0 {
  std::vector<double> value_at_0;  // size m1
  std::vector<double> slope_eps2;  // size m2, the validated form
  std::vector<double> slope_eps3;  // size m2, the alternate reading
};
AsymptoticT0 asymptotic_t0(const std::vector<int>& eps, const std::vector<int>& m);

/// Endpoint behaviour at t -> 1: bounded components converge to
/// -cos((2k-1+eps1)pi/(2m1+eps1+eps2)); the rest have simple poles with
/// coefficients 2(1 - zeta~^2) read off certified zeros of P^(2m1+e1+e2)_N.
struct AsymptoticT1 {
  std::vector<double> value_at_1;  // size m1
  std::vector<double> pole_coeff;  // size m2, for k = m1+1..|m| in order
};
AsymptoticT1 asymptotic_t1(const std::vector<int>& eps, const std::vector<int>& m);

/// Residuals of the two closed-form identities of the endpoint linear system
/// (A v = (xi_k-1)^-2 and A w = 1) for xi solving the symmetric two-point
/// problem with weight delta.
struct IdentityResiduals {
  double res_Av;
  double res_Aw;
};
IdentityResiduals endpoint_identities(const std::vector<double>& xi, double delta);

/// Same identities evaluated at a 128-bit refinement of the solution. Double
/// representation of xi saturates the identity residuals near 1e-10 for the
/// large-n stiff cases; the refined check reports the residuals of the
/// identities themselves rather than that representation floor.
IdentityResiduals endpoint_identities_refined(int n, double delta);

/// Solution of delta/(xi_k-1) + delta/(xi_k+1) + 4 sum 1/(xi_k-xi_l) = 0
/// with n strictly ordered components in (-1,1); delta must be 1 or 3. The
/// default tolerance accounts for the residual's conditioning when endpoint
/// components sit close to the walls (large n); the components themselves are
/// accurate to full precision there.
std::vector<double> solve_symmetric_pair(int n, double delta, double tol = 1e-9);

/// K = 1/2 + (2m2+e3)(4m1+2m2+2e1+2e2+e3+1) / (2(2m1+e1+e2+1)), exact.
Rat k_constant(const std::vector<int>& eps, const std::vector<int>& m);

/// Closed-form xi_k'(1) = -(1+xi_k(1))/4 + K (1-xi_k(1)^2)/(4m1+4eps1-2)
/// for k <= m1. Requires eps1 == eps2.
std::vector<double> derivative_at_t1(const std::vector<int>& eps, const std::vector<int>& m);

}  // namespace conical::niven

#endif
