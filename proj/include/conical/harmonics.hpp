#ifndef CONICAL_HARMONICS_HPP
#define CONICAL_HARMONICS_HPP

#include <vector>

#include "conical/cone.hpp"
#include "conical/hpoly.hpp"

namespace conical::harmonics {

/// Conical harmonic Q = x^eps * prod_k K_(xi_k), K_xi(x) = sum x_j^2/(xi-a_j),
/// together with its closed-form data.
struct ConicHarmonic {
  std::vector<double> a;
  std::vector<int> eps;
  std::vector<double> xi;
  HPoly<double> expanded;          // degree N = 2|xi| + |eps|
  double C_norm;                   // (-1)^(n(d-1)) prod (xi_k - a_j)^-1
  std::vector<double> P_factor;    // monic coeffs of prod (tau - xi_k), ascending
};

/// Expands Q with compensated accumulation. Throws DomainViolation if some
/// xi_k equals some a_j.
ConicHarmonic build_Q(const std::vector<double>& a, const std::vector<int>& eps,
                      const std::vector<double>& xi);

/// Exact expansion for rational xi (e.g. the xi = 0 solutions).
HPoly<Rat> build_Q_exact(const std::vector<Rat>& a, const std::vector<int>& eps,
                         const std::vector<Rat>& xi);

/// The n Niven bracket values: coefficient of 1/K_(xi_k) in deltaQ/Q. These
/// vanish exactly when Q is harmonic.
std::vector<double> laplacian_residual_factored(const ConicHarmonic& q);

/// max|coeff(laplacian Q)| / (N(N-1) max|coeff(Q)|), the scale-free
/// harmonicity measure used by the tests.
double relative_laplacian_residual(const HPoly<double>& q);

/// Numeric division with remainder by a single divisor; remainder is reported
/// relative to max|coeff(dividend)|.
struct NumericDivision {
  HPoly<double> quotient;
  double remainder_rel;
};
NumericDivision divide_numeric(const HPoly<double>& dividend, const HPoly<double>& divisor);

struct ConicalCoords {
  double r;
  std::vector<double> s;  // d-1 values interlacing a
};

/// Forward map on (0,inf)^d: r = |x| and the d-1 interlacing roots of
/// sum x_j^2/(s-a_j) = 0, one per open interval (a_j, a_j+1), found by
/// bisection (the function is strictly decreasing between consecutive poles).
ConicalCoords cartesian_to_conical(const std::vector<double>& x, const std::vector<double>& a);

/// Inverse via x_j^2 = r^2 prod_i (a_j-s_i) / prod_(i!=j) (a_j-a_i).
/// Throws InterlacingViolation / NegativeRadicand on inconsistent inputs.
std::vector<double> conical_to_cartesian(const ConicalCoords& coords, const std::vector<double>& a,
                                         const std::vector<int>& signs);

/// Gram matrix of the polynomials restricted to S^2 under Gauss-Legendre
/// (polar, `order` nodes) x trapezoid (azimuth, 2*order+2 points) quadrature;
/// exact for degree <= 2N once order >= N+1. d = 3 only; all inputs must
/// share d and N.
std::vector<std::vector<double>> sphere_gram(const std::vector<HPoly<double>>& qs, int order);

/// Quasi-Monte Carlo Gram on S^(d-1) for d > 3, with a blockwise standard
/// error estimate.
struct QmcGram {
  std::vector<std::vector<double>> gram;
  double standard_error;
};
QmcGram sphere_gram_qmc(const std::vector<HPoly<double>>& qs, int samples);

/// Gauss-Legendre nodes and weights on [-1, 1].
std::vector<std::pair<double, double>> gauss_legendre(int n);

/// Number of (eps, m) pairs with 2|m|+|eps| = N in dimension d; equals the
/// dimension of degree-N spherical harmonics.
long harmonic_pair_count(int d, int N);
long spherical_harmonic_dim(int d, int N);

}  // namespace conical::harmonics

#endif
