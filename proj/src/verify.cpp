#include "conical/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "conical/harmonics.hpp"
#include "conical/legendre.hpp"
#include "conical/niven.hpp"
#include "conical/pell.hpp"
#include "conical/poly_core.hpp"

namespace conical::verify {

namespace {

using conical::legendre::LegendreSpec;
using conical::niven::NivenProblem;

struct Check {
  bool ok = true;
  std::ostringstream msg;
  void fail(const std::string& why) {
    if (ok) {
      msg.str("");
      msg << why;
    }
    ok = false;
  }
  void note(const std::string& text) {
    if (ok) {
      if (!msg.str().empty()) msg << "; ";
      msg << text;
    }
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> t(count);
  for (int i = 0; i < count; ++i) t[i] = lo + (hi - lo) * i / (count - 1);
  return t;
}

// Random a in A^d with distinct nonzero rational components: d-1 random
// nonzero reciprocals, the last solves the sum-to-zero constraint.
ConeParams random_cone(std::mt19937& rng, int d) {
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 10);
  for (;;) {
    std::vector<Rat> recip;
    Rat sum(0);
    bool bad = false;
    for (int j = 0; j + 1 < d; ++j) {
      Rat r = make_rat(num(rng), den(rng));
      if (r == 0) {
        bad = true;
        break;
      }
      recip.push_back(r);
      sum += r;
    }
    if (bad || sum == 0) continue;
    recip.push_back(-sum);
    std::vector<Rat> a;
    for (const Rat& r : recip) a.push_back(1 / r);
    std::sort(a.begin(), a.end());
    bool distinct = true;
    for (size_t i = 0; i + 1 < a.size(); ++i)
      if (a[i] == a[i + 1]) distinct = false;
    if (!distinct) continue;
    return ConeParams(a);
  }
}

// All (eps, m) pairs in d = 3 with 2|m|+|eps| == N, or with the degree in
// [1, N] when at_most is set.
std::vector<std::pair<std::vector<int>, std::vector<int>>> families(int N, bool at_most) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  for (int e1 = 0; e1 <= 1; ++e1)
    for (int e2 = 0; e2 <= 1; ++e2)
      for (int e3 = 0; e3 <= 1; ++e3) {
        int abs_eps = e1 + e2 + e3;
        for (int m1 = 0; 2 * m1 + abs_eps <= N; ++m1)
          for (int m2 = 0; 2 * (m1 + m2) + abs_eps <= N; ++m2) {
            int deg = 2 * (m1 + m2) + abs_eps;
            if (at_most ? deg >= 1 : deg == N) out.push_back({{e1, e2, e3}, {m1, m2}});
          }
      }
  return out;
}

const std::vector<double> kDeskA{-1.0, 4.0 / 3.0, 4.0};

// ---- criteria ----

void c1_dimension_pattern(Check& c) {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 20 && c.ok; ++trial) {
    ConeParams cone = random_cone(rng, 3);
    for (int N = 1; N <= 8 && c.ok; ++N) {
      int want = (N == 2 || N == 5) ? 1 : 0;
      int got = dim_vanishing_space(cone, N);
      if (got != want)
        c.fail("d=3 trial " + std::to_string(trial) + " N=" + std::to_string(N) + ": dim=" +
               std::to_string(got) + " want " + std::to_string(want));
    }
  }
  for (int trial = 0; trial < 5 && c.ok; ++trial) {
    ConeParams cone = random_cone(rng, 4);
    for (int N = 2; N <= 7 && c.ok; ++N) {
      int want = (N == 2 || N == 6) ? 1 : 0;
      int got = dim_vanishing_space(cone, N);
      if (got != want)
        c.fail("d=4 trial " + std::to_string(trial) + " N=" + std::to_string(N) + ": dim=" +
               std::to_string(got) + " want " + std::to_string(want));
    }
  }
  c.note("20 random A^3 and 5 random A^4 cones match the {2, d+2} pattern exactly");
}

void c2_nongeneric_witness(Check& c) {
  ConeParams cone({make_rat(1), make_rat(1), make_rat(1), make_rat(-1, 3)});
  std::vector<int> excess;
  for (int N = 3; N <= 10; ++N) {
    if (N == 6) continue;
    if (dim_vanishing_space(cone, N) >= 1) excess.push_back(N);
  }
  if (excess.empty()) {
    c.fail("no N <= 10 outside {2,6} with dim >= 1 for the x^2+y^2+z^2-3w^2 cone");
    return;
  }
  std::string list;
  for (int N : excess) list += std::to_string(N) + " ";
  c.note("excess dimensions at N = " + list);
}

void c3_solver_contract(Check& c) {
  auto fams = families(14, true);
  int solved = 0;
  double worst = 0.0;
  for (const auto& [eps, m] : fams) {
    NivenProblem prob(kDeskA, eps, m);
    auto sol = niven::solve(prob, 1e-12);
    worst = std::max(worst, sol.residual_inf);
    if (sol.residual_inf > 1e-12) {
      c.fail("residual " + fmt(sol.residual_inf) + " at eps=" + std::to_string(eps[0]) +
             std::to_string(eps[1]) + std::to_string(eps[2]) + " m=(" + std::to_string(m[0]) +
             "," + std::to_string(m[1]) + ")");
      return;
    }
    if (!sol.region_check) {
      c.fail("solution escaped D_m");
      return;
    }
    if (!niven::hessian_positive_definite(prob, sol.xi)) {
      c.fail("Hessian not positive definite at a solution");
      return;
    }
    ++solved;
  }
  double worst_identity = 0.0;
  for (double delta : {1.0, 3.0}) {
    for (int n = 1; n <= 40; ++n) {
      auto mr = niven::endpoint_identities_refined(n, delta);
      worst_identity = std::max({worst_identity, mr.res_Av, mr.res_Aw});
      if (mr.res_Av > 1e-10 || mr.res_Aw > 1e-10) {
        c.fail("endpoint identities residual " + fmt(std::max(mr.res_Av, mr.res_Aw)) + " at n=" +
               std::to_string(n) + " delta=" + fmt(delta));
        return;
      }
    }
  }
  c.note(std::to_string(solved) + " families solved, worst residual " + fmt(worst) +
         ", worst identity residual " + fmt(worst_identity));
}

void c4_harmonicity(Check& c) {
  auto fams = families(14, true);
  double worst = 0.0;
  int exact_divisions = 0;
  ConeParams cone({make_rat(-1), make_rat(4, 3), make_rat(4)});
  for (const auto& [eps, m] : fams) {
    NivenProblem prob(kDeskA, eps, m);
    auto sol = niven::solve(prob, 1e-12);
    auto q = harmonics::build_Q(kDeskA, eps, sol.xi);
    double rel = harmonics::relative_laplacian_residual(q.expanded);
    worst = std::max(worst, rel);
    if (rel > 1e-9) {
      c.fail("Laplacian residual " + fmt(rel) + " at eps=" + std::to_string(eps[0]) +
             std::to_string(eps[1]) + std::to_string(eps[2]) + " m=(" + std::to_string(m[0]) +
             "," + std::to_string(m[1]) + ")");
      return;
    }
    bool has_zero = false;
    for (double x : sol.xi) has_zero = has_zero || std::fabs(x) < 1e-8;
    if (has_zero) {
      if (sol.xi.size() != 1) {
        c.fail("unexpected zero component in a multi-xi family");
        return;
      }
      auto exact = harmonics::build_Q_exact({make_rat(-1), make_rat(4, 3), make_rat(4)}, eps,
                                            {Rat(0)});
      auto quot = try_divide_exact(exact, cone.quadric());
      if (!quot) {
        c.fail("exact division of a xi=0 harmonic by K_a failed");
        return;
      }
      ++exact_divisions;
    }
  }
  c.note(std::to_string(fams.size()) + " expansions, worst relative residual " + fmt(worst) +
         ", " + std::to_string(exact_divisions) + " exact divisions by K_a");
}

niven::CurveTrace figure_trace(double tol) {
  return niven::trace_curve(niven::standard_curve(), {1, 1, 0}, {31, 13},
                            linspace(0.01, 0.99, 200), tol);
}

void c5_figure_trace(Check& c) {
  auto tr = figure_trace(1e-7);
  const int n = 44;
  for (size_t i = 0; i < tr.t.size(); ++i) {
    NivenProblem prob(niven::standard_curve().a_of_t(tr.t[i]), tr.eps, tr.m);
    if ((int)tr.xi[i].size() != n || !prob.in_domain(tr.xi[i])) {
      c.fail("branch ordering violated at t=" + fmt(tr.t[i]));
      return;
    }
  }
  double xi16_end = tr.xi.back()[15];
  double xi16_start = tr.xi.front()[15];
  if (!(std::fabs(xi16_end) <= 0.05))
    c.fail("xi_16(0.99) = " + fmt(xi16_end) + " not within 0.05 of 0");
  else if (!(xi16_start < 0.0))
    c.fail("xi_16(0.01) = " + fmt(xi16_start) + " not below 0");
  c.note("44 branches stay ordered; xi_16(0.01)=" + fmt(xi16_start) + ", xi_16(0.99)=" +
         fmt(xi16_end));
}

void c6_endpoint_asymptotics(Check& c) {
  auto tr = figure_trace(1e-7);
  auto t0 = niven::asymptotic_t0(tr.eps, tr.m);
  auto t1 = niven::asymptotic_t1(tr.eps, tr.m);
  double worst0 = 0.0, worst1 = 0.0;
  for (int k = 0; k < 31; ++k) {
    worst0 = std::max(worst0, std::fabs(tr.xi.front()[k] - t0.value_at_0[k]));
    worst1 = std::max(worst1, std::fabs(tr.xi.back()[k] - t1.value_at_1[k]));
  }
  if (worst0 > 0.02)
    c.fail("t->0 asymptotics off by " + fmt(worst0));
  else if (worst1 > 0.05)
    c.fail("t->1 asymptotics off by " + fmt(worst1));
  c.note("max deviations " + fmt(worst0) + " at t=0.01 and " + fmt(worst1) + " at t=0.99");
}

void c7_derivative_formula(Check& c) {
  const std::vector<int> eps{1, 1, 0}, m{31, 13};
  auto cf = niven::derivative_at_t1(eps, m);
  auto endpoint = niven::asymptotic_t1(eps, m);
  auto curve = niven::standard_curve();

  auto tr = figure_trace(1e-7);
  std::vector<double> warm = tr.xi.back();
  auto xi995 = niven::solve_on_curve(curve, eps, m, 0.995, warm, 1e-8);
  auto xi999 = niven::solve_on_curve(curve, eps, m, 0.999, xi995, 1e-8);

  double cf_norm = 0.0, err = 0.0;
  for (int k = 0; k < 31; ++k) {
    double d995 = (endpoint.value_at_1[k] - xi995[k]) / 0.005;
    double d999 = (endpoint.value_at_1[k] - xi999[k]) / 0.001;
    double fd = (5.0 * d999 - d995) / 4.0;
    cf_norm = std::max(cf_norm, std::fabs(cf[k]));
    err = std::max(err, std::fabs(fd - cf[k]));
  }
  double rel = err / cf_norm;
  if (!(rel <= 1e-3)) {
    c.fail("closed-form derivative mismatch, relative " + fmt(rel));
    return;
  }
  c.note("K = " + rat_to_string(niven::k_constant(eps, m)) + ", FD match relative " + fmt(rel));
}

void c8_wkb_bounds(Check& c) {
  const Rat width = make_rat(Int(1), Int("100000000000000000000"));  // 1e-20
  double worst_slack = 1.0;
  long sweeps = 0, gaps = 0;
  for (int ell = 1; ell <= 60; ++ell) {
    for (int m = 0; m <= ell; ++m) {
      LegendreSpec spec(ell, m);
      auto fr = legendre::make_frame(spec);
      const int pts = 2000;
      std::vector<double> x(pts), pbar(pts), amp(pts), bound(pts);
      for (int i = 0; i < pts; ++i) x[i] = -fr.eta + (i + 0.5) * (2.0 * fr.eta / pts);
      kernels::pbar_batch(ell, m, x.data(), pts, pbar.data());
      kernels::wkb_amp_bound_batch(fr.h, fr.eta, x.data(), pts, amp.data(), bound.data());
      for (int i = 0; i < pts; ++i) {
        double phase = legendre::phase_theta(fr, x[i]) / fr.h;
        double W = amp[i] * (spec.even_parity() ? std::cos(phase) : std::sin(phase));
        double err = std::fabs(W - pbar[i]);
        double cor52 = legendre::wkb_error_phase_form(fr, x[i]);
        if (err > bound[i]) {
          c.fail("amplitude-form bound violated at ell=" + std::to_string(ell) + " m=" +
                 std::to_string(m) + " x=" + fmt(x[i]) + ": err=" + fmt(err) + " bound=" +
                 fmt(bound[i]));
          return;
        }
        if (err > cor52) {
          c.fail("phase-form bound violated at ell=" + std::to_string(ell) + " m=" +
                 std::to_string(m) + " x=" + fmt(x[i]));
          return;
        }
      }
      ++sweeps;
      if (spec.zero_count() > 0) {
        auto zeros = legendre::zeros_exact(spec, width);
        for (const auto& enc : zeros) {
          auto pg = legendre::zero_phase_gap_from(spec, enc);
          if (pg.gap > pg.bound) {
            c.fail("phase gap " + fmt(pg.gap) + " above bound " + fmt(pg.bound) + " at ell=" +
                   std::to_string(ell) + " m=" + std::to_string(m) + " k=" +
                   std::to_string(enc.k));
            return;
          }
          worst_slack = std::min(worst_slack, (pg.bound - pg.gap) / pg.bound);
          ++gaps;
        }
      }
    }
  }
  c.note(std::to_string(sweeps) + " sweeps and " + std::to_string(gaps) +
         " certified zeros pass; smallest relative gap slack " + fmt(worst_slack));
}

void c9_pell_pipeline(Check& c) {
  auto sols = pell::enumerate(6);
  const long want_q[6] = {1, 2, 32, 67, 1087, 2276};
  for (int i = 0; i < 6; ++i)
    if (sols[i].q != want_q[i]) {
      c.fail("solution " + std::to_string(i + 1) + " has q=" + sols[i].q.get_str());
      return;
    }
  struct Named {
    long m1, m2;
    int e1, e2, e3;
  };
  const Named named[4] = {{1, 0, 0, 0, 0}, {1, 0, 1, 1, 1}, {31, 13, 1, 1, 0}, {67, 27, 0, 0, 1}};
  for (int i = 0; i < 4; ++i) {
    auto cand = pell::to_candidate(sols[i]);
    if (cand.m1 != named[i].m1 || cand.m2 != named[i].m2 || cand.eps[0] != named[i].e1 ||
        cand.eps[1] != named[i].e2 || cand.eps[2] != named[i].e3) {
      c.fail("candidate " + std::to_string(i + 1) + " parameters do not match the named case");
      return;
    }
  }
  auto all = pell::enumerate_until_q(Int(1000000));
  int nontrivial = 0;
  for (const auto& s : all) {
    auto cand = pell::to_candidate(s);
    if (cand.trivial()) continue;
    ++nontrivial;
    if (pell::quotient_bound(cand) > make_rat(33, 180)) {
      c.fail("quotient bound exceeded at q=" + s.q.get_str());
      return;
    }
  }
  c.note("q sequence 1,2,32,67,1087,2276; " + std::to_string(nontrivial) +
         " nontrivial candidates with q <= 1e6 satisfy the 33/180 bound exactly");
}

void c10_exclusion(Check& c) {
  auto sols = pell::enumerate(6);
  // (32, 90) in detail
  auto first = pell::exclusion_check(pell::to_candidate(sols[2]), 256);
  set_bigfloat_bits(256);
  const BigFloat phase_cap = BigFloat(33) / 180 * const_pi<BigFloat>();
  if (!(first.nu < BigFloat("0.304"))) {
    c.fail("nu bound violated for (32,90)");
    return;
  }
  if (!(first.theta_at_nu_cap >= BigFloat("0.5818"))) {
    c.fail("theta(1/sqrt3) at the nu cap is " + first.theta_at_nu_cap.str(10) + " < 0.5818");
    return;
  }
  if (!(first.phase_bound <= phase_cap)) {
    c.fail("phase bound exceeds (33/180)pi for (32,90)");
    return;
  }
  if (!(first.cor53_bound <= BigFloat("0.002"))) {
    c.fail("Cor-5.3 bound exceeds 0.002 for (32,90)");
    return;
  }
  if (!(first.margin >= BigFloat("0.003")) || !first.excluded) {
    c.fail("margin " + first.margin.str(10) + " below 0.003 for (32,90)");
    return;
  }
  if (!first.zero_cross_checked || !first.zero_below_target) {
    c.fail("certified zero of P^27_90 not strictly below 1/sqrt(3)");
    return;
  }
  double margins[4];
  margins[0] = first.margin.convert_to<double>();
  for (int i = 3; i <= 5; ++i) {
    auto rep = pell::exclusion_check(pell::to_candidate(sols[i]), 256);
    margins[i - 2] = rep.margin.convert_to<double>();
    if (!rep.excluded || !(rep.margin > 0)) {
      c.fail("candidate with q=" + sols[i].q.get_str() + " not excluded");
      return;
    }
  }
  c.note("margins " + fmt(margins[0]) + ", " + fmt(margins[1]) + ", " + fmt(margins[2]) + ", " +
         fmt(margins[3]) + "; certified zeta_16 < 1/sqrt(3)");
}

void c11_orthogonality(Check& c) {
  for (int N : {5, 8}) {
    auto fams = families(N, false);
    std::vector<HPoly<double>> qs;
    for (const auto& [eps, m] : fams) {
      NivenProblem prob(kDeskA, eps, m);
      auto sol = niven::solve(prob, 1e-12);
      qs.push_back(harmonics::build_Q(kDeskA, eps, sol.xi).expanded);
    }
    auto gram = harmonics::sphere_gram(qs, 2 * N + 2);
    double worst = 0.0;
    for (size_t i = 0; i < qs.size(); ++i)
      for (size_t j = 0; j < qs.size(); ++j) {
        if (i == j) continue;
        worst = std::max(worst, std::fabs(gram[i][j]) / std::sqrt(gram[i][i] * gram[j][j]));
      }
    if (worst > 1e-8) {
      c.fail("off-diagonal ratio " + fmt(worst) + " at N=" + std::to_string(N) + " (" +
             std::to_string(qs.size()) + " harmonics)");
      return;
    }
    c.note("N=" + std::to_string(N) + ": " + std::to_string(qs.size()) +
           " harmonics, worst off-diagonal ratio " + fmt(worst));
  }
}

void c12_recursion_sanity(Check& c) {
  ConeParams cone({make_rat(-1), make_rat(4, 3), make_rat(4)});
  // Pure Laplacian: the seed propagates, everything else stays zero.
  CoeffSeries empty;
  empty.d = 3;
  auto q = taylor_recursion(cone, empty, 5, Rat(1));
  for (int ell = 1; ell <= 5; ++ell) {
    if (ell == 3) continue;
    if (!q[ell].is_zero()) {
      c.fail("pure-Laplacian recursion has nonzero q_" + std::to_string(ell));
      return;
    }
  }
  HPoly<Rat> seed = HPoly<Rat>::monomial(3, {1, 1, 1}, Rat(1));
  if (!(q[3] == seed)) {
    c.fail("q_3 does not equal the seed x1 x2 x3");
    return;
  }

  // Helmholtz-type perturbation c_0 = 1 through order 7.
  CoeffSeries helm;
  helm.d = 3;
  helm.c0.emplace(0, HPoly<Rat>::constant(3, Rat(1)));
  auto qh = taylor_recursion(cone, helm, 7, Rat(1));
  const HPoly<Rat> u = cone.quadric();
  for (int ell = 1; ell <= 7; ++ell) {
    HPoly<Rat> lhs = (u * qh[ell]).laplacian();
    HPoly<Rat> rhs = recursion_rhs(cone, helm, qh, ell);
    if (!(lhs == rhs)) {
      c.fail("recursion residual nonzero at order " + std::to_string(ell));
      return;
    }
  }
  if (qh[5].is_zero() || qh[7].is_zero()) {
    c.fail("perturbed recursion left q_5 or q_7 zero");
    return;
  }
  c.note("seed propagates; perturbed series satisfies the recursion exactly through order 7");
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds; 0 = none
  std::function<void(Check&)> fn;
};

const Criterion kCriteria[] = {
    {1, "generic dimension pattern", 120, c1_dimension_pattern},
    {2, "non-generic witness cone", 0, c2_nongeneric_witness},
    {3, "Niven solver contract", 60, c3_solver_contract},
    {4, "harmonicity of expanded Q", 120, c4_harmonicity},
    {5, "figure trace reproduction", 300, c5_figure_trace},
    {6, "endpoint asymptotics", 0, c6_endpoint_asymptotics},
    {7, "derivative at t=1", 0, c7_derivative_formula},
    {8, "WKB error bounds", 600, c8_wkb_bounds},
    {9, "Pell pipeline", 0, c9_pell_pipeline},
    {10, "exclusion reproduction", 300, c10_exclusion},
    {11, "sphere orthogonality", 0, c11_orthogonality},
    {12, "series recursion sanity", 0, c12_recursion_sanity},
};

}  // namespace

std::vector<CriterionResult> run(const std::vector<int>& only) {
  std::vector<CriterionResult> out;
  for (const auto& crit : kCriteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), crit.id) == only.end()) continue;
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      crit.fn(c);
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.ok && crit.time_limit > 0 && secs > crit.time_limit)
      c.fail("runtime " + fmt(secs) + "s exceeds the " + fmt(crit.time_limit) + "s limit");
    out.push_back({crit.id, crit.name, c.ok, c.msg.str(), secs});
  }
  return out;
}

int report(const std::vector<CriterionResult>& results) {
  int failures = 0;
  for (const auto& r : results) {
    std::printf("%s criterion %2d: %s [%.1fs] %s\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds, r.detail.c_str());
    if (!r.pass) ++failures;
  }
  return failures;
}

}  // namespace conical::verify
