// Command-line front end: exact cone dimensions, Niven solving and tracing,
// conical harmonics, certified Legendre zeros, WKB sweeps, and the Pell
// exclusion pipeline.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conical/harmonics.hpp"
#include "conical/legendre.hpp"
#include "conical/niven.hpp"
#include "conical/pell.hpp"
#include "conical/poly_core.hpp"
#include "conical/serialize.hpp"
#include "conical/verify.hpp"

namespace {

using nlohmann::json;
using namespace conical;

std::vector<double> parse_double_vector(const std::string& s) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    std::string item = s.substr(pos, comma - pos);
    auto slash = item.find('/');
    if (slash != std::string::npos) {
      out.push_back(std::stod(item.substr(0, slash)) / std::stod(item.substr(slash + 1)));
    } else {
      out.push_back(std::stod(item));
    }
    pos = comma + 1;
  }
  return out;
}

std::vector<int> parse_int_vector(const std::string& s) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(std::stoi(s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);  // LF line endings everywhere
  if (!f) throw PreconditionViolation("cannot open output file '" + path + "'");
  return f;
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fputs(content.c_str(), stdout);
  } else {
    auto f = open_out(path);
    f << content;
  }
}

unsigned default_precision_bits() {
  if (const char* env = std::getenv("CONICAL_PRECISION_BITS")) {
    long v = std::atol(env);
    if (v >= 64) return (unsigned)v;
  }
  return 256;
}

niven::Curve curve_by_name(const std::string& name) {
  if (name == "standard") return niven::standard_curve();
  if (name == "caption") return niven::caption_curve();
  throw PreconditionViolation("unknown curve '" + name + "' (use standard or caption)");
}

std::string trace_csv(const niven::CurveTrace& tr) {
  const size_t n = tr.xi.empty() ? 0 : tr.xi[0].size();
  std::string out = "t";
  for (size_t k = 1; k <= n; ++k) out += ",xi_" + std::to_string(k);
  out += "\n";
  for (size_t i = 0; i < tr.t.size(); ++i) {
    out += double_repr(tr.t[i]);
    for (double v : tr.xi[i]) out += "," + double_repr(v);
    out += "\n";
  }
  return out;
}

json solution_json(const niven::NivenSolution& sol) {
  return {{"xi", sol.xi}, {"residual_inf", sol.residual_inf}, {"region_check", sol.region_check}};
}

json exclusion_json(const pell::ExclusionReport& rep) {
  return {{"p", rep.cand.p.get_str()},
          {"q", rep.cand.q.get_str()},
          {"m", {rep.cand.m1, rep.cand.m2}},
          {"eps", {rep.cand.eps[0], rep.cand.eps[1], rep.cand.eps[2]}},
          {"k0", rep.cand.k0},
          {"N", rep.cand.N},
          {"nu", rep.nu.str(30)},
          {"theta", rep.theta_at_target.str(30)},
          {"phase_bound", rep.phase_bound.str(30)},
          {"cor53_bound", rep.cor53_bound.str(30)},
          {"margin", rep.margin.str(30)},
          {"excluded", rep.excluded}};
}

int run_app(int argc, char** argv) {
  CLI::App app{"conical: harmonic polynomials on quadratic cones"};
  app.require_subcommand(1);

  // dim
  auto* dim = app.add_subcommand("dim", "exact dim V_N(C_a) via the corank of the quadric map");
  std::string dim_a;
  int dim_N = 2;
  dim->add_option("--a", dim_a, "cone parameters, exact rationals 'p/q,...'")->required();
  dim->add_option("--N", dim_N, "homogeneous degree")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "solve Niven's equations on D_m");
  std::string sv_a, sv_eps, sv_m, sv_out, sv_format = "json";
  double sv_tol = 1e-12;
  solve->add_option("--a", sv_a)->required();
  solve->add_option("--eps", sv_eps)->required();
  solve->add_option("--m", sv_m)->required();
  solve->add_option("--tol", sv_tol);
  solve->add_option("--out", sv_out);
  solve->add_option("--format", sv_format)->check(CLI::IsMember({"json", "csv"}));

  // trace
  auto* trace = app.add_subcommand("trace", "continuation along a(t)");
  std::string tr_eps = "1,1,0", tr_m = "31,13", tr_curve = "standard", tr_out;
  int tr_grid = 200;
  // near t = 0 the narrow upper band makes residuals ill-conditioned; the
  // default tolerance is attainable across the whole default grid
  double tr_t0 = 0.01, tr_t1 = 0.99, tr_tol = 1e-7;
  std::string tr_format = "csv";
  trace->add_option("--eps", tr_eps);
  trace->add_option("--m", tr_m);
  trace->add_option("--grid", tr_grid, "number of grid points");
  trace->add_option("--t0", tr_t0);
  trace->add_option("--t1", tr_t1);
  trace->add_option("--curve", tr_curve, "standard | caption");
  trace->add_option("--tol", tr_tol);
  trace->add_option("--out", tr_out);
  trace->add_option("--format", tr_format)->check(CLI::IsMember({"json", "csv"}));

  // harmonic
  auto* harm = app.add_subcommand("harmonic", "assemble and export a conical harmonic");
  std::string hm_a, hm_eps, hm_m, hm_out;
  double hm_tol = 1e-12;
  harm->add_option("--a", hm_a)->required();
  harm->add_option("--eps", hm_eps)->required();
  harm->add_option("--m", hm_m)->required();
  harm->add_option("--tol", hm_tol);
  harm->add_option("--out", hm_out);

  // legendre-zeros
  auto* lz = app.add_subcommand("legendre-zeros", "certified zero enclosures in (0,1)");
  int lz_ell = 90, lz_m = 27, lz_width_exp = 20;
  std::string lz_out;
  lz->add_option("--ell", lz_ell)->required();
  lz->add_option("--m", lz_m)->required();
  lz->add_option("--width-exp", lz_width_exp, "enclosure width 10^-k");
  lz->add_option("--out", lz_out);

  // wkb-sweep
  auto* ws = app.add_subcommand("wkb-sweep", "P_bar vs W with both error bounds");
  int ws_ell = 42, ws_m = 17, ws_points = 2000;
  std::string ws_out;
  ws->add_option("--ell", ws_ell)->required();
  ws->add_option("--m", ws_m)->required();
  ws->add_option("--points", ws_points);
  ws->add_option("--out", ws_out);

  // pell
  auto* pl = app.add_subcommand("pell", "solutions of p^2 - 32 q^2 = -7");
  int pl_count = 6;
  std::string pl_out;
  pl->add_option("--count", pl_count);
  pl->add_option("--out", pl_out);

  // exclude
  auto* ex = app.add_subcommand("exclude", "run the exclusion pipeline on nontrivial candidates");
  int ex_count = 4;
  unsigned ex_bits = default_precision_bits();
  std::string ex_out;
  ex->add_option("--count", ex_count, "number of nontrivial candidates");
  ex->add_option("--precision", ex_bits, "working precision in bits");
  ex->add_option("--out", ex_out);

  // verify-all
  auto* va = app.add_subcommand("verify-all", "run the full acceptance suite");
  std::string va_only;
  va->add_option("--only", va_only, "comma-separated criterion ids");

  CLI11_PARSE(app, argc, argv);

  if (dim->parsed()) {
    ConeParams cone(parse_rat_vector(dim_a));
    std::printf("%d\n", dim_vanishing_space(cone, dim_N));
    return 0;
  }

  if (solve->parsed()) {
    niven::NivenProblem prob(parse_double_vector(sv_a), parse_int_vector(sv_eps),
                             parse_int_vector(sv_m));
    auto sol = niven::solve(prob, sv_tol);
    if (sv_format == "json") {
      write_or_print(sv_out, solution_json(sol).dump(2) + "\n");
    } else {
      std::string csv = "k,xi\n";
      for (size_t k = 0; k < sol.xi.size(); ++k)
        csv += std::to_string(k + 1) + "," + double_repr(sol.xi[k]) + "\n";
      write_or_print(sv_out, csv);
    }
    return 0;
  }

  if (trace->parsed()) {
    if (tr_grid < 2) throw PreconditionViolation("trace: --grid must be at least 2");
    std::vector<double> grid(tr_grid);
    for (int i = 0; i < tr_grid; ++i)
      grid[i] = tr_t0 + (tr_t1 - tr_t0) * i / (tr_grid - 1);
    auto tr = niven::trace_curve(curve_by_name(tr_curve), parse_int_vector(tr_eps),
                                 parse_int_vector(tr_m), grid, tr_tol);
    if (tr_format == "csv") {
      write_or_print(tr_out, trace_csv(tr));
    } else {
      auto curve = curve_by_name(tr_curve);
      json rows = json::array();
      for (size_t i = 0; i < tr.t.size(); ++i) {
        niven::NivenProblem prob(curve.a_of_t(tr.t[i]), tr.eps, tr.m);
        auto res = niven::residual(prob, tr.xi[i]);
        double ri = 0.0;
        for (double r : res) ri = std::max(ri, std::fabs(r));
        rows.push_back({{"t", tr.t[i]},
                        {"xi", tr.xi[i]},
                        {"residual_inf", ri},
                        {"region_check", prob.in_domain(tr.xi[i])}});
      }
      write_or_print(tr_out, json{{"curve", tr.curve_name}, {"samples", rows}}.dump(2) + "\n");
    }
    return 0;
  }

  if (harm->parsed()) {
    auto a = parse_double_vector(hm_a);
    auto eps = parse_int_vector(hm_eps);
    niven::NivenProblem prob(a, eps, parse_int_vector(hm_m));
    auto sol = niven::solve(prob, hm_tol);
    auto q = harmonics::build_Q(a, eps, sol.xi);
    json j = poly_to_json(q.expanded);
    j["epsilon"] = eps;
    j["m"] = parse_int_vector(hm_m);
    j["xi"] = sol.xi;
    j["C_norm"] = q.C_norm;
    write_or_print(hm_out, j.dump(2) + "\n");
    return 0;
  }

  if (lz->parsed()) {
    legendre::LegendreSpec spec(lz_ell, lz_m);
    Rat width = make_rat(1, 1);
    for (int i = 0; i < lz_width_exp; ++i) width /= 10;
    auto zeros = legendre::zeros_exact(spec, width);
    std::string csv = "ell,m,k,lo,hi\n";
    for (const auto& z : zeros)
      csv += std::to_string(lz_ell) + "," + std::to_string(lz_m) + "," + std::to_string(z.k) +
             "," + z.lo.get_str() + "," + z.hi.get_str() + "\n";
    write_or_print(lz_out, csv);
    return 0;
  }

  if (ws->parsed()) {
    legendre::LegendreSpec spec(ws_ell, ws_m);
    auto fr = legendre::make_frame(spec);
    std::vector<double> x(ws_points), pbar(ws_points), amp(ws_points), bound(ws_points);
    for (int i = 0; i < ws_points; ++i)
      x[i] = -fr.eta + (i + 0.5) * (2.0 * fr.eta / ws_points);
    kernels::pbar_batch(ws_ell, ws_m, x.data(), x.size(), pbar.data());
    kernels::wkb_amp_bound_batch(fr.h, fr.eta, x.data(), x.size(), amp.data(), bound.data());
    std::string csv = "x,P_bar,W,err,bound_prop,bound_cor\n";
    for (int i = 0; i < ws_points; ++i) {
      double phase = legendre::phase_theta(fr, x[i]) / fr.h;
      double W = amp[i] * (spec.even_parity() ? std::cos(phase) : std::sin(phase));
      double cor = legendre::wkb_error_phase_form(fr, x[i]);
      csv += double_repr(x[i]) + "," + double_repr(pbar[i]) + "," + double_repr(W) + "," +
             double_repr(std::fabs(W - pbar[i])) + "," + double_repr(bound[i]) + "," +
             double_repr(cor) + "\n";
    }
    write_or_print(ws_out, csv);
    return 0;
  }

  if (pl->parsed()) {
    auto sols = pell::enumerate(pl_count);
    std::string out;
    for (const auto& s : sols)
      out += "(" + s.p.get_str() + ", " + s.q.get_str() + ") alpha=" + std::to_string(s.alpha) +
             " sigma=" + (s.sigma > 0 ? std::string("+1") : std::string("-1")) + "\n";
    write_or_print(pl_out, out);
    return 0;
  }

  if (ex->parsed()) {
    json reports = json::array();
    auto sols = pell::enumerate(ex_count + 2);  // the first two are the survivors
    int done = 0;
    for (const auto& s : sols) {
      if (done == ex_count) break;
      auto cand = pell::to_candidate(s);
      if (cand.trivial()) continue;
      reports.push_back(exclusion_json(pell::exclusion_check(cand, ex_bits)));
      ++done;
    }
    write_or_print(ex_out, reports.dump(2) + "\n");
    return 0;
  }

  if (va->parsed()) {
    std::vector<int> only;
    if (!va_only.empty()) only = parse_int_vector(va_only);
    auto results = verify::run(only);
    return verify::report(results) == 0 ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const conical::PreconditionViolation& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const conical::DomainViolation& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const conical::IndexOutOfRange& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const conical::Infeasible& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: invalid argument: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "computation failed: %s\n", e.what());
    return 1;
  }
}
