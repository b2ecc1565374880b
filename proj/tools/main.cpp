// Command line front end for the discrete infinity Laplace toolkit:
// stencil inspection, Dirichlet solves, the comparison/envelope checks and
// the convergence study, with byte-stable CSV/report outputs.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "inflap/coneops.hpp"
#include "inflap/io.hpp"
#include "inflap/lattice.hpp"
#include "inflap/solver.hpp"
#include "inflap/verify.hpp"

namespace {

using namespace inflap;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitConfig = 3;
constexpr int kExitIo = 4;

std::vector<double> parse_csv_doubles(const std::string& s, const char* key) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = s.find(',', pos);
    const std::string tok =
        s.substr(pos, next == std::string::npos ? next : next - pos);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
      throw BadValue(std::string(key) + ": expected comma-separated numbers, got '" +
                     s + "'");
    }
    out.push_back(v);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

struct DomainArgs {
  std::string bounds = "0,1";
  double h = 0.0;
  std::string norm = "euclidean";
};

void add_domain_options(CLI::App* cmd, DomainArgs& args, bool need_h = true) {
  cmd->add_option("--bounds", args.bounds,
                  "Domain box a0,b0 (1D) or a0,b0,a1,b1 (2D)");
  auto* h = cmd->add_option("--h", args.h, "Lattice spacing");
  if (need_h) h->required();
  cmd->add_option("--norm", args.norm, "Ball norm: euclidean, l1 or linf");
}

Norm parse_norm(const std::string& s) {
  const auto n = norm_from_string(s);
  if (!n) {
    throw BadValue("--norm: '" + s + "' is not one of {euclidean, l1, linf}");
  }
  return *n;
}

std::pair<Box, int> parse_bounds(const std::string& s) {
  const auto v = parse_csv_doubles(s, "--bounds");
  Box box;
  if (v.size() == 2) {
    box.lo[0] = v[0];
    box.hi[0] = v[1];
    return {box, 1};
  }
  if (v.size() == 4) {
    box.lo = {v[0], v[2]};
    box.hi = {v[1], v[3]};
    return {box, 2};
  }
  throw BadValue("--bounds: expected 2 or 4 comma-separated numbers, got '" +
                 s + "'");
}

void require_lattice_eps(double eps, double h) {
  if (!(eps > 0.0) || std::abs(eps / h - std::round(eps / h)) > 1e-9) {
    throw BadValue("--eps: " + format_double(eps) +
                   " is not a positive integer multiple of --h " +
                   format_double(h));
  }
}

struct Problem {
  LatticeDomain dom;
  Stencil st;
  Stencil st2;
  RegionLabels regions;
  Norm norm;
};

Problem make_problem(const DomainArgs& args, double eps) {
  const auto [box, dim] = parse_bounds(args.bounds);
  const Norm norm = parse_norm(args.norm);
  require_lattice_eps(eps, args.h);
  const LatticeDomain dom = build_domain(box, args.h, dim);
  Stencil st = make_stencil(args.h, eps, norm, dim);
  Stencil st2 = make_stencil(args.h, 2.0 * eps, norm, dim);
  RegionLabels regions = classify_regions(dom, st, st2);
  return Problem{dom, std::move(st), std::move(st2), std::move(regions), norm};
}

// Analytic samples and field files share one spec grammar:
//   linear:p0[,p1],c | cone:a,b,x0[,y0] | aronsson | file:PATH
ScalarField field_from_spec(const std::string& spec, const LatticeDomain& dom,
                            Norm norm, const char* key) {
  if (spec.rfind("file:", 0) == 0) {
    const ScalarField f = read_field(spec.substr(5));
    if (!(f.domain() == dom)) {
      throw BadValue(std::string(key) + ": field file '" + spec.substr(5) +
                     "' lives on a different lattice than the configured domain");
    }
    return f;
  }
  if (spec == "aronsson") {
    return analytic_eval(AnalyticSolution::aronsson(), dom);
  }
  if (spec.rfind("linear:", 0) == 0) {
    const auto v = parse_csv_doubles(spec.substr(7), key);
    if (v.size() != static_cast<std::size_t>(dom.dim()) + 1) {
      throw BadValue(std::string(key) +
                     ": linear spec wants p per axis then c, e.g. linear:1,0,0.5");
    }
    std::array<double, 2> p{v[0], dom.dim() > 1 ? v[1] : 0.0};
    return analytic_eval(AnalyticSolution::linear(p, v.back()), dom);
  }
  if (spec.rfind("cone:", 0) == 0) {
    const auto v = parse_csv_doubles(spec.substr(5), key);
    if (v.size() != static_cast<std::size_t>(dom.dim()) + 2) {
      throw BadValue(std::string(key) +
                     ": cone spec wants a,b then the vertex, e.g. cone:0,1,3,3");
    }
    ConeParams c;
    c.a = v[0];
    c.b = v[1];
    c.vertex = {v[2], dom.dim() > 1 ? v[3] : 0.0};
    c.norm = norm;
    return analytic_eval(AnalyticSolution::cone(c), dom);
  }
  throw BadValue(std::string(key) + ": unknown spec '" + spec +
                 "'; expected linear:..., cone:..., aronsson or file:PATH");
}

BoundaryData boundary_from_spec(const std::string& spec, const Problem& p,
                                const char* key) {
  return BoundaryData::from_field(field_from_spec(spec, p.dom, p.norm, key),
                                  p.regions);
}

struct SolverArgs {
  std::string scheme = "gauss_seidel";
  double tol = 1e-10;
  std::int64_t max_iter = 200000;
  std::string init = "band_min_constant";
  std::string init_field;
};

void add_solver_options(CLI::App* cmd, SolverArgs& args) {
  cmd->add_option("--scheme", args.scheme, "jacobi or gauss_seidel");
  cmd->add_option("--tol", args.tol, "Update sup-norm stopping threshold");
  cmd->add_option("--max-iter", args.max_iter, "Sweep budget");
  cmd->add_option("--init", args.init,
                  "band_min_constant or band_max_constant");
  cmd->add_option("--init-field", args.init_field,
                  "Start from this field file (overrides --init)");
}

SolveConfig make_solver_config(const SolverArgs& args, const Problem& p) {
  SolveConfig cfg;
  if (args.scheme == "jacobi") {
    cfg.scheme = Scheme::jacobi;
  } else if (args.scheme == "gauss_seidel") {
    cfg.scheme = Scheme::gauss_seidel;
  } else {
    throw BadValue("--scheme: '" + args.scheme +
                   "' is not one of {jacobi, gauss_seidel}");
  }
  cfg.tol = args.tol;
  cfg.max_iter = args.max_iter;
  if (!args.init_field.empty()) {
    cfg.init = InitKind::custom;
    cfg.init_field = field_from_spec("file:" + args.init_field, p.dom, p.norm,
                                     "--init-field");
  } else if (args.init == "band_min_constant") {
    cfg.init = InitKind::band_min_constant;
  } else if (args.init == "band_max_constant") {
    cfg.init = InitKind::band_max_constant;
  } else {
    throw BadValue("--init: '" + args.init +
                   "' is not one of {band_min_constant, band_max_constant}");
  }
  return cfg;
}

void emit(const Report& report, const std::string& path) {
  std::fputs(report.to_string().c_str(), stdout);
  if (!path.empty()) write_report(report, path);
}

int exit_for_check(const CheckResult& res) {
  return res.passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "inflap: lattice solver and verification toolkit for the discrete "
      "infinity Laplace equation S+_eps u = S-_eps u"};
  app.require_subcommand(1);
  // --h is a domain flag, so help must not claim -h.
  app.set_help_flag("--help", "Print help");
  auto add_command = [&app](const char* name, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "Print help");
    return sub;
  };

  // stencil ------------------------------------------------------------
  auto* c_st = add_command("stencil", "Print the eps-ball offsets");
  struct {
    double h = 0.0;
    double eps = 0.0;
    std::string norm = "euclidean";
    int dim = 2;
    std::string report;
  } st_args;
  c_st->add_option("--h", st_args.h, "Lattice spacing")->required();
  c_st->add_option("--eps", st_args.eps, "Ball radius")->required();
  c_st->add_option("--norm", st_args.norm, "euclidean, l1 or linf");
  c_st->add_option("--dim", st_args.dim, "1 or 2");
  c_st->add_option("--report", st_args.report, "Write the offsets here too");

  // solve ----------------------------------------------------------------
  auto* c_solve = add_command("solve", "Solve the Dirichlet problem");
  DomainArgs solve_dom;
  SolverArgs solve_slv;
  struct {
    double eps = 0.0;
    std::string boundary;
    std::string out;
    std::string report;
  } solve_args;
  add_domain_options(c_solve, solve_dom);
  add_solver_options(c_solve, solve_slv);
  c_solve->add_option("--eps", solve_args.eps, "Ball radius")->required();
  c_solve->add_option("--boundary", solve_args.boundary, "Band data spec")
      ->required();
  c_solve->add_option("--out", solve_args.out, "Write the solution field CSV");
  c_solve->add_option("--report", solve_args.report, "Write the solve report");

  // check-lemma1 ---------------------------------------------------------
  auto* c_l1 = add_command(
      "check-lemma1", "Discrete comparison: solve two problems and compare");
  DomainArgs l1_dom;
  SolverArgs l1_slv;
  struct {
    double eps = 0.0;
    std::string boundary_u;
    std::string boundary_v;
    double hyp_tol = -1.0;
    double concl_tol = -1.0;
    std::string report;
  } l1_args;
  add_domain_options(c_l1, l1_dom);
  add_solver_options(c_l1, l1_slv);
  c_l1->add_option("--eps", l1_args.eps)->required();
  c_l1->add_option("--boundary-u", l1_args.boundary_u)->required();
  c_l1->add_option("--boundary-v", l1_args.boundary_v)->required();
  c_l1->add_option("--hyp-tol", l1_args.hyp_tol,
                   "Hypothesis tolerance (default 2*tol/eps)");
  c_l1->add_option("--concl-tol", l1_args.concl_tol,
                   "Conclusion tolerance (default 10*tol)");
  c_l1->add_option("--report", l1_args.report);

  // check-lemma2 ---------------------------------------------------------
  auto* c_l2 = add_command(
      "check-lemma2", "Envelope residual signs on Omega_2eps");
  DomainArgs l2_dom;
  struct {
    double eps = 0.0;
    std::string field;
    double delta = -1.0;
    std::string form = "both";
    std::string report;
  } l2_args;
  add_domain_options(c_l2, l2_dom);
  c_l2->add_option("--eps", l2_args.eps)->required();
  c_l2->add_option("--field", l2_args.field, "Field spec to check")->required();
  c_l2->add_option("--delta", l2_args.delta, "Tolerance (default 2h/eps)");
  c_l2->add_option("--form", l2_args.form, "sub, super or both");
  c_l2->add_option("--report", l2_args.report);

  // check-cones ----------------------------------------------------------
  auto* c_cones = add_command(
      "check-cones", "Comparison with cones over a finite family");
  DomainArgs cones_dom;
  struct {
    std::string field;
    std::string direction = "both";
    double tol = -1.0;
    std::string box;
    std::string vertex;
    double slope = 0.0;
    bool explicit_witness = false;
    std::string report;
  } cones_args;
  add_domain_options(c_cones, cones_dom);
  c_cones->add_option("--field", cones_args.field)->required();
  c_cones->add_option("--direction", cones_args.direction,
                      "above, below or both");
  c_cones->add_option("--tol", cones_args.tol,
                      "Tolerance (default 2h * max neighbor slope)");
  auto* box_opt = c_cones->add_option(
      "--box", cones_args.box, "Explicit subdomain i0,i1 (1D) or i0,j0,i1,j1");
  auto* vertex_opt =
      c_cones->add_option("--vertex", cones_args.vertex, "Explicit cone vertex");
  auto* slope_opt =
      c_cones->add_option("--slope", cones_args.slope, "Explicit cone slope");
  box_opt->needs(vertex_opt)->needs(slope_opt);
  vertex_opt->needs(box_opt);
  slope_opt->needs(box_opt);
  c_cones->add_option("--report", cones_args.report);

  // check-convexity --------------------------------------------------------
  auto* c_cvx = add_command(
      "check-convexity", "Midpoint convexity of eps -> ball max at a node");
  DomainArgs cvx_dom;
  struct {
    std::string field;
    std::string at;
    std::string radii;
    double tol = -1.0;
    std::string report;
  } cvx_args;
  add_domain_options(c_cvx, cvx_dom);
  c_cvx->add_option("--field", cvx_args.field)->required();
  c_cvx->add_option("--at", cvx_args.at, "Node coordinates x[,y]")->required();
  c_cvx->add_option("--radii", cvx_args.radii, "Equally spaced radii list")
      ->required();
  c_cvx->add_option("--tol", cvx_args.tol, "Tolerance (default 2h)");
  c_cvx->add_option("--report", cvx_args.report);

  // jensen -----------------------------------------------------------------
  auto* c_jen = add_command(
      "jensen", "Interior-vs-band gap of u - v for two solves");
  DomainArgs jen_dom;
  SolverArgs jen_slv;
  struct {
    double eps = 0.0;
    std::string boundary_u;
    std::string boundary_v;
    double gap_tol = -1.0;
    std::string report;
  } jen_args;
  add_domain_options(c_jen, jen_dom);
  add_solver_options(c_jen, jen_slv);
  c_jen->add_option("--eps", jen_args.eps)->required();
  c_jen->add_option("--boundary-u", jen_args.boundary_u)->required();
  c_jen->add_option("--boundary-v", jen_args.boundary_v)->required();
  c_jen->add_option("--gap-tol", jen_args.gap_tol,
                    "Pass threshold (default 10*tol)");
  c_jen->add_option("--report", jen_args.report);

  // converge -----------------------------------------------------------------
  auto* c_conv = add_command(
      "converge", "Sup-error study against an exact sample over h levels");
  DomainArgs conv_dom;
  SolverArgs conv_slv;
  struct {
    std::string levels;
    std::string coupling = "2,0.6666666666666666";
    std::string exact;
    std::string report;
  } conv_args;
  add_domain_options(c_conv, conv_dom, /*need_h=*/false);
  add_solver_options(c_conv, conv_slv);
  c_conv->add_option("--h-levels", conv_args.levels, "Spacings, decreasing")
      ->required();
  c_conv->add_option("--coupling", conv_args.coupling,
                     "c,alpha with eps = c*h^alpha snapped to the lattice");
  c_conv->add_option("--exact", conv_args.exact, "Exact sample spec")
      ->required();
  c_conv->add_option("--report", conv_args.report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*c_st) {
      const Norm norm = parse_norm(st_args.norm);
      const Stencil st =
          make_stencil(st_args.h, st_args.eps, norm, st_args.dim);
      Report r;
      r.add("command", "stencil");
      r.add("h", st_args.h);
      r.add("eps", st_args.eps);
      r.add("norm", to_string(norm));
      r.add("count", static_cast<std::int64_t>(st.size()));
      for (std::size_t k = 0; k < st.size(); ++k) {
        const auto& o = st.offsets()[k];
        std::string v = std::to_string(o[0]);
        if (st_args.dim > 1) v += "," + std::to_string(o[1]);
        r.add("offset." + std::to_string(k), v);
      }
      emit(r, st_args.report);
      return kExitOk;
    }

    if (*c_solve) {
      const Problem p = make_problem(solve_dom, solve_args.eps);
      const BoundaryData g =
          boundary_from_spec(solve_args.boundary, p, "--boundary");
      const SolveConfig cfg = make_solver_config(solve_slv, p);
      const auto [u, rep] = solve(p.dom, p.st, p.regions, g, cfg);
      if (!solve_args.out.empty()) write_field(u, solve_args.out);
      Report r;
      r.add("command", "solve");
      append_report(r, rep);
      emit(r, solve_args.report);
      return rep.converged ? kExitOk : kExitNotConverged;
    }

    if (*c_l1) {
      const Problem p = make_problem(l1_dom, l1_args.eps);
      const SolveConfig cfg = make_solver_config(l1_slv, p);
      const auto [u, ru] = solve(
          p.dom, p.st, p.regions,
          boundary_from_spec(l1_args.boundary_u, p, "--boundary-u"), cfg);
      const auto [v, rv] = solve(
          p.dom, p.st, p.regions,
          boundary_from_spec(l1_args.boundary_v, p, "--boundary-v"), cfg);
      const double hyp_tol = l1_args.hyp_tol >= 0.0
                                 ? l1_args.hyp_tol
                                 : 2.0 * cfg.tol / p.st.radius();
      const double concl_tol =
          l1_args.concl_tol >= 0.0 ? l1_args.concl_tol : 10.0 * cfg.tol;
      Report r;
      r.add("command", "check-lemma1");
      append_report(r, ru, "solve_u.");
      append_report(r, rv, "solve_v.");
      if (!ru.converged || !rv.converged) {
        emit(r, l1_args.report);
        return kExitNotConverged;
      }
      try {
        const CheckResult res =
            lemma1_check(u, v, p.st, p.regions, hyp_tol, concl_tol);
        append_report(r, res);
        emit(r, l1_args.report);
        return exit_for_check(res);
      } catch (const HypothesisFailed& e) {
        r.add("hypothesis_failed", true);
        r.add("detail", e.what());
        emit(r, l1_args.report);
        return kExitCheckFailed;
      }
    }

    if (*c_l2) {
      const Problem p = make_problem(l2_dom, l2_args.eps);
      const ScalarField u =
          field_from_spec(l2_args.field, p.dom, p.norm, "--field");
      const double delta = l2_args.delta >= 0.0
                               ? l2_args.delta
                               : 2.0 * p.dom.spacing() / p.st.radius();
      Report r;
      r.add("command", "check-lemma2");
      r.add("delta", delta);
      bool ok = true;
      if (l2_args.form == "sub" || l2_args.form == "both") {
        const CheckResult res =
            lemma2_check(u, p.st, p.regions, delta, Lemma2Form::subsolution);
        append_report(r, res, "subsolution.");
        ok = ok && res.passed;
      }
      if (l2_args.form == "super" || l2_args.form == "both") {
        const CheckResult res =
            lemma2_check(u, p.st, p.regions, delta, Lemma2Form::supersolution);
        append_report(r, res, "supersolution.");
        ok = ok && res.passed;
      }
      if (l2_args.form != "sub" && l2_args.form != "super" &&
          l2_args.form != "both") {
        throw BadValue("--form: '" + l2_args.form +
                       "' is not one of {sub, super, both}");
      }
      emit(r, l2_args.report);
      return ok ? kExitOk : kExitCheckFailed;
    }

    if (*c_cones) {
      const auto [box, dim] = parse_bounds(cones_dom.bounds);
      const Norm norm = parse_norm(cones_dom.norm);
      const LatticeDomain dom = build_domain(box, cones_dom.h, dim);
      const ScalarField u =
          field_from_spec(cones_args.field, dom, norm, "--field");
      if (cones_args.direction != "above" && cones_args.direction != "below" &&
          cones_args.direction != "both") {
        throw BadValue("--direction: '" + cones_args.direction +
                       "' is not one of {above, below, both}");
      }
      Report r;
      r.add("command", "check-cones");
      bool ok = true;
      for (const ConeDirection dir :
           {ConeDirection::above, ConeDirection::below}) {
        const bool wanted =
            cones_args.direction == "both" ||
            (dir == ConeDirection::above && cones_args.direction == "above") ||
            (dir == ConeDirection::below && cones_args.direction == "below");
        if (!wanted) continue;
        ConeCheckConfig cfg;
        if (!cones_args.box.empty()) {
          const auto bv = parse_csv_doubles(cones_args.box, "--box");
          if (bv.size() != static_cast<std::size_t>(2 * dim)) {
            throw BadValue("--box: expected 2*dim node indices");
          }
          IndexBox ib;
          if (dim == 1) {
            ib.lo = {static_cast<std::int64_t>(bv[0]), 0};
            ib.hi = {static_cast<std::int64_t>(bv[1]), 0};
          } else {
            ib.lo = {static_cast<std::int64_t>(bv[0]),
                     static_cast<std::int64_t>(bv[1])};
            ib.hi = {static_cast<std::int64_t>(bv[2]),
                     static_cast<std::int64_t>(bv[3])};
          }
          const auto vv = parse_csv_doubles(cones_args.vertex, "--vertex");
          if (vv.size() != static_cast<std::size_t>(dim)) {
            throw BadValue("--vertex: expected one coordinate per axis");
          }
          cfg.entries.push_back(
              {ib, {{vv[0], dim > 1 ? vv[1] : 0.0}}});
          cfg.slopes = {cones_args.slope};
          cfg.direction = dir;
          cfg.norm = norm;
          cfg.tol = cones_args.tol >= 0.0 ? cones_args.tol : 0.0;
        } else {
          cfg = default_cone_family(u, dir, norm);
          if (cones_args.tol >= 0.0) cfg.tol = cones_args.tol;
        }
        const CheckResult res = cone_comparison_check(u, cfg);
        append_report(
            r, res, dir == ConeDirection::above ? "above." : "below.");
        ok = ok && res.passed;
      }
      emit(r, cones_args.report);
      return ok ? kExitOk : kExitCheckFailed;
    }

    if (*c_cvx) {
      const auto [box, dim] = parse_bounds(cvx_dom.bounds);
      const Norm norm = parse_norm(cvx_dom.norm);
      const LatticeDomain dom = build_domain(box, cvx_dom.h, dim);
      const ScalarField u =
          field_from_spec(cvx_args.field, dom, norm, "--field");
      const auto at = parse_csv_doubles(cvx_args.at, "--at");
      if (at.size() != static_cast<std::size_t>(dim)) {
        throw BadValue("--at: expected one coordinate per axis");
      }
      const auto node =
          dom.node_at({at[0], dim > 1 ? at[1] : 0.0}, 1e-9 * dom.spacing());
      if (!node) {
        throw BadValue("--at: '" + cvx_args.at + "' is not a lattice node");
      }
      const auto radii = parse_csv_doubles(cvx_args.radii, "--radii");
      const double tol =
          cvx_args.tol >= 0.0 ? cvx_args.tol : 2.0 * dom.spacing();
      const CheckResult res =
          epsilon_convexity_check(u, *node, radii, norm, tol);
      Report r;
      r.add("command", "check-convexity");
      append_report(r, res);
      emit(r, cvx_args.report);
      return exit_for_check(res);
    }

    if (*c_jen) {
      const Problem p = make_problem(jen_dom, jen_args.eps);
      const SolveConfig cfg = make_solver_config(jen_slv, p);
      const auto [u, ru] = solve(
          p.dom, p.st, p.regions,
          boundary_from_spec(jen_args.boundary_u, p, "--boundary-u"), cfg);
      const auto [v, rv] = solve(
          p.dom, p.st, p.regions,
          boundary_from_spec(jen_args.boundary_v, p, "--boundary-v"), cfg);
      Report r;
      r.add("command", "jensen");
      append_report(r, ru, "solve_u.");
      append_report(r, rv, "solve_v.");
      if (!ru.converged || !rv.converged) {
        emit(r, jen_args.report);
        return kExitNotConverged;
      }
      const JensenGapResult gap = jensen_gap(u, v, p.regions);
      append_report(r, gap);
      const double gap_tol =
          jen_args.gap_tol >= 0.0 ? jen_args.gap_tol : 10.0 * cfg.tol;
      r.add("gap_tol", gap_tol);
      r.add("passed", gap.gap <= gap_tol);
      emit(r, jen_args.report);
      return gap.gap <= gap_tol ? kExitOk : kExitCheckFailed;
    }

    if (*c_conv) {
      const auto [box, dim] = parse_bounds(conv_dom.bounds);
      ConvergenceStudyConfig cfg;
      cfg.bounds = box;
      cfg.dim = dim;
      cfg.norm = parse_norm(conv_dom.norm);
      cfg.levels = parse_csv_doubles(conv_args.levels, "--h-levels");
      const auto coupling = parse_csv_doubles(conv_args.coupling, "--coupling");
      if (coupling.size() != 2) {
        throw BadValue("--coupling: expected c,alpha");
      }
      cfg.coupling_c = coupling[0];
      cfg.coupling_alpha = coupling[1];
      if (cfg.levels.empty()) throw BadValue("--h-levels: list is empty");
      if (conv_args.exact == "aronsson") {
        cfg.exact = AnalyticSolution::aronsson();
      } else if (conv_args.exact.rfind("linear:", 0) == 0) {
        const auto v = parse_csv_doubles(conv_args.exact.substr(7), "--exact");
        if (v.size() != static_cast<std::size_t>(dim) + 1) {
          throw BadValue("--exact: linear spec wants p per axis then c");
        }
        cfg.exact = AnalyticSolution::linear({v[0], dim > 1 ? v[1] : 0.0},
                                             v.back());
      } else if (conv_args.exact.rfind("cone:", 0) == 0) {
        const auto v = parse_csv_doubles(conv_args.exact.substr(5), "--exact");
        if (v.size() != static_cast<std::size_t>(dim) + 2) {
          throw BadValue("--exact: cone spec wants a,b then the vertex");
        }
        ConeParams c;
        c.a = v[0];
        c.b = v[1];
        c.vertex = {v[2], dim > 1 ? v[3] : 0.0};
        c.norm = cfg.norm;
        cfg.exact = AnalyticSolution::cone(c);
      } else {
        throw BadValue("--exact: unknown spec '" + conv_args.exact + "'");
      }
      SolveConfig scfg;
      if (conv_slv.scheme == "jacobi") {
        scfg.scheme = Scheme::jacobi;
      } else if (conv_slv.scheme == "gauss_seidel") {
        scfg.scheme = Scheme::gauss_seidel;
      } else {
        throw BadValue("--scheme: '" + conv_slv.scheme +
                       "' is not one of {jacobi, gauss_seidel}");
      }
      scfg.tol = conv_slv.tol;
      scfg.max_iter = conv_slv.max_iter;
      cfg.solver = scfg;
      const auto rows = convergence_study(cfg);
      Report r;
      r.add("command", "converge");
      r.add("exact", conv_args.exact);
      append_report(r, rows);
      emit(r, conv_args.report);
      for (const auto& row : rows) {
        if (!row.converged) return kExitNotConverged;
      }
      return kExitOk;
    }
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
