#include "inflap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace inflap {

namespace {

std::string describe_node(const LatticeDomain& dom, std::int64_t node) {
  const auto m = dom.multi_index(node);
  std::ostringstream os;
  os << "node ";
  if (dom.dim() == 1) {
    os << m[0];
  } else {
    os << "(" << m[0] << "," << m[1] << ")";
  }
  return os.str();
}

}  // namespace

CheckResult lemma1_check(const ScalarField& u, const ScalarField& v,
                         const Stencil& st, const RegionLabels& regions,
                         double hyp_tol, double concl_tol) {
  if (!u.same_domain(v)) {
    throw BadValue("lemma1_check: fields live on different domains");
  }
  const ScalarField res_u = residual(u, st, regions);
  const ScalarField res_v = residual(v, st, regions);
  for (const std::int64_t node : regions.inner_nodes()) {
    if (res_u[node] > hyp_tol) {
      std::ostringstream os;
      os << "lemma1_check: subsolution hypothesis fails at "
         << describe_node(regions.domain(), node) << ": residual "
         << res_u[node] << " > " << hyp_tol;
      throw HypothesisFailed(os.str());
    }
    if (res_v[node] < -hyp_tol) {
      std::ostringstream os;
      os << "lemma1_check: supersolution hypothesis fails at "
         << describe_node(regions.domain(), node) << ": residual "
         << res_v[node] << " < " << -hyp_tol;
      throw HypothesisFailed(os.str());
    }
  }

  const JensenGapResult gap = jensen_gap(u, v, regions);
  CheckWitness witness;
  if (gap.witness >= 0) {
    std::ostringstream os;
    os << "interior argmax of u-v at "
       << describe_node(regions.domain(), gap.witness);
    witness = CheckWitness{gap.witness, os.str()};
  }
  return make_check_result(gap.gap, concl_tol, std::move(witness));
}

CheckResult lemma2_check(const ScalarField& u, const Stencil& st,
                         const RegionLabels& regions, double delta,
                         Lemma2Form form) {
  if (!(u.domain() == regions.domain())) {
    throw BadValue("lemma2_check: field and regions disagree on the domain");
  }
  // The supersolution form is the subsolution form of -u with the slack
  // magnitude preserved: residual(-w) == -residual(w) pointwise.
  ScalarField work = u;
  if (form == Lemma2Form::supersolution) {
    for (double& x : work.values()) x = -x;
  }
  const ScalarField envelope = ball_max(work, st, regions);
  const ScalarField res = residual(envelope, st, regions);

  double worst = -std::numeric_limits<double>::infinity();
  std::int64_t at = -1;
  for (const std::int64_t node : regions.inner2_nodes()) {
    if (res[node] > worst) {
      worst = res[node];
      at = node;
    }
  }
  if (at < 0) {
    // Empty Omega_2eps: nothing to assert.
    return make_check_result(0.0, delta, CheckWitness{});
  }
  std::ostringstream os;
  os << (form == Lemma2Form::subsolution ? "subsolution" : "supersolution")
     << " residual " << worst << " at " << describe_node(regions.domain(), at);
  return make_check_result(worst, delta, CheckWitness{at, os.str()});
}

CheckResult envelope_chain_check(const ScalarField& u, const Stencil& st_eps,
                                 const Stencil& st_2eps,
                                 const RegionLabels& regions) {
  if (!(u.domain() == regions.domain())) {
    throw BadValue("envelope_chain_check: field/regions domain mismatch");
  }
  const ScalarField up = ball_max(u, st_eps, regions);
  const ScalarField up_up = ball_max(up, st_eps, regions);
  const ScalarField up2 = ball_max(u, st_2eps, regions);
  const ScalarField up_down = ball_min(up, st_eps, regions);

  double worst = -std::numeric_limits<double>::infinity();
  CheckWitness witness;
  for (const std::int64_t node : regions.inner2_nodes()) {
    const double over = up_up[node] - up2[node];  // must be <= 0
    if (over > worst) {
      worst = over;
      witness = CheckWitness{
          node, "(u^eps)^eps exceeds u^2eps at " +
                    describe_node(regions.domain(), node)};
    }
    const double under = u[node] - up_down[node];  // must be <= 0
    if (under > worst) {
      worst = under;
      witness = CheckWitness{
          node, "(u^eps)_eps drops below u at " +
                    describe_node(regions.domain(), node)};
    }
  }
  if (!std::isfinite(worst)) worst = 0.0;
  return make_check_result(worst, 0.0, std::move(witness));
}

JensenGapResult jensen_gap(const ScalarField& u, const ScalarField& v,
                           const RegionLabels& regions) {
  if (!u.same_domain(v) || !(u.domain() == regions.domain())) {
    throw BadValue("jensen_gap: domain mismatch");
  }
  JensenGapResult out;
  double interior_max = -std::numeric_limits<double>::infinity();
  for (const std::int64_t node : regions.inner_nodes()) {
    const double d = u[node] - v[node];
    if (d > interior_max) {
      interior_max = d;
      out.witness = node;
    }
  }
  double band_max = -std::numeric_limits<double>::infinity();
  for (const std::int64_t node : regions.band_nodes()) {
    band_max = std::max(band_max, u[node] - v[node]);
  }
  out.gap = interior_max - band_max;
  return out;
}

std::vector<ConvergenceRow> convergence_study(
    const ConvergenceStudyConfig& cfg) {
  std::vector<ConvergenceRow> rows;
  rows.reserve(cfg.levels.size());
  for (const double h : cfg.levels) {
    const LatticeDomain dom = build_domain(cfg.bounds, h, cfg.dim);

    // Couple eps to h, then snap to the lattice so the band decomposition
    // is well defined at every level.
    const double eps_raw = cfg.coupling_c * std::pow(h, cfg.coupling_alpha);
    const double eps = std::max(1.0, std::round(eps_raw / h)) * h;

    const Stencil st = make_stencil(h, eps, cfg.norm, cfg.dim);
    const Stencil st2 = make_stencil(h, 2.0 * eps, cfg.norm, cfg.dim);
    const RegionLabels regions = classify_regions(dom, st, st2);

    const BoundaryData g = BoundaryData::from_analytic(cfg.exact, regions);
    auto [numeric, report] = solve(dom, st, regions, g, cfg.solver);

    const ScalarField exact = analytic_eval(cfg.exact, dom);
    double err = 0.0;
    for (const std::int64_t node : regions.inner_nodes()) {
      err = std::max(err, std::abs(numeric[node] - exact[node]));
    }

    ConvergenceRow row;
    row.h = h;
    row.eps = eps;
    row.nodes = dom.node_count();
    row.iterations = report.iterations;
    row.sup_error = err;
    row.residual_sup = report.residual_sup;
    row.converged = report.converged;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace inflap
