#pragma once

#include <cstdint>
#include <vector>

#include "inflap/coneops.hpp"
#include "inflap/field.hpp"
#include "inflap/lattice.hpp"
#include "inflap/solver.hpp"

namespace inflap {

/// Discrete comparison check. Hypothesis: residual(u) <= hyp_tol and
/// residual(v) >= -hyp_tol on every Omega_eps node (HypothesisFailed
/// otherwise; the conclusion is vacuous then). Conclusion: the max of u - v
/// over all nodes exceeds its band max by at most concl_tol. The reported
/// slack is the interior-vs-band gap; the witness is the interior argmax.
CheckResult lemma1_check(const ScalarField& u, const ScalarField& v,
                         const Stencil& st, const RegionLabels& regions,
                         double hyp_tol, double concl_tol);

enum class Lemma2Form { subsolution, supersolution };

/// Envelope residual check on Omega_2eps. The subsolution form takes the
/// ball-max envelope of u and asserts residual(u^eps) <= delta; the
/// supersolution form is its exact dual (run on -u with the sign flipped),
/// asserting residual(u_eps) >= -delta.
CheckResult lemma2_check(const ScalarField& u, const Stencil& st,
                         const RegionLabels& regions, double delta,
                         Lemma2Form form);

/// Exact lattice inequalities (u^eps)^eps <= u^2eps and (u^eps)_eps >= u on
/// Omega_2eps, at zero tolerance. They follow from the stencil doubling
/// property, so any failure indicates a broken stencil or envelope.
CheckResult envelope_chain_check(const ScalarField& u, const Stencil& st_eps,
                                 const Stencil& st_2eps,
                                 const RegionLabels& regions);

struct JensenGapResult {
  double gap = 0.0;          // max over interior (u-v) minus max over band
  std::int64_t witness = -1; // interior argmax of u - v
};

/// Comparison gap statistic: nonpositive (up to discretization) exactly when
/// the interior maximum of u - v is controlled by the band.
JensenGapResult jensen_gap(const ScalarField& u, const ScalarField& v,
                           const RegionLabels& regions);

struct ConvergenceRow {
  double h = 0.0;
  double eps = 0.0;
  std::int64_t nodes = 0;
  std::int64_t iterations = 0;
  double sup_error = 0.0;     // against the exact field, interior nodes
  double residual_sup = 0.0;
  bool converged = false;
};

struct ConvergenceStudyConfig {
  AnalyticSolution exact = AnalyticSolution::aronsson();
  Box bounds;
  int dim = 2;
  Norm norm = Norm::euclidean;
  std::vector<double> levels;  // h values, any order; rows follow this order
  double coupling_c = 2.0;     // eps = coupling_c * h^coupling_alpha,
  double coupling_alpha = 2.0 / 3.0;  // rounded to the nearest multiple of h
  SolveConfig solver;
};

/// For each level: builds the domain, samples the exact solution as band
/// data, solves, and records the interior sup error against the exact field.
/// A non-converged row is flagged and the study continues.
std::vector<ConvergenceRow> convergence_study(const ConvergenceStudyConfig& cfg);

}  // namespace inflap
