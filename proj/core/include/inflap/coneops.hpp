#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "inflap/field.hpp"
#include "inflap/lattice.hpp"

namespace inflap {

/// Ball maximum envelope: at every inner node the max of u over the stencil
/// translates; band nodes pass through unchanged (the envelope is defined on
/// Omega_eps only). When `argmax` is given it receives, per node, the index
/// into st.offsets() of the first maximizing offset in lexicographic order,
/// or -1 on the band.
ScalarField ball_max(const ScalarField& u, const Stencil& st,
                     const RegionLabels& regions,
                     std::vector<std::int32_t>* argmax = nullptr);

/// Ball minimum envelope, dual of ball_max. Satisfies
/// ball_min(u) == -ball_max(-u) bitwise for the same traversal order.
ScalarField ball_min(const ScalarField& u, const Stencil& st,
                     const RegionLabels& regions,
                     std::vector<std::int32_t>* argmin = nullptr);

/// Maximal upward slope (max over ball of u - u(x)) / eps at an inner node.
/// Always >= 0 since the closed ball contains its center.
/// Throws OutsideInnerRegion when node is not in Omega_eps.
double s_plus(const ScalarField& u, const Stencil& st,
              const RegionLabels& regions, std::int64_t node);

/// Maximal downward slope (u(x) - min over ball) / eps at an inner node.
double s_minus(const ScalarField& u, const Stencil& st,
               const RegionLabels& regions, std::int64_t node);

/// Discrete residual s_minus - s_plus on Omega_eps; zero on the band.
/// Negative values are subsolution slack, positive supersolution slack; the
/// discrete equation asks for zero.
ScalarField residual(const ScalarField& u, const Stencil& st,
                     const RegionLabels& regions);

/// Largest |f| over the given nodes.
double sup_abs(const ScalarField& f, std::span<const std::int64_t> nodes);

/// Parameters of the cone function a + b * ||x - vertex||.
struct ConeParams {
  double a = 0.0;
  double b = 0.0;
  std::array<double, 2> vertex{0.0, 0.0};
  Norm norm = Norm::euclidean;
};

double cone_value(const ConeParams& c, const std::array<double, 2>& x, int dim);

/// Pointwise evaluation of the cone on every node.
ScalarField cone_eval(const ConeParams& c, const LatticeDomain& dom);

/// Closed-form fields with known behavior under the ball operators, used as
/// oracles: affine functions, cones, and the classical nonsmooth example
/// x^{4/3} - y^{4/3} (2D only).
class AnalyticSolution {
 public:
  enum class Kind { linear, cone, aronsson };

  static AnalyticSolution linear(const std::array<double, 2>& slope, double c);
  static AnalyticSolution cone(const ConeParams& params);
  static AnalyticSolution aronsson();

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  /// Throws DimensionMismatch when the formula does not support dim.
  double operator()(const std::array<double, 2>& x, int dim) const;

 private:
  AnalyticSolution(Kind k, std::string name) : kind_(k), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
  std::array<double, 2> p_{0.0, 0.0};
  double c_ = 0.0;
  ConeParams cone_{};
};

ScalarField analytic_eval(const AnalyticSolution& sol, const LatticeDomain& dom);

/// Axis-aligned box of node indices, both corners inclusive.
struct IndexBox {
  std::array<std::int64_t, 2> lo{0, 0};
  std::array<std::int64_t, 2> hi{0, 0};
};

/// One test subdomain paired with its cone vertex candidates. Vertices are
/// coordinates and may lie outside the domain box; they must not lie strictly
/// inside the open subdomain.
struct ConeFamilyEntry {
  IndexBox box;
  std::vector<std::array<double, 2>> vertices;
};

enum class ConeDirection { above, below };

/// Finite quantifier family for the comparison-with-cones test battery.
/// A violation is sound; a pass certifies only the sampled family.
struct ConeCheckConfig {
  std::vector<ConeFamilyEntry> entries;
  std::vector<double> slopes;
  ConeDirection direction = ConeDirection::above;
  Norm norm = Norm::euclidean;
  double tol = 0.0;
};

/// Default battery: every lattice box of side 4h and 8h inside the domain,
/// vertex candidates on the extended lattice within radius 8h of the box,
/// and 33 slopes spanning [-L, L] where L is the largest axis-neighbor slope
/// of u. tol defaults to 2hL.
ConeCheckConfig default_cone_family(const ScalarField& u, ConeDirection dir,
                                    Norm norm);

/// For each (box, vertex, slope): fits the cone offset through the box's
/// boundary shell, then reports interior nodes rising above the fitted cone
/// by more than tol. direction == below runs the same test on -u.
/// Throws BadFamily when a vertex lies strictly inside its open box.
CheckResult cone_comparison_check(const ScalarField& u,
                                  const ConeCheckConfig& cfg);

/// Necessary condition from the cone bound on punctured balls: for every
/// center x0 with the r-ball inside and every lattice point w of that ball,
/// u(w) <= u(x0) + (max over the r-sphere of u - u(x0)) * ||w - x0|| / r.
/// Radii must be positive multiples of the spacing. Strictly weaker than the
/// full comparisons-with-cones property. `centers` restricts the quantifier
/// to the given nodes (still intersected with each Omega_r); empty means all.
CheckResult punctured_ball_check(const ScalarField& u,
                                 const std::vector<double>& radii, Norm norm,
                                 double tol,
                                 const std::vector<std::int64_t>& centers = {});

/// Midpoint convexity of eps -> (ball max of u at `node`) over >= 3 equally
/// spaced radii: flags u^{e2} > (u^{e1} + u^{e3}) / 2 + tol on consecutive
/// triples. Throws BadRadii for malformed radii and OutsideInnerRegion when
/// the largest ball at `node` exits the domain.
CheckResult epsilon_convexity_check(const ScalarField& u, std::int64_t node,
                                    const std::vector<double>& eps_list,
                                    Norm norm, double tol);

}  // namespace inflap
