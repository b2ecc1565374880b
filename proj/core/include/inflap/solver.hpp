#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "inflap/coneops.hpp"
#include "inflap/field.hpp"
#include "inflap/lattice.hpp"

namespace inflap {

/// Dirichlet data carried by the band Omega \ Omega_eps.
class BoundaryData {
 public:
  /// Materializes g on every band node. Throws BadValue when g returns a
  /// non-finite value there.
  static BoundaryData from_function(
      const std::function<double(const std::array<double, 2>&)>& g,
      const RegionLabels& regions);

  static BoundaryData from_analytic(const AnalyticSolution& sol,
                                    const RegionLabels& regions);

  /// Band values copied out of an existing full field.
  static BoundaryData from_field(const ScalarField& f,
                                 const RegionLabels& regions);

  /// Values aligned with regions.band_nodes().
  std::span<const double> values() const { return values_; }
  double min() const { return min_; }
  double max() const { return max_; }

  /// Writes the band values into f (f must live on the same domain).
  void impose(ScalarField& f, const RegionLabels& regions) const;

 private:
  std::vector<double> values_;
  double min_ = 0.0;
  double max_ = 0.0;
};

enum class Scheme { jacobi, gauss_seidel };
enum class InitKind { band_min_constant, band_max_constant, custom };

const char* to_string(Scheme s);
const char* to_string(InitKind k);

struct SolveConfig {
  Scheme scheme = Scheme::gauss_seidel;
  double tol = 1e-10;           // sup-norm update threshold
  std::int64_t max_iter = 200000;
  InitKind init = InitKind::band_min_constant;
  std::optional<ScalarField> init_field;  // used when init == custom
};

struct SolveReport {
  std::int64_t iterations = 0;
  double final_update = 0.0;   // sup-norm of the last sweep's change
  double residual_sup = 0.0;   // max |s_minus - s_plus| over Omega_eps
  bool converged = false;
  double wall_seconds = 0.0;
};

/// One fixed-point sweep of u(x) <- (ball max + ball min) / 2 over Omega_eps.
/// Band values are left untouched. Jacobi reads the previous field
/// everywhere; Gauss-Seidel reads already-updated values in row-major order.
/// Returns the updated field and the sup-norm of the change.
std::pair<ScalarField, double> midpoint_sweep(const ScalarField& u,
                                              const Stencil& st,
                                              const RegionLabels& regions,
                                              Scheme scheme);

/// Iterates midpoint sweeps until the update sup-norm falls to cfg.tol or
/// max_iter is reached. A non-converged run still returns the partial field,
/// with report.converged == false. The converged field satisfies
/// |s_minus - s_plus| <= 2 * tol / eps on Omega_eps.
std::pair<ScalarField, SolveReport> solve(const LatticeDomain& dom,
                                          const Stencil& st,
                                          const RegionLabels& regions,
                                          const BoundaryData& g,
                                          const SolveConfig& cfg);

/// Constant fields at min g and max g. Solver iterates started inside the
/// bracket stay inside it (the midpoint of values in [m, M] is in [m, M]).
std::pair<ScalarField, ScalarField> lower_upper_bracket(
    const LatticeDomain& dom, const RegionLabels& regions,
    const BoundaryData& g);

}  // namespace inflap
