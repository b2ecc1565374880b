#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "inflap/lattice.hpp"

namespace inflap {

/// One real value per lattice node. Carries its domain by value.
class ScalarField {
 public:
  ScalarField() = default;

  explicit ScalarField(const LatticeDomain& dom, double fill = 0.0)
      : dom_(dom), v_(static_cast<size_t>(dom.node_count()), fill) {}

  /// Adopts `values` (row-major, one per node). Throws BadValue on a size
  /// mismatch or any non-finite entry.
  ScalarField(const LatticeDomain& dom, std::vector<double> values);

  const LatticeDomain& domain() const { return dom_; }
  std::int64_t size() const { return static_cast<std::int64_t>(v_.size()); }

  double operator[](std::int64_t node) const {
    return v_[static_cast<size_t>(node)];
  }
  double& operator[](std::int64_t node) { return v_[static_cast<size_t>(node)]; }

  std::span<const double> values() const { return v_; }
  std::span<double> values() { return v_; }

  bool same_domain(const ScalarField& other) const {
    return dom_ == other.dom_;
  }

  /// Throws BadValue if any entry is NaN or infinite.
  void require_finite(const char* what) const;

 private:
  LatticeDomain dom_;
  std::vector<double> v_;
};

/// Location blamed by a failed check: a node (or -1) plus free-form detail
/// such as the subdomain, vertex and slope of a violating cone.
struct CheckWitness {
  std::int64_t node = -1;
  std::string detail;
};

/// Outcome of a tolerance-controlled check. Slack is signed: positive values
/// measure the worst violation, nonpositive values the margin by which the
/// property held.
struct CheckResult {
  bool passed = true;
  double worst_slack = 0.0;
  CheckWitness witness;
  double tolerance = 0.0;
};

inline CheckResult make_check_result(double worst_slack, double tolerance,
                                     CheckWitness witness) {
  return CheckResult{worst_slack <= tolerance, worst_slack, std::move(witness),
                     tolerance};
}

}  // namespace inflap
