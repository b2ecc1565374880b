#include "inflap/field.hpp"

#include <cmath>
#include <string>

namespace inflap {

ScalarField::ScalarField(const LatticeDomain& dom, std::vector<double> values)
    : dom_(dom), v_(std::move(values)) {
  if (static_cast<std::int64_t>(v_.size()) != dom.node_count()) {
    throw BadValue("ScalarField: got " + std::to_string(v_.size()) +
                   " values for " + std::to_string(dom.node_count()) +
                   " nodes");
  }
  require_finite("ScalarField");
}

void ScalarField::require_finite(const char* what) const {
  for (size_t k = 0; k < v_.size(); ++k) {
    if (!std::isfinite(v_[k])) {
      throw BadValue(std::string(what) + ": non-finite value at node " +
                     std::to_string(k));
    }
  }
}

}  // namespace inflap
