#include "inflap/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace inflap {

const char* to_string(Norm n) {
  switch (n) {
    case Norm::euclidean:
      return "euclidean";
    case Norm::l1:
      return "l1";
    case Norm::linf:
      return "linf";
  }
  return "?";
}

std::optional<Norm> norm_from_string(std::string_view s) {
  if (s == "euclidean") return Norm::euclidean;
  if (s == "l1") return Norm::l1;
  if (s == "linf") return Norm::linf;
  return std::nullopt;
}

double vector_norm(Norm n, const std::array<double, 2>& v, int dim) {
  const double a = std::abs(v[0]);
  const double b = dim > 1 ? std::abs(v[1]) : 0.0;
  switch (n) {
    case Norm::euclidean:
      return std::sqrt(a * a + b * b);
    case Norm::l1:
      return a + b;
    case Norm::linf:
      return std::max(a, b);
  }
  return 0.0;
}

std::optional<std::int64_t> LatticeDomain::node_at(
    const std::array<double, 2>& x, double tol) const {
  std::array<std::int64_t, 2> idx{0, 0};
  for (int k = 0; k < dim_; ++k) {
    const double t = (x[static_cast<size_t>(k)] - bounds_.lo[static_cast<size_t>(k)]) / h_;
    const double r = std::round(t);
    if (std::abs(t - r) * h_ > tol) return std::nullopt;
    const auto i = static_cast<std::int64_t>(r);
    if (i < 0 || i >= n_[static_cast<size_t>(k)]) return std::nullopt;
    idx[static_cast<size_t>(k)] = i;
  }
  return linear_index(idx[0], idx[1]);
}

LatticeDomain build_domain(const Box& bounds, double h, int dim) {
  if (dim != 1 && dim != 2) {
    throw DimensionMismatch("build_domain: dim must be 1 or 2, got " +
                            std::to_string(dim));
  }
  if (!(h > 0.0)) {
    throw BadSpacing("build_domain: spacing must be positive, got h=" +
                     std::to_string(h));
  }
  LatticeDomain d;
  d.dim_ = dim;
  d.h_ = h;
  d.bounds_ = bounds;
  d.n_ = {0, 1};
  for (int k = 0; k < dim; ++k) {
    const double len = bounds.hi[static_cast<size_t>(k)] - bounds.lo[static_cast<size_t>(k)];
    if (!(len > 0.0)) {
      throw NonCommensurate("build_domain: axis " + std::to_string(k) +
                            " has nonpositive length");
    }
    const double steps = len / h;
    const double rounded = std::round(steps);
    if (rounded < 1.0 || std::abs(steps - rounded) > 1e-12 * steps) {
      std::ostringstream os;
      os << "build_domain: axis " << k << " length " << len
         << " is not an integer multiple of h=" << h;
      throw NonCommensurate(os.str());
    }
    d.n_[static_cast<size_t>(k)] = static_cast<std::int64_t>(rounded) + 1;
  }
  return d;
}

bool Stencil::contains(const std::array<int, 2>& offset) const {
  return std::binary_search(offsets_.begin(), offsets_.end(), offset);
}

Stencil make_stencil(double h, double eps, Norm norm, int dim) {
  if (dim != 1 && dim != 2) {
    throw DimensionMismatch("make_stencil: dim must be 1 or 2, got " +
                            std::to_string(dim));
  }
  if (!(h > 0.0)) {
    throw BadSpacing("make_stencil: spacing must be positive, got h=" +
                     std::to_string(h));
  }
  if (!(eps > 0.0)) {
    throw BadSpacing("make_stencil: radius must be positive, got eps=" +
                     std::to_string(eps));
  }

  Stencil st;
  st.eps_ = eps;
  st.h_ = h;
  st.norm_ = norm;
  st.dim_ = dim;

  // In all three norms, each coordinate of an admissible offset is bounded
  // by eps / h (plus the tie tolerance).
  const double threshold = eps + 1e-12 * eps;
  const int m = static_cast<int>(std::floor(threshold / h));
  const int mj = dim > 1 ? m : 0;
  for (int i = -m; i <= m; ++i) {
    for (int j = -mj; j <= mj; ++j) {
      const std::array<double, 2> v{static_cast<double>(i) * h,
                                    static_cast<double>(j) * h};
      if (vector_norm(norm, v, dim) <= threshold) {
        st.offsets_.push_back({i, j});
        st.reach_[0] = std::max(st.reach_[0], std::abs(i));
        st.reach_[1] = std::max(st.reach_[1], std::abs(j));
      }
    }
  }
  // The double loop above emits offsets in lexicographic order already.
  if (st.offsets_.size() <= 1) {
    std::ostringstream os;
    os << "make_stencil: no nonzero offset within radius eps=" << eps
       << " for h=" << h << " (" << to_string(norm) << ")";
    throw EmptyStencil(os.str());
  }
  return st;
}

RegionLabels classify_regions(const LatticeDomain& domain,
                              const Stencil& stencil_eps,
                              const Stencil& stencil_2eps) {
  const double eps = stencil_eps.radius();
  if (stencil_eps.norm() != stencil_2eps.norm() ||
      stencil_eps.spacing() != stencil_2eps.spacing() ||
      std::abs(stencil_2eps.radius() - 2.0 * eps) > 1e-12 * eps) {
    throw BadValue(
        "classify_regions: stencil_2eps must share the norm and spacing of "
        "stencil_eps and have radius exactly 2*eps");
  }
  if (stencil_eps.dim() != domain.dim()) {
    throw DimensionMismatch("classify_regions: stencil/domain dim mismatch");
  }

  RegionLabels rg;
  rg.dom_ = domain;
  rg.eps_ = eps;
  rg.norm_ = stencil_eps.norm();
  rg.labels_.resize(static_cast<size_t>(domain.node_count()));

  // On a box domain the ball stays inside iff the node is at least the
  // stencil's per-axis reach away from every face.
  const std::array<int, 2> r1{stencil_eps.reach(0), stencil_eps.reach(1)};
  const std::array<int, 2> r2{stencil_2eps.reach(0), stencil_2eps.reach(1)};
  const std::int64_t n0 = domain.extent(0);
  const std::int64_t n1 = domain.dim() > 1 ? domain.extent(1) : 1;

  auto deep_enough = [&](std::int64_t i, std::int64_t j,
                         const std::array<int, 2>& r) {
    if (i < r[0] || i >= n0 - r[0]) return false;
    if (domain.dim() > 1 && (j < r[1] || j >= n1 - r[1])) return false;
    return true;
  };

  for (std::int64_t i = 0; i < n0; ++i) {
    for (std::int64_t j = 0; j < n1; ++j) {
      const std::int64_t node = domain.linear_index(i, j);
      Region lab = Region::band;
      if (deep_enough(i, j, r2)) {
        lab = Region::inner_2eps;
      } else if (deep_enough(i, j, r1)) {
        lab = Region::inner_eps;
      }
      rg.labels_[static_cast<size_t>(node)] = lab;
      switch (lab) {
        case Region::band:
          rg.band_.push_back(node);
          break;
        case Region::inner_2eps:
          rg.inner2_.push_back(node);
          [[fallthrough]];
        case Region::inner_eps:
          rg.inner_.push_back(node);
          break;
      }
    }
  }
  if (rg.inner_.empty()) {
    throw EmptyInterior(
        "classify_regions: no node keeps its eps-ball inside the domain");
  }
  return rg;
}

std::vector<std::int64_t> linear_deltas(const Stencil& st,
                                        const LatticeDomain& dom) {
  std::vector<std::int64_t> d;
  d.reserve(st.size());
  const std::int64_t n1 = dom.dim() > 1 ? dom.extent(1) : 1;
  for (const auto& o : st.offsets()) {
    d.push_back(static_cast<std::int64_t>(o[0]) * n1 + o[1]);
  }
  return d;
}

}  // namespace inflap
