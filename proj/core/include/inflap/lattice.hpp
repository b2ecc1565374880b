#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inflap/errors.hpp"

namespace inflap {

/// Norm used for ball stencils and cone functions.
enum class Norm { euclidean, l1, linf };

const char* to_string(Norm n);
std::optional<Norm> norm_from_string(std::string_view s);

/// Norm of a d-vector of coordinates (d = 1 or 2; trailing entry ignored).
double vector_norm(Norm n, const std::array<double, 2>& v, int dim);

/// Per-axis closed interval bounds of a box domain. Only the first `dim`
/// axes are meaningful.
struct Box {
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{0.0, 0.0};

  bool operator==(const Box&) const = default;
};

/// Axis-aligned box discretized with uniform spacing h.
///
/// Nodes are integer tuples (i) or (i, j) with coordinates lo + index * h.
/// Linear indexing is row-major: in 2D the second index varies fastest.
class LatticeDomain {
 public:
  LatticeDomain() = default;

  int dim() const { return dim_; }
  double spacing() const { return h_; }
  const Box& bounds() const { return bounds_; }

  /// Nodes per axis; extent(1) == 1 in 1D.
  std::int64_t extent(int axis) const { return n_[static_cast<size_t>(axis)]; }
  std::int64_t node_count() const { return n_[0] * n_[1]; }

  std::int64_t linear_index(std::int64_t i, std::int64_t j = 0) const {
    return i * n_[1] + j;
  }
  std::array<std::int64_t, 2> multi_index(std::int64_t linear) const {
    return {linear / n_[1], linear % n_[1]};
  }
  std::array<double, 2> coord(std::int64_t linear) const {
    const auto m = multi_index(linear);
    return {bounds_.lo[0] + static_cast<double>(m[0]) * h_,
            bounds_.lo[1] + static_cast<double>(m[1]) * h_};
  }
  bool contains(std::int64_t i, std::int64_t j = 0) const {
    return i >= 0 && i < n_[0] && j >= 0 && j < n_[1];
  }

  /// Node index whose coordinates are nearest to x; nullopt when x falls
  /// outside the box or off the lattice by more than `tol`.
  std::optional<std::int64_t> node_at(const std::array<double, 2>& x,
                                      double tol) const;

  bool operator==(const LatticeDomain& other) const = default;

 private:
  friend LatticeDomain build_domain(const Box&, double, int);

  int dim_ = 0;
  double h_ = 0.0;
  Box bounds_;
  std::array<std::int64_t, 2> n_{0, 1};
};

/// Builds the node set covering the closed box.
///
/// Throws BadSpacing when h <= 0, NonCommensurate when an axis length is not
/// a positive integer multiple of h (relative tolerance 1e-12), and
/// DimensionMismatch for dim outside {1, 2}.
LatticeDomain build_domain(const Box& bounds, double h, int dim);

/// Integer offsets realizing the closed ball of radius eps in a chosen norm.
///
/// Offsets o satisfy ||o * h||_norm <= eps with absolute tie tolerance
/// 1e-12 * eps, and are stored in lexicographic order. The set always
/// contains the zero offset and is symmetric under negation.
class Stencil {
 public:
  double radius() const { return eps_; }
  double spacing() const { return h_; }
  Norm norm() const { return norm_; }
  int dim() const { return dim_; }

  std::span<const std::array<int, 2>> offsets() const { return offsets_; }
  std::size_t size() const { return offsets_.size(); }

  /// Largest |o_k| over the stencil, per axis. For a box domain a node keeps
  /// its whole ball inside iff it is at least reach(k) nodes from each face.
  int reach(int axis) const { return reach_[static_cast<size_t>(axis)]; }

  bool contains(const std::array<int, 2>& offset) const;

 private:
  friend Stencil make_stencil(double, double, Norm, int);

  double eps_ = 0.0;
  double h_ = 0.0;
  Norm norm_ = Norm::euclidean;
  int dim_ = 0;
  std::array<int, 2> reach_{0, 0};
  std::vector<std::array<int, 2>> offsets_;
};

/// Enumerates the ball offsets for radius eps on a lattice with spacing h.
///
/// Throws BadSpacing when h <= 0 or eps <= 0 and EmptyStencil when no
/// nonzero offset qualifies (eps < h in every supported norm).
Stencil make_stencil(double h, double eps, Norm norm, int dim);

/// Node classification relative to the ball radius:
///   band       - ball of radius eps exits the domain (Dirichlet collar)
///   inner_eps  - eps-ball inside, 2eps-ball not
///   inner_2eps - 2eps-ball inside
enum class Region : std::uint8_t { band, inner_eps, inner_2eps };

/// The decomposition Omega >= Omega_eps >= Omega_2eps of a domain's nodes.
class RegionLabels {
 public:
  const LatticeDomain& domain() const { return dom_; }
  double eps() const { return eps_; }
  Norm norm() const { return norm_; }

  Region label(std::int64_t node) const {
    return labels_[static_cast<size_t>(node)];
  }
  bool is_inner(std::int64_t node) const {
    return label(node) != Region::band;
  }

  /// Band nodes, ascending linear index.
  std::span<const std::int64_t> band_nodes() const { return band_; }
  /// Omega_eps = inner_eps + inner_2eps, ascending linear index.
  std::span<const std::int64_t> inner_nodes() const { return inner_; }
  /// Omega_2eps only, ascending linear index.
  std::span<const std::int64_t> inner2_nodes() const { return inner2_; }

 private:
  friend RegionLabels classify_regions(const LatticeDomain&, const Stencil&,
                                       const Stencil&);

  LatticeDomain dom_;
  double eps_ = 0.0;
  Norm norm_ = Norm::euclidean;
  std::vector<Region> labels_;
  std::vector<std::int64_t> band_;
  std::vector<std::int64_t> inner_;
  std::vector<std::int64_t> inner2_;
};

/// Labels every node of the domain. stencil_2eps must be built with radius
/// exactly 2 * eps of stencil_eps, same norm and spacing (BadValue otherwise).
/// Throws EmptyInterior when no node keeps its eps-ball inside the domain.
RegionLabels classify_regions(const LatticeDomain& domain,
                              const Stencil& stencil_eps,
                              const Stencil& stencil_2eps);

/// Per-offset linear index deltas for a stencil on a domain. Valid at inner
/// nodes, where every offset stays on the grid.
std::vector<std::int64_t> linear_deltas(const Stencil& st,
                                        const LatticeDomain& dom);

}  // namespace inflap
