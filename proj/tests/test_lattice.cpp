#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "inflap/lattice.hpp"
#include "test_util.hpp"

using namespace inflap;

namespace {

// Brute-force oracle: every integer pair in a generous window whose scaled
// norm is within the closed-ball threshold.
std::vector<std::array<int, 2>> enumerate_ball(double h, double eps, Norm norm,
                                               int dim, int window) {
  std::vector<std::array<int, 2>> out;
  const int wj = dim > 1 ? window : 0;
  for (int i = -window; i <= window; ++i) {
    for (int j = -wj; j <= wj; ++j) {
      const double n = vector_norm(
          norm, {static_cast<double>(i) * h, static_cast<double>(j) * h}, dim);
      if (n <= eps + 1e-12 * eps) out.push_back({i, j});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("build_domain enumerates 1D nodes") {
  const LatticeDomain dom = build_domain({{0.0, 0.0}, {1.0, 0.0}}, 0.25, 1);
  CHECK(dom.node_count() == 5);
  const double expect[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int i = 0; i < 5; ++i) {
    CHECK(dom.coord(i)[0] == doctest::Approx(expect[i]).epsilon(1e-15));
  }
}

TEST_CASE("build_domain enumerates a 3x3 grid") {
  const LatticeDomain dom = build_domain({{0.0, 0.0}, {1.0, 1.0}}, 0.5, 2);
  CHECK(dom.node_count() == 9);
  CHECK(dom.extent(0) == 3);
  CHECK(dom.extent(1) == 3);
  // Row-major: second index fastest.
  CHECK(dom.multi_index(1)[0] == 0);
  CHECK(dom.multi_index(1)[1] == 1);
  CHECK(dom.coord(dom.linear_index(2, 1))[0] == doctest::Approx(1.0));
  CHECK(dom.coord(dom.linear_index(2, 1))[1] == doctest::Approx(0.5));
}

TEST_CASE("build_domain rejects bad input") {
  CHECK_THROWS_AS(build_domain({{0.0, 0.0}, {1.0, 0.0}}, 0.3, 1),
                  NonCommensurate);
  CHECK_THROWS_AS(build_domain({{0.0, 0.0}, {1.0, 0.0}}, 0.0, 1), BadSpacing);
  CHECK_THROWS_AS(build_domain({{0.0, 0.0}, {1.0, 0.0}}, -0.1, 1), BadSpacing);
  CHECK_THROWS_AS(build_domain({{0.0, 0.0}, {1.0, 1.0}}, 0.25, 3),
                  DimensionMismatch);
  CHECK_THROWS_AS(build_domain({{1.0, 0.0}, {0.0, 0.0}}, 0.25, 1),
                  NonCommensurate);
}

TEST_CASE("make_stencil matches brute-force enumeration") {
  struct Case {
    double eps;
    Norm norm;
    size_t count;
  };
  // Counts are hand-checked: unit euclidean ball has the 4 axis neighbors,
  // radius 1.5 adds the diagonals, unit linf ball is the 3x3 block.
  const Case cases[] = {
      {1.0, Norm::euclidean, 5},
      {1.5, Norm::euclidean, 9},
      {1.0, Norm::linf, 9},
      {1.0, Norm::l1, 5},
      {2.0, Norm::euclidean, 13},
  };
  for (const auto& c : cases) {
    CAPTURE(c.eps);
    const Stencil st = make_stencil(1.0, c.eps, c.norm, 2);
    const auto oracle = enumerate_ball(1.0, c.eps, c.norm, 2, 8);
    CHECK(st.size() == c.count);
    REQUIRE(st.size() == oracle.size());
    for (size_t k = 0; k < oracle.size(); ++k) {
      CHECK(st.offsets()[k] == oracle[k]);  // identical lexicographic order
    }
  }
}

TEST_CASE("stencil radius ties are kept") {
  // sqrt(2) <= 1.5 brings in the diagonals.
  const Stencil st = make_stencil(1.0, 1.5, Norm::euclidean, 2);
  CHECK(st.contains({1, 1}));
  CHECK(st.contains({-1, 1}));
  CHECK(!st.contains({2, 0}));
  // Exact tie at the radius in l1.
  const Stencil t = make_stencil(0.5, 1.0, Norm::l1, 2);
  CHECK(t.contains({1, 1}));
}

TEST_CASE("make_stencil error paths") {
  CHECK_THROWS_AS(make_stencil(1.0, 0.5, Norm::euclidean, 2), EmptyStencil);
  CHECK_THROWS_AS(make_stencil(0.0, 1.0, Norm::euclidean, 2), BadSpacing);
  CHECK_THROWS_AS(make_stencil(1.0, -1.0, Norm::euclidean, 2), BadSpacing);
  CHECK_THROWS_AS(make_stencil(1.0, 1.0, Norm::euclidean, 0),
                  DimensionMismatch);
}

TEST_CASE("stencil symmetry and center for all norms") {
  for (const Norm norm : {Norm::euclidean, Norm::l1, Norm::linf}) {
    for (const double eps : {1.0, 1.5, 2.0}) {
      CAPTURE(static_cast<int>(norm));
      CAPTURE(eps);
      const Stencil st = make_stencil(1.0, eps, norm, 2);
      CHECK(st.contains({0, 0}));
      CHECK(st.size() > 1);
      for (const auto& o : st.offsets()) {
        CHECK(st.contains({-o[0], -o[1]}));
      }
    }
  }
}

TEST_CASE("stencil doubling: eps offsets compose into the 2eps ball") {
  for (const Norm norm : {Norm::euclidean, Norm::l1, Norm::linf}) {
    for (const double eps : {1.0, 1.5, 2.0}) {
      const Stencil st = make_stencil(1.0, eps, norm, 2);
      const Stencil st2 = make_stencil(1.0, 2.0 * eps, norm, 2);
      for (const auto& o : st.offsets()) {
        for (const auto& p : st.offsets()) {
          CHECK(st2.contains({o[0] + p[0], o[1] + p[1]}));
        }
      }
    }
  }
}

TEST_CASE("classify_regions on the 1D five-node example") {
  const LatticeDomain dom = build_domain({{0.0, 0.0}, {1.0, 0.0}}, 0.25, 1);
  const Stencil st = make_stencil(0.25, 0.25, Norm::euclidean, 1);
  const Stencil st2 = make_stencil(0.25, 0.5, Norm::euclidean, 1);
  const RegionLabels rg = classify_regions(dom, st, st2);
  CHECK(rg.label(0) == Region::band);
  CHECK(rg.label(1) == Region::inner_eps);
  CHECK(rg.label(2) == Region::inner_2eps);
  CHECK(rg.label(3) == Region::inner_eps);
  CHECK(rg.label(4) == Region::band);
  CHECK(rg.band_nodes().size() == 2);
  CHECK(rg.inner_nodes().size() == 3);
  CHECK(rg.inner2_nodes().size() == 1);
}

TEST_CASE("classify_regions on the 3x3 example") {
  const LatticeDomain dom = build_domain({{0.0, 0.0}, {1.0, 1.0}}, 0.5, 2);
  const Stencil st = make_stencil(0.5, 0.5, Norm::euclidean, 2);
  const Stencil st2 = make_stencil(0.5, 1.0, Norm::euclidean, 2);
  const RegionLabels rg = classify_regions(dom, st, st2);
  CHECK(rg.band_nodes().size() == 8);
  CHECK(rg.inner_nodes().size() == 1);
  CHECK(rg.inner2_nodes().empty());
  CHECK(rg.label(dom.linear_index(1, 1)) == Region::inner_eps);
}

TEST_CASE("classify_regions throws EmptyInterior when every ball exits") {
  const LatticeDomain dom = build_domain({{0.0, 0.0}, {1.0, 0.0}}, 0.5, 1);
  const Stencil st = make_stencil(0.5, 1.0, Norm::euclidean, 1);
  const Stencil st2 = make_stencil(0.5, 2.0, Norm::euclidean, 1);
  CHECK_THROWS_AS(classify_regions(dom, st, st2), EmptyInterior);
}

TEST_CASE("classify_regions validates the stencil pair") {
  const LatticeDomain dom = build_domain({{0.0, 0.0}, {1.0, 1.0}}, 0.125, 2);
  const Stencil st = make_stencil(0.125, 0.25, Norm::euclidean, 2);
  const Stencil bad_radius = make_stencil(0.125, 0.375, Norm::euclidean, 2);
  const Stencil bad_norm = make_stencil(0.125, 0.5, Norm::linf, 2);
  CHECK_THROWS_AS(classify_regions(dom, st, bad_radius), BadValue);
  CHECK_THROWS_AS(classify_regions(dom, st, bad_norm), BadValue);
}

TEST_CASE("labels partition the node set and match ball containment") {
  for (const Norm norm : {Norm::euclidean, Norm::l1, Norm::linf}) {
    const LatticeDomain dom = test_util::unit_square(0.125);
    const Stencil st = make_stencil(0.125, 0.25, norm, 2);
    const Stencil st2 = make_stencil(0.125, 0.5, norm, 2);
    const RegionLabels rg = classify_regions(dom, st, st2);

    CHECK(rg.band_nodes().size() + rg.inner_nodes().size() ==
          static_cast<size_t>(dom.node_count()));

    // Independent oracle: walk every offset explicitly.
    auto ball_inside = [&](const Stencil& s, std::int64_t node) {
      const auto m = dom.multi_index(node);
      return std::all_of(s.offsets().begin(), s.offsets().end(),
                         [&](const std::array<int, 2>& o) {
                           return dom.contains(m[0] + o[0], m[1] + o[1]);
                         });
    };
    for (std::int64_t n = 0; n < dom.node_count(); ++n) {
      const bool in_eps = ball_inside(st, n);
      const bool in_2eps = ball_inside(st2, n);
      if (in_2eps) {
        CHECK(rg.label(n) == Region::inner_2eps);
      } else if (in_eps) {
        CHECK(rg.label(n) == Region::inner_eps);
      } else {
        CHECK(rg.label(n) == Region::band);
      }
    }
    // Nesting.
    CHECK(rg.inner2_nodes().size() <= rg.inner_nodes().size());
  }
}

TEST_CASE("node_at identifies lattice points") {
  const LatticeDomain dom = test_util::unit_square(0.25);
  const auto hit = dom.node_at({0.5, 0.75}, 1e-12);
  REQUIRE(hit.has_value());
  CHECK(*hit == dom.linear_index(2, 3));
  CHECK(!dom.node_at({0.6, 0.75}, 1e-12).has_value());
  CHECK(!dom.node_at({1.5, 0.0}, 1e-12).has_value());
}
