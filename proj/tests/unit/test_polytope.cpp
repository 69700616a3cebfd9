#include "doctest.h"

#include "builders.hpp"
#include "oracles.hpp"
#include "toricdegen/catalog.hpp"

#include <set>

using namespace toricdegen;
using build::hull;
using build::iv;
using build::rv;

namespace {

std::vector<oracle::Point> ll_points(const LatticePolytope& p) {
  std::vector<oracle::Point> out;
  for (const auto& v : p.points()) out.push_back(build::to_ll(v));
  return out;
}

std::size_t count_faces(const LatticePolytope& p, int dim) { return p.faces_of_dimension(dim).size(); }

SupportFunction support(const Fan& fan, std::initializer_list<long> values) {
  SupportFunction phi{fan, {}};
  for (long v : values) phi.values.push_back(Rational(v));
  return phi;
}

}  // namespace

TEST_CASE("polytope from vertices") {
  SUBCASE("the triangle of the triptych") {
    auto t = hull({{0, 0}, {3, 0}, {0, 3}});
    std::set<std::pair<IntVector, Rational>> got;
    for (const auto& h : t.facets()) got.insert({h.normal, h.offset});
    std::set<std::pair<IntVector, Rational>> want{
        {iv({1, 0}), Rational(0)}, {iv({0, 1}), Rational(0)}, {iv({-1, -1}), Rational(3)}};
    CHECK(got == want);
  }
  SUBCASE("a single point") {
    auto p = hull({{2, -1, 5}});
    CHECK(p.dimension() == 0);
    CHECK(p.facets().empty());
    CHECK(p.points().size() == 1);
  }
  SUBCASE("the reflexive simplex in rank 3 against brute-force faces") {
    auto d = catalog::projective_space(3);
    auto s = oracle::skeleton(ll_points(d));
    CHECK(s.facets == 4);
    CHECK(s.edges == 6);
    CHECK(s.vertices == 4);
    CHECK(count_faces(d, 2) == s.facets);
    CHECK(count_faces(d, 1) == s.edges);
    CHECK(count_faces(d, 0) == s.vertices);
  }
  SUBCASE("facets agree with the brute-force oracle on a non-simplex") {
    auto p = hull({{0, 0, 0}, {2, 0, 0}, {0, 3, 0}, {0, 0, 1}, {2, 3, 1}, {1, 1, 2}});
    auto want = oracle::facets(ll_points(p));
    std::set<oracle::Facet> got;
    for (const auto& h : p.facets()) got.insert({build::to_ll(h.normal), Integer(h.offset.get_num()).get_si()});
    CHECK(got == want);
    auto s = oracle::skeleton(ll_points(p));
    CHECK(count_faces(p, 1) == s.edges);
  }
}

TEST_CASE("polytope from halfspaces") {
  SUBCASE("no constraints give the whole space with the trivial fan") {
    auto w = LatticePolytope::from_halfspaces(3, {});
    CHECK(w.is_full_dimensional());
    CHECK(w.points().size() == 1);  // a representative of the minimal face
    CHECK(w.lineality().size() == 3);
    CHECK(w.faces().size() == 1);
    auto fan = normal_fan(w);
    CHECK(fan.rays.empty());
    CHECK(fan.cones.size() == 1);
  }
  SUBCASE("a segment") {
    auto s = LatticePolytope::from_halfspaces(1, {{iv({1}), Rational(0)}, {iv({-1}), Rational(2)}});
    CHECK(s.is_compact());
    CHECK(s.vertices() == std::vector<RatVector>{rv({0}), rv({2})});
  }
  SUBCASE("the quadrant") {
    auto q = LatticePolytope::from_halfspaces(2, {{iv({1, 0}), Rational(0)}, {iv({0, 1}), Rational(0)}});
    CHECK(q.vertices().size() == 1);
    CHECK(q.rays().size() == 2);
    CHECK_FALSE(q.is_compact());
  }
  SUBCASE("infeasible") {
    CHECK_THROWS_WITH_AS(
        LatticePolytope::from_halfspaces(1, {{iv({1}), Rational(-3)}, {iv({-1}), Rational(2)}}),
        "empty polyhedron", MathError);
  }
}

TEST_CASE("normal fans") {
  SUBCASE("unit square") {
    auto f = normal_fan(hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
    CHECK(f.rays.size() == 4);
    CHECK(f.maximal_cones().size() == 4);
    CHECK(f.is_complete());
  }
  SUBCASE("the reflexive simplices give the fan of projective space") {
    for (std::size_t n = 1; n <= 4; ++n) {
      auto f = normal_fan(catalog::projective_space(n));
      std::set<IntVector> rays(f.rays.begin(), f.rays.end());
      std::set<IntVector> want;
      IntVector minus(n, Integer(-1));
      for (std::size_t i = 0; i < n; ++i) want.insert(unit_int_vector(n, i));
      want.insert(minus);
      CHECK(rays == want);
      CHECK(f.is_complete());
    }
  }
  SUBCASE("segment") {
    auto f = normal_fan(hull({{0}, {2}}));
    std::set<IntVector> rays(f.rays.begin(), f.rays.end());
    CHECK(rays == std::set<IntVector>{iv({1}), iv({-1})});
  }
  SUBCASE("lower-dimensional input is refused") {
    CHECK_THROWS_AS(normal_fan(hull({{0, 0}, {1, 1}})), MathError);
  }
  SUBCASE("unbounded polyhedra give incomplete fans") {
    auto q = LatticePolytope::from_halfspaces(2, {{iv({1, 0}), Rational(0)}, {iv({0, 1}), Rational(0)}});
    CHECK_FALSE(normal_fan(q).is_complete());
  }
}

TEST_CASE("simplicial and nonsingular polytopes") {
  for (std::size_t n = 2; n <= 3; ++n) {
    auto d = catalog::projective_space(n);
    CHECK(is_nonsingular(d));
    // Oracle: edges at every vertex have determinant +-1.
    for (std::size_t v = 0; v < d.vertices().size(); ++v) {
      std::vector<oracle::Point> e;
      for (const auto& x : d.edge_directions(v)) e.push_back(build::to_ll(x));
      CHECK(abs(oracle::det(e)) == 1);
    }
  }
  auto w = catalog::weighted_projective_space();
  CHECK(is_simplicial(w));
  auto check = check_nonsingular(w);
  CHECK_FALSE(check.ok);
  REQUIRE(check.witness);
  CHECK(w.contains(*check.witness));
  CHECK(is_nonsingular(hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}})));
  // An octahedron is not simple.
  CHECK_FALSE(is_simplicial(hull({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}})));
}

TEST_CASE("support-function classification") {
  auto p1p1 = normal_fan(hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  SUBCASE("zero is affine") {
    SupportFunction phi{p1p1, RatVector(p1p1.rays.size(), Rational(0))};
    CHECK(classify_support_function(phi) == Convexity::Affine);
  }
  SUBCASE("canonical class of projective space is strictly convex") {
    for (std::size_t n = 1; n <= 4; ++n)
      CHECK(classify_support_function(catalog::canonical_support_function(catalog::projective_space(n))) ==
            Convexity::StrictlyConvex);
  }
  SUBCASE("pulled back from one factor") {
    SupportFunction phi{p1p1, {}};
    for (const auto& r : p1p1.rays) phi.values.push_back(r[0] != 0 ? Rational(-1) : Rational(0));
    CHECK(classify_support_function(phi) == Convexity::Convex);
  }
  SUBCASE("not convex") {
    SupportFunction phi{p1p1, {}};
    for (const auto& r : p1p1.rays) phi.values.push_back(r[0] != 0 ? Rational(1) : Rational(0));
    CHECK(classify_support_function(phi) == Convexity::None);
    CHECK_THROWS_AS(divisor_polytope(phi), MathError);
  }
  SUBCASE("incomplete fan") {
    auto cone = fan_from_maximal_cones(2, {iv({1, 0}), iv({0, 1})}, {{0, 1}});
    CHECK_THROWS_WITH_AS(classify_support_function(support(cone, {0, 0})), "classification requires complete fan",
                         MathError);
  }
}

TEST_CASE("divisor polytopes") {
  SUBCASE("canonical class of the plane gives the reflexive triangle") {
    auto fan = normal_fan(catalog::projective_space(2));
    auto p = divisor_polytope(SupportFunction{fan, RatVector(fan.rays.size(), Rational(-1))});
    CHECK(p == hull({{-1, -1}, {2, -1}, {-1, 2}}));
  }
  SUBCASE("zero function gives the origin") {
    auto fan = normal_fan(hull({{0, 0}, {1, 0}, {0, 1}}));
    auto p = divisor_polytope(SupportFunction{fan, RatVector(fan.rays.size(), Rational(0))});
    CHECK(p.dimension() == 0);
    CHECK(p.points() == std::vector<RatVector>{rv({0, 0})});
  }
  SUBCASE("degree d on the projective line") {
    for (long d = 1; d <= 5; ++d) {
      auto p = divisor_polytope(catalog::projective_line_divisor(d));
      CHECK(p == hull({{0}, {d}}));
      CHECK(p.lattice_points().size() == static_cast<std::size_t>(d + 1));
    }
  }
}

TEST_CASE("lattice points") {
  SUBCASE("triangle against a bounding-box count") {
    auto t = hull({{0, 0}, {3, 0}, {0, 3}});
    auto want = oracle::count_box(2, -1, 4, [](const oracle::Point& p) { return p[0] >= 0 && p[1] >= 0 && p[0] + p[1] <= 3; });
    CHECK(t.lattice_points().size() == want);
    CHECK(want == 10);
  }
  SUBCASE("segments") {
    for (long d = 0; d <= 6; ++d) CHECK(hull({{0}, {d}}).lattice_points().size() == static_cast<std::size_t>(d + 1));
  }
  SUBCASE("degree-4 simplex in rank 3") {
    auto s = catalog::standard_simplex(3, 4);
    auto want = oracle::count_box(3, 0, 4, [](const oracle::Point& p) { return p[0] + p[1] + p[2] <= 4; });
    CHECK(s.lattice_points().size() == want);
    CHECK(want == static_cast<std::size_t>(oracle::binomial(7, 3)));
  }
  SUBCASE("unbounded input is refused") {
    auto q = LatticePolytope::from_halfspaces(1, {{iv({1}), Rational(0)}});
    CHECK_THROWS_AS(q.lattice_points(), MathError);
  }
}

TEST_CASE("lattice equivalence") {
  auto check_map = [](const LatticePolytope& p, const LatticePolytope& q, const AffineLatticeMap& m) {
    std::set<RatVector> image, target;
    const auto cp = p.chart(), cq = q.chart();
    for (const auto& v : q.vertices()) target.insert(m.intrinsic ? cq.coordinates(v) : v);
    for (const auto& v : p.vertices()) image.insert(m.apply(m.intrinsic ? cp.coordinates(v) : v));
    return image == target && abs(determinant(m.matrix)) == 1;
  };
  SUBCASE("identity") {
    auto p = catalog::projective_space(3);
    auto m = lattice_equivalent(p, p);
    REQUIRE(m);
    CHECK(check_map(p, p, *m));
  }
  SUBCASE("the first chain partition matches the last one") {
    auto a = catalog::chain_partition(3, 4, 1);
    auto c = catalog::chain_partition(3, 4, 3);
    for (std::size_t j = 0; j < 4; ++j) {
      auto m = lattice_equivalent(a.pieces()[j], c.pieces()[3 - j]);
      REQUIRE(m);
      CHECK(check_map(a.pieces()[j], c.pieces()[3 - j], *m));
    }
    CHECK(partitions_equivalent(a, c));
  }
  SUBCASE("outer pieces of the middle chain partition") {
    auto g = catalog::chain_partition(3, 4, 2);
    auto m = lattice_equivalent(g.pieces()[0], g.pieces()[3]);
    REQUIRE(m);
    CHECK(check_map(g.pieces()[0], g.pieces()[3], *m));
    CHECK_FALSE(lattice_equivalent(g.pieces()[0], g.pieces()[1]));
  }
  SUBCASE("lower-dimensional polytopes use intrinsic coordinates") {
    auto p = hull({{0, 0}, {2, 2}});
    auto q = hull({{1, 0}, {1, 2}});
    auto m = lattice_equivalent(p, q);
    REQUIRE(m);
    CHECK(m->intrinsic);
    CHECK(check_map(p, q, *m));
    CHECK_FALSE(lattice_equivalent(p, hull({{0, 0}, {0, 3}})));
    auto t = hull({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}});
    auto u = hull({{0, 0, 0}, {1, 1, 0}, {0, 1, 1}});
    auto mt = lattice_equivalent(t, u);
    REQUIRE(mt);
    CHECK(check_map(t, u, *mt));
  }
  SUBCASE("different lattice point counts are never equivalent") {
    CHECK_FALSE(lattice_equivalent(hull({{0, 0}, {2, 0}, {0, 1}}), hull({{0, 0}, {1, 0}, {0, 1}})));
    CHECK_FALSE(lattice_equivalent(hull({{0, 0}, {2, 0}, {0, 1}}), hull({{0, 0}, {2, 0}, {0, 2}})));
  }
}
