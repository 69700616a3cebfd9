#include "doctest.h"

#include "builders.hpp"
#include "oracles.hpp"
#include "toricdegen/catalog.hpp"
#include "toricdegen/degeneration.hpp"

#include <set>

using namespace toricdegen;
using build::iv;
using build::rv;

namespace {

LiftedPolytope open_lift(const Partition& g) { return lift_polytope(g, minimal_integral_lifting(lifting_function(g))); }

std::size_t expected_factors(const LocalChart& c) { return c.delta_vertex ? 1 : static_cast<std::size_t>(c.face_dim + 1); }

}  // namespace

TEST_CASE("lattice sequences") {
  auto s1 = build_sequences(1);
  CHECK(s1.i == IntMatrix{iv({1}), iv({0})});
  CHECK(s1.mu == IntMatrix{iv({0, 1})});
  for (std::size_t n = 1; n <= 5; ++n) {
    auto s = build_sequences(n);
    CHECK(s.is_exact());
    for (const auto& row : multiply(s.mu, s.i)) CHECK(is_zero(row));
    for (const auto& row : multiply(s.nu, s.j)) CHECK(is_zero(row));
  }
  CHECK_THROWS_AS(build_sequences(0), MathError);
}

TEST_CASE("degeneration reports") {
  SUBCASE("rank 3 projective space") {
    auto g = catalog::projective_space_partition(3);
    auto r = build_report(open_lift(g));
    CHECK(r.components.size() == 4);
    for (const auto& c : r.components) CHECK(c.equivalence_class == 0);
    CHECK(r.dual_graph.simplices == dual_complex(g).simplices);
    CHECK_FALSE(r.weak);
    CHECK(r.fan_checks.subfan);
    CHECK(r.fan_checks.upper);
    REQUIRE(r.fan_checks.support);
    CHECK(*r.fan_checks.support);
  }
  SUBCASE("segment cut at every integer") {
    for (long n = 2; n <= 5; ++n) {
      std::vector<long> cuts;
      for (long c = 1; c < n; ++c) cuts.push_back(c);
      auto g = catalog::segment_partition(n, cuts);
      auto r = build_report(open_lift(g));
      CHECK(r.components.size() == static_cast<std::size_t>(n));
      for (const auto& c : r.components) {
        CHECK(c.equivalence_class == 0);
        CHECK(c.polytope.lattice_points().size() == 2);
      }
      CHECK(r.dual_graph.simplices_of_dimension(1).size() == static_cast<std::size_t>(n - 1));
    }
  }
  SUBCASE("middle chain partition classes") {
    auto r = build_report(open_lift(catalog::chain_partition(3, 4, 2)));
    REQUIRE(r.components.size() == 4);
    CHECK(r.components[0].equivalence_class == r.components[3].equivalence_class);
    CHECK(r.components[1].equivalence_class == r.components[2].equivalence_class);
    CHECK(r.components[0].equivalence_class != r.components[1].equivalence_class);
  }
  SUBCASE("unverified lifts are refused") {
    auto l = open_lift(catalog::segment_partition(2, {1}));
    l.lift_map.pop_back();
    CHECK_THROWS_WITH_AS(build_report(l), "lifted polytope is not verified", MathError);
  }
}

TEST_CASE("local charts") {
  SUBCASE("the whole space cut by the flag fan") {
    for (std::size_t n = 1; n <= 3; ++n) {
      auto g = catalog::open_space_partition(n);
      auto charts = local_charts(open_lift(g));
      REQUIRE(charts.size() == 1);
      CHECK(charts[0].monomial.size() == n + 1);
      CHECK(charts[0].exponents == std::vector<Integer>(n + 1, Integer(1)));
    }
  }
  SUBCASE("vertices of delta give one factor") {
    auto g = catalog::triangle_partition('b');
    auto l = open_lift(g);
    std::size_t at_vertices = 0;
    for (const auto& c : local_charts(l)) {
      if (!c.delta_vertex) continue;
      ++at_vertices;
      CHECK(c.monomial.size() == 1);
      CHECK(c.edge_sum_holds);
    }
    CHECK(at_vertices == 3);
  }
  SUBCASE("factor counts follow the containing face") {
    for (std::size_t n = 2; n <= 3; ++n) {
      auto g = catalog::projective_space_partition(n);
      auto l = open_lift(g);
      auto charts = local_charts(l);
      std::size_t on_facets = 0;
      for (const auto& c : charts) {
        CHECK(c.monomial.size() == expected_factors(c));
        CHECK(c.edge_sum_holds);
        if (!c.delta_vertex && c.face_dim == 2 && n == 3) ++on_facets;
      }
      if (n == 3) CHECK(on_facets == 4);
      CHECK(charts_consistent(l, charts));
    }
  }
  SUBCASE("a broken chart is detected") {
    auto g = catalog::triangle_partition('a');
    auto l = open_lift(g);
    auto charts = local_charts(l);
    CHECK(charts_consistent(l, charts));
    charts[0].exponents[0] += 1;
    CHECK_FALSE(charts_consistent(l, charts));
  }
}

TEST_CASE("family equations") {
  SUBCASE("quartic chain") {
    auto g = catalog::chain_partition(3, 4, 3);
    auto fe = family_equations(open_lift(g));
    auto count = oracle::count_box(3, 0, 4, [](const oracle::Point& p) { return p[0] + p[1] + p[2] <= 4; });
    CHECK(fe.points.size() == count);
    std::size_t zeros = 0;
    for (std::size_t k = 0; k < fe.points.size(); ++k) {
      const auto& m = fe.points[k];
      Integer s = m[0] + m[1] + m[2];
      // Oracle: the lifting function is sum_t max(0, s - t).
      Integer want = 0;
      for (long t = 1; t <= 3; ++t)
        if (s > t) want += s - t;
      CHECK(fe.exponents[k] == want);
      zeros += fe.exponents[k] == 0;
    }
    CHECK(zeros == 4);
    CHECK(fe.supports[0].size() == 4);
    CHECK(fe.polynomial().rfind("a_1 + a_2*x3 + ", 0) == 0);
  }
  SUBCASE("trivial partition") {
    auto d = catalog::standard_simplex(2, 2);
    auto fe = family_equations(open_lift(Partition::build(d, {d})));
    for (const auto& e : fe.exponents) CHECK(e == 0);
    CHECK(fe.polynomial().find("lambda") == std::string::npos);
  }
  SUBCASE("segment cut at 1") {
    auto fe = family_equations(open_lift(catalog::segment_partition(2, {1})));
    CHECK(fe.exponents == std::vector<Integer>{0, 0, 1});
    CHECK(fe.polynomial() == "a_1 + a_2*x1 + a_3*lambda*x1^2");
  }
  SUBCASE("another anchor") {
    auto fe = family_equations(open_lift(catalog::segment_partition(2, {1})), 1);
    CHECK(fe.exponents == std::vector<Integer>{1, 0, 0});
  }
  SUBCASE("seeded coefficients are deterministic and nonzero") {
    auto l = open_lift(catalog::chain_partition(3, 4, 3));
    auto a = family_equations(l, std::nullopt, 42);
    auto b = family_equations(l, std::nullopt, 42);
    auto c = family_equations(l, std::nullopt, 43);
    CHECK(a.coefficients == b.coefficients);
    CHECK(a.coefficients != c.coefficients);
    for (const auto& s : a.coefficients) CHECK(parse_rational(s) != 0);
  }
  SUBCASE("unbounded polytopes are refused") {
    CHECK_THROWS_WITH_AS(family_equations(open_lift(catalog::line_partition(2))),
                         "family equations require a compact polytope", MathError);
  }
}
