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

AffineFunction affine(std::initializer_list<long> linear, long constant) {
  AffineFunction f;
  for (long x : linear) f.linear.push_back(Rational(x));
  f.constant = constant;
  return f;
}

PiecewiseAffine constant_function(const Partition& g, const AffineFunction& f) {
  return {std::make_shared<const Partition>(g), std::vector<AffineFunction>(g.pieces().size(), f)};
}

bool differ_by_affine(const PiecewiseAffine& a, const PiecewiseAffine& b) {
  const AffineFunction d = a.per_piece[0] - b.per_piece[0];
  for (std::size_t j = 0; j < a.per_piece.size(); ++j)
    if (a.per_piece[j] - b.per_piece[j] != d) return false;
  return true;
}

std::set<RatVector> vertex_set(const LatticePolytope& p) { return {p.vertices().begin(), p.vertices().end()}; }

}  // namespace

TEST_CASE("wall functions") {
  SUBCASE("segment cut at 1") {
    auto alpha = wall_functions(catalog::segment_partition(2, {1}));
    REQUIRE(alpha.walls.size() == 1);
    CHECK(alpha.walls[0].f == affine({1}, -1));
    CHECK(*alpha.get(1, 0) == -alpha.walls[0].f);
  }
  SUBCASE("plane partition: the wall on x1 = 0") {
    auto g = catalog::projective_space_partition(2);
    auto alpha = wall_functions(g);
    bool found = false;
    for (const auto& w : alpha.walls) {
      if (w.f.linear[1] != 0) continue;
      found = true;
      CHECK(abs(w.f.linear[0]) == 1);
      CHECK(w.f.constant == 0);
    }
    CHECK(found);
    for (const auto& w : alpha.walls) {
      for (const auto& v : g.faces()[w.face].vertices) CHECK(w.f(v) == 0);
      CHECK(w.f(g.pieces()[w.j].relative_interior_point()) > 0);
    }
  }
  SUBCASE("chain partition walls are sum x - j") {
    auto alpha = wall_functions(catalog::chain_partition(3, 4, 3));
    REQUIRE(alpha.walls.size() == 3);
    for (const auto& w : alpha.walls) CHECK(w.f == affine({1, 1, 1}, -static_cast<long>(w.j)));
  }
}

TEST_CASE("cocycle condition") {
  SUBCASE("vacuous in dimension one") {
    auto g = catalog::segment_partition(4, {1, 2, 3});
    CHECK(check_cocycle(wall_functions(g), dual_complex(g)).ok);
  }
  SUBCASE("plane partition") {
    auto g = catalog::projective_space_partition(2);
    auto alpha = wall_functions(g);
    auto k = dual_complex(g);
    CHECK(check_cocycle(alpha, k).ok);
    for (const auto& s : k.simplices_of_dimension(2)) {
      AffineFunction sum = *alpha.get(s[0], s[1]) + *alpha.get(s[1], s[2]) + *alpha.get(s[2], s[0]);
      CHECK(sum.is_zero());
    }
  }
  SUBCASE("a perturbed cochain fails with a witness") {
    auto g = catalog::projective_space_partition(2);
    auto alpha = wall_functions(g);
    alpha.walls[0].f.constant += 1;
    auto c = check_cocycle(alpha, dual_complex(g));
    CHECK_FALSE(c.ok);
    REQUIRE(c.witness);
    CHECK(((*c.witness)[0] == alpha.walls[0].i || (*c.witness)[1] == alpha.walls[0].i ||
           (*c.witness)[2] == alpha.walls[0].i));
  }
}

TEST_CASE("integrating the cocycle") {
  SUBCASE("segment cut at 1") {
    auto f = lifting_function(catalog::segment_partition(2, {1}));
    CHECK(f.per_piece[0] == affine({0}, 0));
    CHECK(f.per_piece[1] == affine({1}, -1));
    CHECK(f.is_continuous());
  }
  SUBCASE("chain partition telescopes") {
    for (long d = 2; d <= 5; ++d) {
      auto f = lifting_function(catalog::chain_partition(3, d, 3));
      for (long j = 0; j < d; ++j)
        CHECK(f.per_piece[static_cast<std::size_t>(j)] == affine({j, j, j}, -j * (j + 1) / 2));
      CHECK(f.is_continuous());
    }
  }
  SUBCASE("breadth-first and depth-first trees agree") {
    for (std::size_t n = 2; n <= 3; ++n) {
      auto g = catalog::projective_space_partition(n);
      auto a = lifting_function(g, SpanningTree::BreadthFirst);
      auto b = lifting_function(g, SpanningTree::DepthFirst);
      CHECK(a.per_piece == b.per_piece);
    }
  }
  SUBCASE("another root differs by a global affine function") {
    auto g = catalog::projective_space_partition(3);
    auto alpha = wall_functions(g);
    auto k = dual_complex(g);
    auto a = integrate_cocycle(g, alpha, k, SpanningTree::BreadthFirst, 0);
    auto b = integrate_cocycle(g, alpha, k, SpanningTree::DepthFirst, 2);
    CHECK(b.per_piece[2].is_zero());
    CHECK(differ_by_affine(a, b));
  }
}

TEST_CASE("concavity") {
  SUBCASE("affine functions have zero concavity") {
    auto g = catalog::projective_space_partition(2);
    auto f = constant_function(g, affine({3, -1}, 2));
    for (const auto& c : concavities(f)) CHECK(c == 0);
  }
  SUBCASE("segment cut at 1") {
    auto g = catalog::segment_partition(2, {1});
    auto f = lifting_function(g);
    auto v = g.find_vertex(rv({1}));
    REQUIRE(v);
    CHECK(concavity(f, *v) == 1);
    // (F(0) - F(1)) + (F(2) - F(1))
    CHECK((f(rv({0})) - f(rv({1}))) + (f(rv({2})) - f(rv({1}))) == 1);
  }
  SUBCASE("linearity") {
    auto g = catalog::projective_space_partition(2);
    auto f = lifting_function(g);
    auto h = constant_function(g, affine({1, 2}, -1));
    PiecewiseAffine mix = f.scaled(Rational(3));
    for (std::size_t j = 0; j < mix.per_piece.size(); ++j) mix.per_piece[j] = mix.per_piece[j] + Rational(-2) * h.per_piece[j];
    for (auto v : g.vertices()) CHECK(concavity(mix, v) == 3 * concavity(f, v) - 2 * concavity(h, v));
  }
  SUBCASE("undefined at vertices of delta") {
    auto g = catalog::segment_partition(2, {1});
    auto f = lifting_function(g);
    auto v = g.find_face({rv({0})});
    REQUIRE(v);
    CHECK_THROWS_WITH_AS(concavity(f, *v), "concavity undefined at vertices of delta", MathError);
  }
}

TEST_CASE("minimal integral lifting") {
  SUBCASE("already integral") {
    auto l = minimal_integral_lifting(lifting_function(catalog::segment_partition(2, {1})));
    CHECK(l.scale == 1);
    CHECK(l.unit_concavity);
  }
  SUBCASE("half of it") {
    auto f = lifting_function(catalog::segment_partition(2, {1})).scaled(make_rational(Integer(1), Integer(2)));
    auto l = minimal_integral_lifting(f);
    CHECK(l.scale == 2);
  }
  SUBCASE("a multiple without unit concavity") {
    auto f = lifting_function(catalog::triangle_partition('a')).scaled(Rational(6));
    auto l = minimal_integral_lifting(f);
    CHECK(l.scale == make_rational(Integer(1), Integer(6)));
  }
  SUBCASE("agrees with a brute-force search") {
    std::vector<Partition> corpus{catalog::triangle_partition('a'), catalog::triangle_partition('b'),
                                  catalog::octagon_partition(), catalog::chain_partition(3, 4, 2)};
    for (const auto& g : corpus) {
      for (long k : {1L, 3L}) {
        for (long d : {1L, 2L}) {
          auto f = lifting_function(g).scaled(make_rational(Integer(k), Integer(d)));
          std::vector<Rational> values;
          for (const auto& m : g.ambient().lattice_points()) values.push_back(f(m));
          auto want = oracle::smallest_integral_multiplier(values, 12, 12);
          auto l = minimal_integral_lifting(f);
          CHECK(l.scale == want);
          if (k == 1) CHECK(l.scale == Rational(oracle::lcm_of_denominators(values)));
        }
      }
    }
  }
  SUBCASE("convex functions are refused") {
    auto f = lifting_function(catalog::segment_partition(2, {1})).scaled(Rational(-1));
    CHECK_THROWS_WITH_AS(minimal_integral_lifting(f), doctest::Contains("not a lifting function"), MathError);
  }
}

TEST_CASE("lifted polytopes") {
  SUBCASE("segment cut at 1") {
    auto g = catalog::segment_partition(2, {1});
    auto l = lift_polytope(g, minimal_integral_lifting(lifting_function(g)));
    CHECK(vertex_set(l.polytope) == std::set<RatVector>{rv({0, 0}), rv({1, 0}), rv({2, 1})});
    CHECK(l.nonsingular);
    for (std::size_t v = 0; v < l.polytope.vertices().size(); ++v) {
      std::vector<oracle::Point> e;
      for (const auto& x : l.polytope.edge_directions(v)) e.push_back(build::to_ll(x));
      CHECK(abs(oracle::det(e)) == 1);
    }
  }
  SUBCASE("plane partition has one lower facet per piece") {
    auto g = catalog::projective_space_partition(2);
    auto l = lift_polytope(g, minimal_integral_lifting(lifting_function(g)));
    CHECK(l.nonsingular);
    std::size_t lower = 0;
    for (const auto& h : l.polytope.facets()) lower += h.normal.back() > 0;
    CHECK(lower == g.pieces().size());
  }
  SUBCASE("the real line cut at 0..l") {
    for (long n = 1; n <= 4; ++n) {
      auto g = catalog::line_partition(n);
      auto l = lift_polytope(g, minimal_integral_lifting(lifting_function(g)));
      std::set<RatVector> want;
      for (long j = 0; j <= n; ++j) want.insert(rv({j, j * (j + 1) / 2}));
      CHECK(vertex_set(l.polytope) == want);
      std::set<IntVector> rays(l.polytope.rays().begin(), l.polytope.rays().end());
      CHECK(rays == std::set<IntVector>{iv({-1, 0}), iv({1, n + 1})});
      CHECK(l.nonsingular);
    }
  }
  SUBCASE("default and explicit caps") {
    auto g = catalog::segment_partition(2, {1});
    auto il = minimal_integral_lifting(lifting_function(g));
    auto l = lift_polytope(g, il, CapRequest{});
    REQUIRE(l.cap);
    CHECK(l.cap->a == iv({0}));
    CHECK(l.cap->b == 2);  // one above F(2) = 1
    CHECK(l.polytope.is_compact());
    auto m = lift_polytope(g, il, CapRequest{iv({1}), Integer(3)});
    CHECK(vertex_set(m.polytope) == std::set<RatVector>{rv({0, 0}), rv({1, 0}), rv({2, 1}), rv({0, 3}), rv({2, 5})});
  }
  SUBCASE("face kinds and projections") {
    for (std::size_t n = 2; n <= 3; ++n) {
      auto g = catalog::projective_space_partition(n);
      auto l = lift_polytope(g, minimal_integral_lifting(lifting_function(g)), CapRequest{});
      CHECK(check_projection(l).ok);
      std::set<std::size_t> lifts(l.lift_map.begin(), l.lift_map.end());
      CHECK(lifts.size() == g.faces().size());
      std::size_t count = 0, caps = 0;
      for (std::size_t f = 0; f < l.polytope.faces().size(); ++f) {
        auto kind = lifted_face_kind(l, f);
        if (kind == LiftedFaceKind::Lift) {
          ++count;
          CHECK(lifts.count(f) == 1);
        }
        caps += kind == LiftedFaceKind::Cap;
      }
      CHECK(count == g.faces().size());
      CHECK(caps > 0);
    }
  }
}

TEST_CASE("multi-parameter lifts") {
  SUBCASE("segment of length 4 cut at 1, 2, 3") {
    auto it = iterated_lift(catalog::standard_simplex(1, 4), iv({1}), {Integer(1), Integer(2), Integer(3)});
    CHECK(it.steps == 3);
    CHECK(it.agree);
    std::set<RatVector> want;
    for (long x = 0; x <= 4; ++x) want.insert(rv({x, std::max(0L, x - 1), std::max(0L, x - 2), std::max(0L, x - 3)}));
    CHECK(vertex_set(it.one_shot) == want);
    CHECK(it.one_shot.dimension() == 4);
  }
  SUBCASE("one hyperplane matches the single lift") {
    auto it = iterated_lift(catalog::standard_simplex(1, 2), iv({1}), {Integer(1)});
    auto g = catalog::segment_partition(2, {1});
    auto l = lift_polytope(g, minimal_integral_lifting(lifting_function(g)));
    CHECK(it.one_shot == l.polytope);
    CHECK(it.agree);
  }
  SUBCASE("two cuts of [0, 3] against the pointwise formula") {
    auto it = iterated_lift(catalog::standard_simplex(1, 3), iv({1}), {Integer(1), Integer(2)});
    CHECK(it.agree);
    for (long x = 0; x <= 3; ++x) {
      const std::size_t piece = x <= 1 ? 0 : (x == 2 ? 1 : 2);
      for (std::size_t k = 0; k < 2; ++k)
        CHECK(it.components[piece][k](rv({x})) == std::max(0L, x - 1 - static_cast<long>(k)));
    }
  }
  SUBCASE("bad offsets") {
    CHECK_THROWS_AS(iterated_lift(catalog::standard_simplex(1, 3), iv({1}), {Integer(2), Integer(1)}), MathError);
  }
}

TEST_CASE("extending support functions") {
  auto g = catalog::segment_partition(2, {1});
  auto l = lift_polytope(g, minimal_integral_lifting(lifting_function(g)), CapRequest{});
  SUBCASE("zero") {
    auto fan = normal_fan(g.ambient());
    auto e = extend_support_function(SupportFunction{fan, RatVector(fan.rays.size(), Rational(0))}, l);
    CHECK(e.convexity != Convexity::None);
    CHECK(e.restricts);
    for (std::size_t r = 0; r < e.function.fan.rays.size(); ++r)
      if (e.function.fan.rays[r].back() >= 0) CHECK(e.function.values[r] == 0);
  }
  SUBCASE("canonical class of the projective line") {
    auto phi = catalog::canonical_support_function(g.ambient());
    auto e = extend_support_function(phi, l);
    CHECK(e.convexity != Convexity::None);
    CHECK(e.restricts);
    CHECK(e.cap_value <= 0);
    for (std::size_t r = 0; r < e.function.fan.rays.size(); ++r)
      if (e.function.fan.rays[r].back() > 0) CHECK(e.function.values[r] == 0);
  }
  SUBCASE("open lifts are refused") {
    auto open = lift_polytope(g, minimal_integral_lifting(lifting_function(g)));
    CHECK_THROWS_AS(extend_support_function(catalog::canonical_support_function(g.ambient()), open), MathError);
  }
}
