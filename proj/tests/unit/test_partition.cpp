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

std::set<std::vector<std::size_t>> boundary_of_simplex(std::size_t n) {
  std::set<std::vector<std::size_t>> out;
  for (std::size_t k = 1; k <= n; ++k)
    for_each_subset(n + 1, k, [&](const std::vector<std::size_t>& s) {
      out.insert(s);
      return true;
    });
  return out;
}

}  // namespace

TEST_CASE("building partitions") {
  SUBCASE("segment cut at every integer") {
    for (long n = 2; n <= 5; ++n) {
      std::vector<long> cuts;
      for (long c = 1; c < n; ++c) cuts.push_back(c);
      auto g = catalog::segment_partition(n, cuts);
      CHECK(g.pieces().size() == static_cast<std::size_t>(n));
      CHECK(is_semistable(g));
    }
  }
  SUBCASE("overlapping pieces") {
    auto t = hull({{0, 0}, {3, 0}, {0, 3}});
    CHECK_THROWS_WITH_AS(Partition::build(t, {hull({{0, 0}, {2, 0}, {0, 2}}), hull({{1, 0}, {3, 0}, {0, 3}, {0, 1}})}),
                         doctest::Contains("interior overlap"), PartitionError);
  }
  SUBCASE("a gap") {
    auto t = hull({{0, 0}, {3, 0}, {0, 3}});
    CHECK_THROWS_WITH_AS(Partition::build(t, {hull({{0, 0}, {2, 0}, {0, 2}})}), doctest::Contains("do not cover"),
                         PartitionError);
  }
  SUBCASE("a piece sticking out") {
    auto t = hull({{0, 0}, {2, 0}, {0, 2}});
    CHECK_THROWS_WITH_AS(Partition::build(t, {hull({{0, 0}, {3, 0}, {0, 3}})}), doctest::Contains("not contained"),
                         PartitionError);
  }
  SUBCASE("a piece that is not simple") {
    auto o = hull({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
    CHECK_THROWS_WITH_AS(Partition::build(o, {o}), doctest::Contains("not simplicial"), PartitionError);
  }
  SUBCASE("projective space by the flag fan") {
    for (std::size_t n = 2; n <= 4; ++n) {
      auto g = catalog::projective_space_partition(n);
      CHECK(g.pieces().size() == n + 1);
      // piece i contains e_i
      for (std::size_t i = 1; i <= n; ++i) {
        RatVector e(n, Rational(-1));
        e[i - 1] = static_cast<long>(n);
        CHECK(g.pieces()[i].contains(e));
      }
      CHECK(g.pieces()[0].contains(RatVector(n, Rational(-1))));
    }
  }
  SUBCASE("a fan cone that only touches the polytope") {
    auto quadrant = LatticePolytope::from_vertices(build::ivs({{0, 0}, {2, 0}, {0, 2}, {2, 2}}));
    CHECK_THROWS_WITH_AS(partition_by_fan(quadrant, catalog::flag_fan(2)), doctest::Contains("lower-dimensional"),
                         MathError);
  }
  SUBCASE("a hyperplane that misses the interior") {
    CHECK_THROWS_WITH_AS(partition_by_hyperplanes(hull({{0}, {2}}), iv({1}), {Integer(2)}),
                         doctest::Contains("does not meet the interior"), MathError);
  }
}

TEST_CASE("semi-stability") {
  CHECK(is_semistable(catalog::triangle_partition('a')));
  CHECK(is_semistable(catalog::triangle_partition('b')));
  SemistableWitness w;
  auto c = catalog::triangle_partition('c');
  CHECK_FALSE(is_semistable(c, &w));
  CHECK(c.faces()[w.face].vertices == std::vector<RatVector>{rv({1, 1})});
  CHECK(w.face_dim == 0);
  CHECK(w.delta_face_dim == 2);
  CHECK(w.count == 2);
  CHECK(w.expected == 3);

  auto t = catalog::projective_space(3);
  CHECK(is_semistable(Partition::build(t, {t})));
}

TEST_CASE("faces of the partition exclude the vertices of delta") {
  auto g = catalog::triangle_partition('a');
  for (auto v : g.vertices()) CHECK_FALSE(g.faces()[v].is_delta_vertex);
  std::set<RatVector> got;
  for (auto v : g.vertices()) got.insert(g.faces()[v].vertices[0]);
  CHECK(got == std::set<RatVector>{rv({2, 0}), rv({0, 2})});
}

TEST_CASE("weight vectors") {
  SUBCASE("interior vertex of the plane partition") {
    auto g = catalog::projective_space_partition(2);
    auto v = g.find_vertex(rv({0, 0}));
    REQUIRE(v);
    auto w = weight_vector(g, *v);
    CHECK(w.weights == std::vector<Integer>{1, 1, 1});
    IntVector sum = zero_int_vector(2);
    for (std::size_t k = 0; k < w.edges.size(); ++k) sum = add(sum, scale(w.edges[k], w.edge_weights[k]));
    CHECK(is_zero(sum));
  }
  SUBCASE("vertices on edges of delta are balanced") {
    for (char variant : {'a', 'b'}) {
      auto g = catalog::triangle_partition(variant);
      for (auto v : g.vertices())
        if (g.faces()[v].delta_face_dim == 1) CHECK(weight_vector(g, v).weights == std::vector<Integer>{1, 1});
    }
  }
  SUBCASE("weights are positive with gcd 1 and satisfy the relation") {
    for (std::size_t n = 2; n <= 4; ++n) {
      auto g = catalog::projective_space_partition(n);
      for (auto v : g.vertices()) {
        auto w = weight_vector(g, v);
        Integer gg = 0;
        for (const auto& x : w.weights) {
          CHECK(x > 0);
          gg = gcd(gg, x);
        }
        CHECK(gg == 1);
        IntVector sum = zero_int_vector(n);
        for (std::size_t k = 0; k < w.edges.size(); ++k) sum = add(sum, scale(w.edges[k], w.edge_weights[k]));
        CHECK(is_zero(sum));
        CHECK(std::is_sorted(w.weights.begin() + 1, w.weights.end()));
      }
    }
  }
}

TEST_CASE("classification") {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto& c = catalog::projective_space_partition(n).classification();
    CHECK(c.semistable);
    CHECK(c.balanced);
    CHECK(c.nonsingular);
    CHECK(c.mildly_singular);
  }
  const auto& o = catalog::octagon_partition().classification();
  CHECK(o.semistable);
  CHECK(o.nonsingular);

  auto g = catalog::triangle_partition('b');
  CHECK(g.flags().nonsingular == Tri::Unknown);
  (void)g.classification();
  auto f1 = g.flags();
  auto copy = g;
  CHECK(f1.nonsingular == Tri::Yes);
  CHECK(copy.flags().nonsingular == Tri::Yes);
  auto c = catalog::triangle_partition('c');
  CHECK(c.flags().semistable == Tri::Unknown);
  (void)c.classification();
  CHECK(c.flags().semistable == Tri::No);
}

TEST_CASE("the weighted projective space example fails to build") {
  // Three cones of the flag fan meet on an edge of the simplex, so the piece
  // through (-1,-1,2,0) has five edges at that vertex.
  CHECK_THROWS_WITH_AS(catalog::weighted_projective_partition(), doctest::Contains("not simplicial"), PartitionError);
}

TEST_CASE("dual complexes") {
  SUBCASE("chains are paths") {
    for (long d = 2; d <= 5; ++d) {
      auto k = dual_complex(catalog::chain_partition(3, d, 3));
      CHECK(k.vertex_count == static_cast<std::size_t>(d));
      CHECK(k.dimension() == 1);
      auto edges = k.simplices_of_dimension(1);
      CHECK(edges.size() == static_cast<std::size_t>(d - 1));
      for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(d); ++j) CHECK(k.contains({j, j + 1}));
    }
  }
  SUBCASE("one hyperplane gives one edge") {
    auto k = dual_complex(catalog::octagon_partition());
    CHECK(k.simplices_of_dimension(1).size() == 1);
    CHECK(k.is_connected());
  }
  SUBCASE("projective space gives the boundary of a simplex") {
    for (std::size_t n = 2; n <= 4; ++n) {
      auto k = dual_complex(catalog::projective_space_partition(n), 1);
      std::set<std::vector<std::size_t>> got(k.simplices.begin(), k.simplices.end());
      CHECK(got == boundary_of_simplex(n));
    }
  }
}

TEST_CASE("restriction") {
  SUBCASE("a facet of the rank 3 simplex is cut into three pieces around a point") {
    auto g = catalog::projective_space_partition(3);
    const auto& d = g.ambient();
    for (auto f : d.faces_of_dimension(2)) {
      auto r = restrict(g, f);
      CHECK(r.pieces().size() == 3);
      CHECK(is_semistable(r));
      auto k = dual_complex(r, 1);
      std::set<std::vector<std::size_t>> got(k.simplices.begin(), k.simplices.end());
      CHECK(got == boundary_of_simplex(2));
    }
  }
  SUBCASE("edges get integer cut points") {
    auto g = catalog::triangle_partition('b');
    for (auto e : g.ambient().faces_of_dimension(1)) {
      auto r = restrict(g, e);
      CHECK(is_semistable(r));
      for (const auto& p : r.pieces())
        for (const auto& v : p.vertices()) CHECK(is_integral(v));
    }
  }
  SUBCASE("the top facet of a chain is not cut") {
    auto g = catalog::chain_partition(3, 4, 3);
    const auto& d = g.ambient();
    for (auto f : d.faces_of_dimension(2)) {
      const auto& h = d.facets()[d.faces()[f].facets.find_first()];
      if (h.normal != iv({-1, -1, -1})) continue;
      CHECK(restrict(g, f).pieces().size() == 1);
    }
  }
}

TEST_CASE("structural propositions on the corpus") {
  std::vector<Partition> corpus{catalog::triangle_partition('a'),    catalog::triangle_partition('b'),
                                catalog::projective_space_partition(2), catalog::projective_space_partition(3),
                                catalog::octagon_partition(),           catalog::chain_partition(3, 4, 2),
                                catalog::chain_partition(3, 4, 3)};
  for (const auto& g : corpus) {
    const std::size_t n = g.rank();
    // intersections of l pieces have dimension n - l + 1
    for (std::size_t l = 2; l <= g.pieces().size(); ++l)
      for_each_subset(g.pieces().size(), l, [&](const std::vector<std::size_t>& s) {
        std::optional<LatticePolytope> q = g.pieces()[s[0]];
        for (std::size_t k = 1; k < s.size() && q; ++k) q = q->try_intersect(g.pieces()[s[k]]);
        if (q) CHECK(q->dimension() == static_cast<int>(n - l + 1));
        return true;
      });
    for (auto v : g.vertices()) {
      const auto& face = g.faces()[v];
      if (face.delta_face_dim == static_cast<int>(n)) CHECK(g.edges_at(v).size() == n + 1);
      if (is_nonsingular_partition_vertex(g, v)) {
        IntVector sum = zero_int_vector(n);
        for (auto e : g.edges_at(v, face.delta_face)) sum = add(sum, g.edge_direction(e, face.vertices[0]));
        CHECK(is_zero(sum));
      }
    }
    const auto& c = g.classification();
    if (c.nonsingular) CHECK(c.balanced);
  }
}

TEST_CASE("equivalent partitions") {
  auto first = catalog::chain_partition(3, 4, 1);
  auto last = catalog::chain_partition(3, 4, 3);
  auto map = partitions_equivalent(first, last);
  REQUIRE(map);
  // x_1 = j goes to x_1 + x_2 + x_3 = 4 - j
  for (const auto& m : first.ambient().lattice_points()) {
    auto image = map->apply(to_rational(m));
    CHECK(image[0] + image[1] + image[2] == 4 - Rational(m[0]));
  }
  CHECK_FALSE(partitions_equivalent(catalog::chain_partition(3, 4, 2), last));
  CHECK_FALSE(partitions_equivalent(catalog::segment_partition(3, {1}), catalog::segment_partition(3, {1, 2})));
  CHECK(partitions_equivalent(catalog::segment_partition(3, {1}), catalog::segment_partition(3, {2})));
}
