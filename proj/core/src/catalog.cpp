#include "toricdegen/catalog.hpp"

#include <string>

namespace toricdegen::catalog {

namespace {

IntVector vec(std::initializer_list<long> values) {
  IntVector v;
  for (long x : values) v.push_back(Integer(x));
  return v;
}

LatticePolytope hull(std::initializer_list<std::initializer_list<long>> points) {
  std::vector<IntVector> pts;
  for (const auto& p : points) pts.push_back(vec(p));
  return LatticePolytope::from_vertices(pts);
}

/// Reorders pieces so that piece i contains the i-th listed point.
Partition ordered_by(const Partition& g, const std::vector<RatVector>& anchors) {
  std::vector<LatticePolytope> pieces;
  for (const auto& a : anchors) {
    for (const auto& p : g.pieces())
      if (p.contains(a)) {
        pieces.push_back(p);
        break;
      }
  }
  if (pieces.size() != g.pieces().size()) throw MathError("anchor points do not single out the pieces");
  return Partition::build(g.ambient(), std::move(pieces));
}

LatticePolytope simplex_over(const IntVector& origin, const std::vector<Integer>& lengths) {
  const std::size_t n = origin.size();
  std::vector<IntVector> pts{origin};
  for (std::size_t i = 0; i < n; ++i) {
    IntVector v = origin;
    v[i] += lengths[i];
    pts.push_back(v);
  }
  return LatticePolytope::from_vertices(pts);
}

}  // namespace

LatticePolytope standard_simplex(std::size_t n, long d) {
  return simplex_over(zero_int_vector(n), std::vector<Integer>(n, Integer(d)));
}

LatticePolytope projective_space(std::size_t n) {
  return simplex_over(IntVector(n, Integer(-1)), std::vector<Integer>(n, Integer(static_cast<long>(n) + 1)));
}

Fan flag_fan(std::size_t n) {
  std::vector<IntVector> rays;
  rays.push_back(unit_int_vector(n, 0));
  for (std::size_t i = 1; i < n; ++i) rays.push_back(sub(unit_int_vector(n, i), unit_int_vector(n, i - 1)));
  rays.push_back(negate(unit_int_vector(n, n - 1)));
  std::vector<std::vector<std::size_t>> maximal;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    std::vector<std::size_t> cone;
    for (std::size_t r = 0; r <= n; ++r)
      if (r != skip) cone.push_back(r);
    maximal.push_back(cone);
  }
  return fan_from_maximal_cones(n, rays, maximal);
}

Partition projective_space_partition(std::size_t n) {
  const LatticePolytope delta = projective_space(n);
  std::vector<RatVector> anchors{RatVector(n, Rational(-1))};
  for (std::size_t i = 0; i < n; ++i) {
    RatVector v(n, Rational(-1));
    v[i] = static_cast<long>(n);
    anchors.push_back(v);
  }
  return ordered_by(partition_by_fan(delta, flag_fan(n)), anchors);
}

LatticePolytope weighted_projective_space() {
  return simplex_over(vec({-1, -1, -1, -1}), {Integer(8), Integer(4), Integer(4), Integer(4)});
}

Partition weighted_projective_partition() { return partition_by_fan(weighted_projective_space(), flag_fan(4)); }

Partition triangle_partition(char variant) {
  const LatticePolytope delta = hull({{0, 0}, {3, 0}, {0, 3}});
  switch (variant) {
    case 'a':
      return Partition::build(delta, {hull({{0, 0}, {2, 0}, {0, 2}}), hull({{2, 0}, {3, 0}, {0, 3}, {0, 2}})});
    case 'b':
      return Partition::build(delta, {hull({{0, 0}, {1, 0}, {1, 1}, {0, 2}}), hull({{1, 0}, {3, 0}, {2, 1}, {1, 1}}),
                                      hull({{0, 2}, {1, 1}, {2, 1}, {0, 3}})});
    case 'c':
      return Partition::build(delta, {hull({{0, 0}, {1, 0}, {1, 1}, {0, 3}}), hull({{1, 0}, {3, 0}, {1, 2}}),
                                      hull({{0, 3}, {1, 1}, {1, 2}})});
    default:
      throw MathError(std::string("unknown triangle partition '") + variant + "'");
  }
}

Partition octagon_partition() {
  const LatticePolytope delta = hull({{1, 1}, {3, 1}, {4, 2}, {4, 3}, {3, 4}, {1, 4}, {0, 3}, {0, 2}});
  return partition_by_hyperplanes(delta, vec({1, 0}), {Integer(2)});
}

Partition chain_partition(std::size_t n, long d, std::size_t k) {
  if (k == 0 || k > n) throw MathError("chain partition needs 1 <= k <= n");
  IntVector m(n, Integer(0));
  for (std::size_t i = 0; i < k; ++i) m[i] = 1;
  std::vector<Integer> offsets;
  for (long j = 1; j < d; ++j) offsets.push_back(Integer(j));
  return partition_by_hyperplanes(standard_simplex(n, d), m, offsets);
}

Partition segment_partition(long length, const std::vector<long>& cuts) {
  std::vector<Integer> offsets;
  for (long c : cuts) offsets.push_back(Integer(c));
  return partition_by_hyperplanes(hull({{0}, {length}}), vec({1}), offsets);
}

Partition line_partition(long l) {
  std::vector<Integer> offsets;
  for (long j = 0; j <= l; ++j) offsets.push_back(Integer(j));
  return partition_by_hyperplanes(LatticePolytope::whole_space(1), vec({1}), offsets);
}

Partition open_space_partition(std::size_t n) {
  return partition_by_fan(LatticePolytope::whole_space(n), flag_fan(n));
}

SupportFunction canonical_support_function(const LatticePolytope& p) {
  SupportFunction phi;
  phi.fan = normal_fan(p);
  phi.values.assign(phi.fan.rays.size(), Rational(-1));
  return phi;
}

SupportFunction projective_line_divisor(long d) {
  SupportFunction phi;
  phi.fan = fan_from_maximal_cones(1, {vec({1}), vec({-1})}, {{0}, {1}});
  phi.values = {Rational(0), Rational(-d)};
  return phi;
}

}  // namespace toricdegen::catalog
