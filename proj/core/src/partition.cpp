#include "toricdegen/partition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace toricdegen {

std::string to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

bool WeightVector::is_balanced() const {
  return std::all_of(weights.begin(), weights.end(), [](const Integer& w) { return w == 1; });
}

// ---------------------------------------------------------------------------
// Dual complex

int DualComplex::dimension() const {
  int d = -1;
  for (const auto& s : simplices) d = std::max(d, static_cast<int>(s.size()) - 1);
  return d;
}

std::vector<std::vector<std::size_t>> DualComplex::simplices_of_dimension(int d) const {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& s : simplices)
    if (static_cast<int>(s.size()) - 1 == d) out.push_back(s);
  return out;
}

bool DualComplex::contains(const std::vector<std::size_t>& simplex) const {
  auto sorted = simplex;
  std::sort(sorted.begin(), sorted.end());
  return std::find(simplices.begin(), simplices.end(), sorted) != simplices.end();
}

bool DualComplex::is_connected() const {
  if (vertex_count == 0) return true;
  std::vector<std::size_t> parent(vertex_count);
  for (std::size_t i = 0; i < vertex_count; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& s : simplices)
    for (std::size_t i = 1; i < s.size(); ++i) parent[find(s[i])] = find(s[0]);
  for (std::size_t i = 1; i < vertex_count; ++i)
    if (find(i) != find(0)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Construction

namespace {

std::string point_string(const RatVector& p) { return to_string(p); }

// A box radius large enough that every cell of the arrangement formed by all
// facet hyperplanes and the coordinate hyperplanes has a vertex inside it.
Integer arrangement_radius(const LatticePolytope& delta, const std::vector<LatticePolytope>& pieces) {
  const std::size_t n = delta.ambient_rank();
  std::set<std::pair<IntVector, Rational>> planes;
  auto add = [&](const Halfspace& h) {
    Halfspace c = h;
    for (const auto& x : c.normal) {
      if (x == 0) continue;
      if (x < 0) {
        c.normal = negate(c.normal);
        c.offset = -c.offset;
      }
      break;
    }
    planes.insert({c.normal, c.offset});
  };
  for (const auto& h : delta.facets()) add(h);
  for (const auto& p : pieces)
    for (const auto& h : p.facets()) add(h);
  for (std::size_t i = 0; i < n; ++i) planes.insert({unit_int_vector(n, i), Rational(0)});
  std::vector<std::pair<IntVector, Rational>> list(planes.begin(), planes.end());

  RatMatrix e_rows;
  RatVector e_rhs;
  for (const auto& h : delta.equations()) {
    e_rows.push_back(to_rational(h.normal));
    e_rhs.push_back(-h.offset);
  }
  const std::size_t s = n - toricdegen::rank(e_rows);
  Integer radius = 1;
  auto bump = [&](const RatVector& x) {
    for (const auto& c : x) radius = std::max(radius, Integer(ceil_of(abs(c)) + 1));
  };
  for (const auto& p : delta.points()) bump(p);
  for (const auto& piece : pieces)
    for (const auto& p : piece.points()) bump(p);
  for_each_subset(list.size(), s, [&](const std::vector<std::size_t>& subset) {
    RatMatrix a = e_rows;
    RatVector b = e_rhs;
    for (auto i : subset) {
      a.push_back(to_rational(list[i].first));
      b.push_back(-list[i].second);
    }
    if (a.empty()) return true;
    if (auto x = solve_unique(a, b)) bump(*x);
    return true;
  });
  return radius;
}

LatticePolytope truncate(const LatticePolytope& p, const Integer& radius) {
  std::vector<Halfspace> box;
  const std::size_t n = p.ambient_rank();
  for (std::size_t i = 0; i < n; ++i) {
    box.push_back({unit_int_vector(n, i), Rational(radius)});
    box.push_back({negate(unit_int_vector(n, i)), Rational(radius)});
  }
  return p.intersect(LatticePolytope::from_halfspaces(n, box));
}

}  // namespace

Partition Partition::build(LatticePolytope delta, std::vector<LatticePolytope> pieces) {
  Partition g;
  const std::size_t n = delta.ambient_rank();
  const int d = delta.dimension();
  if (pieces.empty()) throw PartitionError("partition has no pieces");
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    const auto& piece = pieces[j];
    const std::string name = "piece " + std::to_string(j);
    if (piece.ambient_rank() != n) throw PartitionError(name + " has the wrong ambient rank");
    if (piece.dimension() != d) throw PartitionError(name + " is not of full dimension");
    if (!piece.is_pointed()) throw PartitionError(name + " has no vertices");
    if (!delta.contains(piece)) throw PartitionError(name + " is not contained in the polytope");
    auto simple = check_simplicial(piece);
    if (!simple.ok) throw PartitionError(name + " is not simplicial at vertex " + point_string(*simple.witness));
  }
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      auto inter = pieces[i].try_intersect(pieces[j]);
      if (inter && inter->dimension() == d)
        throw PartitionError("interior overlap between pieces " + std::to_string(i) + " and " + std::to_string(j) +
                             " at " + point_string(inter->relative_interior_point()));
    }
  // Coverage: volumes agree (after a common box truncation when unbounded).
  bool bounded = delta.is_compact();
  Rational total = 0, whole;
  if (bounded) {
    whole = delta.normalized_volume();
    for (const auto& p : pieces) total += p.normalized_volume();
  } else {
    const Integer radius = arrangement_radius(delta, pieces);
    whole = truncate(delta, radius).normalized_volume();
    for (const auto& p : pieces) total += truncate(p, radius).normalized_volume();
  }
  if (total != whole)
    throw PartitionError("pieces do not cover the polytope (normalized volume " + to_string(total) + " of " +
                         to_string(whole) + ")");

  // Merge faces of the pieces.
  using Key = std::pair<std::vector<RatVector>, std::vector<IntVector>>;
  std::map<Key, std::size_t> index;
  std::vector<GammaFace> faces;
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    const auto& piece = pieces[j];
    for (std::size_t f = 0; f < piece.faces().size(); ++f) {
      Key key{piece.face_vertices(f), piece.face_rays(f)};
      auto [it, inserted] = index.emplace(key, faces.size());
      if (inserted) {
        GammaFace face;
        face.dim = piece.faces()[f].dim;
        face.vertices = key.first;
        face.rays = key.second;
        faces.push_back(std::move(face));
      }
      faces[it->second].pieces.push_back(j);
      faces[it->second].piece_faces.push_back(f);
    }
  }
  for (auto& face : faces) {
    face.delta_face = delta.smallest_face_containing(face.vertices, face.rays);
    face.delta_face_dim = delta.faces()[face.delta_face].dim;
    face.is_delta_vertex = face.dim == 0 && face.delta_face_dim == 0;
  }
  std::sort(faces.begin(), faces.end(), [](const GammaFace& a, const GammaFace& b) {
    return std::tie(a.dim, a.vertices, a.rays) < std::tie(b.dim, b.vertices, b.rays);
  });
  g.delta_ = std::move(delta);
  g.pieces_ = std::move(pieces);
  g.faces_ = std::move(faces);
  return g;
}

std::vector<std::size_t> Partition::vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (faces_[i].dim == 0 && !faces_[i].is_delta_vertex) out.push_back(i);
  return out;
}

std::optional<std::size_t> Partition::find_face(const std::vector<RatVector>& vertices,
                                                const std::vector<IntVector>& rays) const {
  auto v = vertices;
  auto r = rays;
  std::sort(v.begin(), v.end());
  std::sort(r.begin(), r.end());
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (faces_[i].vertices == v && faces_[i].rays == r) return i;
  return std::nullopt;
}

std::optional<std::size_t> Partition::find_vertex(const RatVector& p) const { return find_face({p}); }

std::vector<std::size_t> Partition::edges_at(std::size_t vertex_face, std::optional<std::size_t> within) const {
  const RatVector& p = faces_.at(vertex_face).vertices.at(0);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    const auto& e = faces_[i];
    if (e.dim != 1) continue;
    if (std::find(e.vertices.begin(), e.vertices.end(), p) == e.vertices.end()) continue;
    if (within && !delta_.face_contains(*within, e.delta_face)) continue;
    out.push_back(i);
  }
  return out;
}

IntVector Partition::edge_direction(std::size_t edge_face, const RatVector& from) const {
  const auto& e = faces_.at(edge_face);
  for (const auto& v : e.vertices)
    if (v != from) return primitive_integer_direction(sub(v, from));
  if (e.rays.size() != 1) throw MathError("not an edge");
  return e.rays[0];
}

bool Partition::is_interior(std::size_t face) const {
  return faces_.at(face).delta_face == delta_.faces().size() - 1;
}

std::vector<std::size_t> Partition::walls() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (faces_[i].dim == dimension() - 1 && is_interior(i) && faces_[i].pieces.size() == 2) out.push_back(i);
  return out;
}

const Classification& Partition::classification() const {
  std::call_once(cache_->once, [this] { cache_->value = classify(*this); });
  return *cache_->value;
}

PartitionFlags Partition::flags() const {
  PartitionFlags f;
  if (!cache_->value) return f;
  const auto& c = *cache_->value;
  auto tri = [](bool b) { return b ? Tri::Yes : Tri::No; };
  f.semistable = tri(c.semistable);
  f.balanced = tri(c.balanced);
  f.nonsingular = tri(c.nonsingular);
  f.mildly_singular = tri(c.mildly_singular);
  return f;
}

// ---------------------------------------------------------------------------
// Semi-stability and classification

bool is_semistable(const Partition& g, SemistableWitness* witness) {
  const auto& faces = g.faces();
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const auto& f = faces[i];
    if (f.is_delta_vertex) continue;
    const std::size_t expected = static_cast<std::size_t>(f.delta_face_dim - f.dim + 1);
    if (f.pieces.size() != expected) {
      if (witness) *witness = {i, f.dim, f.delta_face_dim, f.pieces.size(), expected};
      return false;
    }
  }
  return true;
}

WeightVector weight_vector(const Partition& g, std::size_t vertex_face) {
  const auto& face = g.faces().at(vertex_face);
  if (face.dim != 0 || face.is_delta_vertex) throw MathError("weight vector requires a vertex of the partition");
  const RatVector& p = face.vertices[0];
  const std::string where = "not semi-stable at " + to_string(p);
  WeightVector w;
  w.vertex = p;
  for (auto e : g.edges_at(vertex_face, face.delta_face)) w.edges.push_back(g.edge_direction(e, p));
  std::sort(w.edges.begin(), w.edges.end());
  if (static_cast<int>(w.edges.size()) != face.delta_face_dim + 1) throw MathError(where);
  const IntMatrix columns = transpose(w.edges);
  const IntMatrix kernel = integer_kernel(columns, w.edges.size());
  if (kernel.size() != 1) throw MathError(where);
  IntVector rel = kernel[0];
  if (rel[0] < 0) rel = negate(rel);
  for (const auto& x : rel)
    if (x <= 0) throw MathError(where);
  w.edge_weights = rel;
  w.weights.push_back(rel[0]);
  std::vector<Integer> rest(rel.begin() + 1, rel.end());
  std::sort(rest.begin(), rest.end());
  w.weights.insert(w.weights.end(), rest.begin(), rest.end());
  return w;
}

bool is_nonsingular_partition_vertex(const Partition& g, std::size_t vertex_face) {
  const auto& face = g.faces().at(vertex_face);
  for (std::size_t k = 0; k < face.pieces.size(); ++k) {
    const auto& piece = g.pieces()[face.pieces[k]];
    auto v = piece.vertex_index(face.vertices[0]);
    if (!v || !is_nonsingular_vertex(piece, *v)) return false;
  }
  return true;
}

DualComplex dual_complex(const Partition& g, int min_face_dim) {
  std::set<std::vector<std::size_t>> simplices;
  for (std::size_t i = 0; i < g.faces().size(); ++i) {
    const auto& f = g.faces()[i];
    if (f.dim < min_face_dim || !g.is_interior(i)) continue;
    auto s = f.pieces;
    std::sort(s.begin(), s.end());
    simplices.insert(s);
  }
  DualComplex k;
  k.vertex_count = g.pieces().size();
  k.simplices.assign(simplices.begin(), simplices.end());
  std::stable_sort(k.simplices.begin(), k.simplices.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return k;
}

Classification classify(const Partition& g) {
  Classification c;
  SemistableWitness w;
  c.semistable = is_semistable(g, &w);
  if (!c.semistable) {
    c.witness = w;
    return c;
  }
  c.dual_dimension = dual_complex(g).dimension();
  c.balanced = true;
  bool all_nonsingular = true;
  for (auto v : g.vertices()) {
    c.weights.push_back(weight_vector(g, v));
    if (!c.weights.back().is_balanced()) {
      c.balanced = false;
      c.unbalanced_vertices.push_back(v);
    }
    if (!is_nonsingular_partition_vertex(g, v)) {
      all_nonsingular = false;
      c.singular_vertices.push_back(v);
    }
    if (g.faces()[v].delta_face_dim == c.dual_dimension) c.maximal_vertices.push_back(v);
  }
  c.nonsingular = c.balanced && all_nonsingular;
  bool maximal_ok = std::none_of(c.maximal_vertices.begin(), c.maximal_vertices.end(), [&](std::size_t v) {
    return std::find(c.singular_vertices.begin(), c.singular_vertices.end(), v) != c.singular_vertices.end();
  });
  c.mildly_singular = c.balanced && maximal_ok;
  return c;
}

// ---------------------------------------------------------------------------
// Restriction and comparison

Partition restrict(const Partition& g, std::size_t delta_face) {
  const auto& delta = g.ambient();
  if (delta_face >= delta.faces().size()) throw MathError("no such face");
  LatticePolytope tau = delta.face_polytope(delta_face);
  std::vector<LatticePolytope> pieces;
  for (const auto& piece : g.pieces()) {
    auto q = piece.try_intersect(tau);
    if (q && q->dimension() == tau.dimension()) pieces.push_back(std::move(*q));
  }
  return Partition::build(std::move(tau), std::move(pieces));
}

std::optional<AffineLatticeMap> partitions_equivalent(const Partition& a, const Partition& b) {
  if (a.pieces().size() != b.pieces().size()) return std::nullopt;
  const auto& da = a.ambient();
  const auto& db = b.ambient();
  const bool intrinsic = !da.is_full_dimensional();
  const IntrinsicChart ca = da.chart(), cb = db.chart();
  auto piece_key = [&](const LatticePolytope& p, const IntrinsicChart& ch) {
    std::vector<RatVector> vs;
    for (const auto& v : p.vertices()) vs.push_back(intrinsic ? ch.coordinates(v) : v);
    std::sort(vs.begin(), vs.end());
    return vs;
  };
  std::set<std::vector<RatVector>> target;
  for (const auto& p : b.pieces()) target.insert(piece_key(p, cb));
  for (const auto& map : lattice_equivalences(da, db)) {
    bool ok = true;
    for (const auto& p : a.pieces()) {
      auto vs = piece_key(p, ca);
      for (auto& v : vs) v = map.apply(v);
      std::sort(vs.begin(), vs.end());
      if (!target.count(vs)) {
        ok = false;
        break;
      }
    }
    if (ok) return map;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Standard constructions

Partition partition_by_fan(const LatticePolytope& delta, const Fan& fan) {
  const std::size_t n = delta.ambient_rank();
  if (fan.rank != n) throw MathError("fan and polytope have different ranks");
  std::vector<LatticePolytope> pieces;
  const std::vector<RatVector> origin{zero_rat_vector(n)};
  for (auto m : fan.maximal_cones()) {
    std::vector<IntVector> gens;
    for (auto r : fan.cones[m]) gens.push_back(fan.rays[r]);
    auto cone = LatticePolytope::from_generators(n, origin, gens);
    auto piece = delta.try_intersect(cone);
    if (!piece || piece->dimension() != delta.dimension())
      throw PartitionError("cone " + std::to_string(m) + " meets the polytope in a lower-dimensional set");
    pieces.push_back(std::move(*piece));
  }
  return Partition::build(delta, std::move(pieces));
}

Partition partition_by_hyperplanes(const LatticePolytope& delta, const IntVector& m,
                                   const std::vector<Integer>& offsets) {
  if (offsets.empty()) throw MathError("no hyperplanes given");
  if (!std::is_sorted(offsets.begin(), offsets.end()) ||
      std::adjacent_find(offsets.begin(), offsets.end()) != offsets.end())
    throw MathError("hyperplane offsets must be strictly increasing");
  const std::size_t n = delta.ambient_rank();
  std::vector<LatticePolytope> pieces;
  for (std::size_t i = 0; i <= offsets.size(); ++i) {
    std::vector<Halfspace> hs;
    if (i > 0) hs.push_back({m, Rational(-offsets[i - 1])});             // <m,x> >= c_{i-1}
    if (i < offsets.size()) hs.push_back({negate(m), Rational(offsets[i])});  // <m,x> <= c_i
    auto slab = LatticePolytope::from_halfspaces(n, hs);
    auto piece = delta.try_intersect(slab);
    if (!piece || piece->dimension() != delta.dimension())
      throw PartitionError("hyperplane " + std::to_string(i == offsets.size() ? i : i + 1) +
                           " does not meet the interior of the polytope");
    pieces.push_back(std::move(*piece));
  }
  return Partition::build(delta, std::move(pieces));
}

}  // namespace toricdegen
