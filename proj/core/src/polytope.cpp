#include "toricdegen/polytope.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace toricdegen {

namespace {

// Normalizes to a primitive normal; returns false for a zero normal.
bool normalize(Halfspace& h) {
  Integer g = gcd_of(h.normal);
  if (g == 0) return false;
  if (g != 1) {
    for (auto& x : h.normal) x /= g;
    h.offset /= Rational(g);
  }
  return true;
}

// Equations are defined up to sign; pick first nonzero entry positive.
void canonical_sign(Halfspace& h) {
  for (const auto& x : h.normal) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : h.normal) y = -y;
      h.offset = -h.offset;
    }
    return;
  }
}

bool all_zero_against(const IntVector& normal, const std::vector<IntVector>& dirs) {
  return std::all_of(dirs.begin(), dirs.end(), [&](const IntVector& d) { return dot(normal, d) == 0; });
}

}  // namespace

Halfspace make_halfspace(const RatVector& normal, const Rational& offset) {
  Integer den = 1;
  for (const auto& x : normal) den = lcm(den, x.get_den());
  Halfspace h{IntVector(normal.size()), offset * Rational(den)};
  for (std::size_t i = 0; i < normal.size(); ++i) {
    Rational scaled = normal[i] * Rational(den);
    h.normal[i] = scaled.get_num();
  }
  normalize(h);
  return h;
}

RatVector IntrinsicChart::coordinates(const RatVector& x) const {
  if (basis.empty()) {
    if (x != origin) throw MathError("point outside the chart");
    return {};
  }
  auto c = solve_unique(transpose(to_rational(basis)), sub(x, origin));
  if (!c) throw MathError("point outside the chart");
  return *c;
}

RatVector IntrinsicChart::direction_coordinates(const IntVector& d) const {
  if (basis.empty()) {
    if (!is_zero(d)) throw MathError("direction outside the chart");
    return {};
  }
  auto c = solve_unique(transpose(to_rational(basis)), to_rational(d));
  if (!c) throw MathError("direction outside the chart");
  return *c;
}

// ---------------------------------------------------------------------------
// Construction

LatticePolytope LatticePolytope::from_halfspaces(std::size_t rank, std::vector<Halfspace> inequalities,
                                                 std::vector<Halfspace> equations) {
  LatticePolytope p;
  p.rank_ = rank;
  p.build(std::move(inequalities), std::move(equations));
  return p;
}

std::optional<LatticePolytope> LatticePolytope::try_from_halfspaces(std::size_t rank,
                                                                    std::vector<Halfspace> inequalities,
                                                                    std::vector<Halfspace> equations) {
  try {
    return from_halfspaces(rank, std::move(inequalities), std::move(equations));
  } catch (const MathError&) {
    return std::nullopt;
  }
}

LatticePolytope LatticePolytope::whole_space(std::size_t rank) { return from_halfspaces(rank, {}); }

LatticePolytope LatticePolytope::from_vertices(const std::vector<IntVector>& points) {
  if (points.empty()) throw MathError("empty point set");
  std::vector<RatVector> rat;
  rat.reserve(points.size());
  for (const auto& p : points) rat.push_back(to_rational(p));
  return from_generators(points[0].size(), rat, {});
}

LatticePolytope LatticePolytope::from_generators(std::size_t n, const std::vector<RatVector>& points,
                                                 const std::vector<IntVector>& rays) {
  if (points.empty()) throw MathError("empty point set");
  // Homogenize: (p, 1) for points, (r, 0) for rays.
  RatMatrix gens;
  for (const auto& p : points) {
    if (p.size() != n) throw MathError("dimension mismatch");
    RatVector g = p;
    g.emplace_back(1);
    gens.push_back(std::move(g));
  }
  for (const auto& r : rays) {
    if (r.size() != n) throw MathError("dimension mismatch");
    RatVector g = to_rational(r);
    g.emplace_back(0);
    gens.push_back(std::move(g));
  }
  const RatMatrix hull = rational_kernel(gens, n + 1);
  std::vector<Halfspace> equations;
  for (const auto& k : hull) {
    RatVector normal(k.begin(), k.end() - 1);
    equations.push_back(make_halfspace(normal, k.back()));
  }
  const std::size_t d = n + 1 - hull.size();  // dimension of the homogenized cone
  std::set<std::pair<IntVector, Rational>> seen;
  std::vector<Halfspace> inequalities;
  if (d >= 2) {
    for_each_subset(gens.size(), d - 1, [&](const std::vector<std::size_t>& subset) {
      RatMatrix system = hull;
      for (auto i : subset) system.push_back(gens[i]);
      if (toricdegen::rank(system) != system.size()) return true;
      RatMatrix h = rational_kernel(system, n + 1);
      if (h.size() != 1) return true;
      RatVector& cand = h[0];
      bool pos = false, neg = false;
      for (const auto& g : gens) {
        Rational v = dot(g, cand);
        if (v > 0) pos = true;
        if (v < 0) neg = true;
      }
      if (pos && neg) return true;
      if (neg) cand = scale(cand, Rational(-1));
      RatVector normal(cand.begin(), cand.end() - 1);
      if (is_zero(normal)) return true;
      Halfspace hs = make_halfspace(normal, cand.back());
      if (seen.insert({hs.normal, hs.offset}).second) inequalities.push_back(std::move(hs));
      return true;
    });
  }
  std::sort(inequalities.begin(), inequalities.end(), [](const Halfspace& a, const Halfspace& b) {
    return std::tie(a.normal, a.offset) < std::tie(b.normal, b.offset);
  });
  return from_halfspaces(n, std::move(inequalities), std::move(equations));
}

void LatticePolytope::build(std::vector<Halfspace> inequalities, std::vector<Halfspace> equations) {
  const std::size_t n = rank_;
  std::vector<Halfspace> ineqs;
  std::set<std::pair<IntVector, Rational>> seen;
  for (auto& h : inequalities) {
    if (h.normal.size() != n) throw MathError("dimension mismatch");
    if (!normalize(h)) {
      if (h.offset < 0) throw MathError("empty polyhedron");
      continue;
    }
    if (seen.insert({h.normal, h.offset}).second) ineqs.push_back(h);
  }
  std::vector<Halfspace> eqs;
  for (auto& h : equations) {
    if (h.normal.size() != n) throw MathError("dimension mismatch");
    if (!normalize(h)) {
      if (h.offset != 0) throw MathError("empty polyhedron");
      continue;
    }
    canonical_sign(h);
    eqs.push_back(h);
  }

  // Lineality space and a pointed section transverse to it.
  IntMatrix normals;
  for (const auto& h : ineqs) normals.push_back(h.normal);
  for (const auto& h : eqs) normals.push_back(h.normal);
  lineality_ = normals.empty() ? identity_matrix(n) : integer_kernel(normals, n);

  RatMatrix e_rows;
  RatVector e_rhs;
  for (const auto& h : eqs) {
    e_rows.push_back(to_rational(h.normal));
    e_rhs.push_back(-h.offset);
  }
  for (const auto& l : lineality_) {
    e_rows.push_back(to_rational(l));
    e_rhs.emplace_back(0);
  }
  const std::size_t e_rank = toricdegen::rank(e_rows);
  const std::size_t s = n - e_rank;

  auto feasible = [&](const RatVector& x) {
    return std::all_of(ineqs.begin(), ineqs.end(), [&](const Halfspace& h) { return h.satisfied_by(x); });
  };

  std::set<RatVector> point_set;
  if (n == 0) {
    point_set.insert(RatVector{});
  } else {
    for_each_subset(ineqs.size(), s, [&](const std::vector<std::size_t>& subset) {
      RatMatrix a = e_rows;
      RatVector b = e_rhs;
      for (auto i : subset) {
        a.push_back(to_rational(ineqs[i].normal));
        b.push_back(-ineqs[i].offset);
      }
      if (a.empty()) return true;
      auto x = solve_unique(a, b);
      if (x && feasible(*x)) point_set.insert(*x);
      return true;
    });
  }
  if (point_set.empty()) throw MathError("empty polyhedron");
  points_.assign(point_set.begin(), point_set.end());

  std::set<IntVector> ray_set;
  if (s >= 1) {
    for_each_subset(ineqs.size(), s - 1, [&](const std::vector<std::size_t>& subset) {
      RatMatrix a = e_rows;
      for (auto i : subset) a.push_back(to_rational(ineqs[i].normal));
      RatMatrix k = rational_kernel(a, n);
      if (k.size() != 1) return true;
      IntVector d = primitive_integer_direction(k[0]);
      auto ok = [&](const IntVector& dir) {
        return std::all_of(ineqs.begin(), ineqs.end(),
                           [&](const Halfspace& h) { return dot(dir, h.normal) >= 0; });
      };
      if (ok(d)) ray_set.insert(d);
      IntVector m = negate(d);
      if (ok(m)) ray_set.insert(m);
      return true;
    });
  }
  rays_.assign(ray_set.begin(), ray_set.end());

  // Implicit equalities become equations.
  std::vector<Halfspace> remaining;
  for (const auto& h : ineqs) {
    bool implicit = all_zero_against(h.normal, rays_) &&
                    std::all_of(points_.begin(), points_.end(), [&](const RatVector& p) { return h.slack(p) == 0; });
    if (implicit) {
      Halfspace e = h;
      canonical_sign(e);
      eqs.push_back(e);
    } else {
      remaining.push_back(h);
    }
  }
  RatMatrix kept_rows;
  for (const auto& h : eqs) {
    RatMatrix trial = kept_rows;
    trial.push_back(to_rational(h.normal));
    if (toricdegen::rank(trial) > kept_rows.size()) {
      kept_rows = std::move(trial);
      equations_.push_back(h);
    }
  }
  dim_ = static_cast<int>(n - kept_rows.size());

  // Irredundant facets.
  const std::size_t np = points_.size();
  std::set<Bitset> facet_sets;
  for (const auto& h : remaining) {
    Bitset pts(np), rs(rays_.size());
    for (std::size_t i = 0; i < np; ++i) pts[i] = h.slack(points_[i]) == 0;
    for (std::size_t i = 0; i < rays_.size(); ++i) rs[i] = dot(h.normal, rays_[i]) == 0;
    if (pts.none()) continue;
    if (rank_of_face(pts, rs) != dim_ - 1) continue;
    Bitset key(np + rays_.size());
    for (std::size_t i = 0; i < np; ++i) key[i] = pts[i];
    for (std::size_t i = 0; i < rays_.size(); ++i) key[np + i] = rs[i];
    if (facet_sets.insert(key).second) facets_.push_back(h);
  }
  build_faces();
}

int LatticePolytope::rank_of_face(const Bitset& points, const Bitset& rays) const {
  RatMatrix dirs;
  std::optional<std::size_t> base;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!points[i]) continue;
    if (!base) {
      base = i;
      continue;
    }
    dirs.push_back(sub(points_[i], points_[*base]));
  }
  if (!base) return -1;
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (rays[i]) dirs.push_back(to_rational(rays_[i]));
  for (const auto& l : lineality_) dirs.push_back(to_rational(l));
  return static_cast<int>(toricdegen::rank(dirs));
}

void LatticePolytope::build_faces() {
  const std::size_t np = points_.size();
  const std::size_t nr = rays_.size();
  const std::size_t total = np + nr;
  std::vector<Bitset> tight(facets_.size(), Bitset(total));
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    for (std::size_t i = 0; i < np; ++i) tight[f][i] = facets_[f].slack(points_[i]) == 0;
    for (std::size_t i = 0; i < nr; ++i) tight[f][np + i] = dot(facets_[f].normal, rays_[i]) == 0;
  }
  auto has_point = [np](const Bitset& b) {
    for (std::size_t i = 0; i < np; ++i)
      if (b[i]) return true;
    return false;
  };
  Bitset all(total);
  all.set();
  std::set<Bitset> seen{all};
  std::vector<Bitset> queue{all};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      Bitset g = queue[q] & tight[f];
      if (g == queue[q] || !has_point(g)) continue;
      if (seen.insert(g).second) queue.push_back(g);
    }
  }
  struct Entry {
    Bitset key;
    Face face;
    std::vector<std::size_t> point_list, ray_list;
  };
  std::vector<Entry> entries;
  for (const auto& key : queue) {
    Entry e;
    e.key = key;
    e.face.points = Bitset(np);
    e.face.rays = Bitset(nr);
    e.face.facets = Bitset(facets_.size());
    for (std::size_t i = 0; i < np; ++i)
      if (key[i]) {
        e.face.points[i] = true;
        e.point_list.push_back(i);
      }
    for (std::size_t i = 0; i < nr; ++i)
      if (key[np + i]) {
        e.face.rays[i] = true;
        e.ray_list.push_back(i);
      }
    for (std::size_t f = 0; f < facets_.size(); ++f) e.face.facets[f] = key.is_subset_of(tight[f]);
    e.face.dim = rank_of_face(e.face.points, e.face.rays);
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.face.dim, a.point_list, a.ray_list) < std::tie(b.face.dim, b.point_list, b.ray_list);
  });
  faces_.clear();
  face_lookup_.clear();
  for (auto& e : entries) {
    face_lookup_[e.key] = faces_.size();
    faces_.push_back(std::move(e.face));
  }
}

// ---------------------------------------------------------------------------
// Queries

bool LatticePolytope::is_lattice() const {
  return std::all_of(points_.begin(), points_.end(), [](const RatVector& p) { return is_integral(p); });
}

const std::vector<RatVector>& LatticePolytope::vertices() const {
  static const std::vector<RatVector> none;
  return is_pointed() ? points_ : none;
}

bool LatticePolytope::contains(const RatVector& x) const {
  if (x.size() != rank_) throw MathError("dimension mismatch");
  for (const auto& h : facets_)
    if (!h.satisfied_by(x)) return false;
  for (const auto& h : equations_)
    if (h.slack(x) != 0) return false;
  return true;
}

bool LatticePolytope::recession_contains(const IntVector& d) const {
  for (const auto& h : facets_)
    if (dot(d, h.normal) < 0) return false;
  for (const auto& h : equations_)
    if (dot(d, h.normal) != 0) return false;
  return true;
}

bool LatticePolytope::contains(const LatticePolytope& other) const {
  if (other.rank_ != rank_) return false;
  for (const auto& p : other.points_)
    if (!contains(p)) return false;
  for (const auto& r : other.rays_)
    if (!recession_contains(r)) return false;
  for (const auto& l : other.lineality_)
    if (!recession_contains(l) || !recession_contains(negate(l))) return false;
  return true;
}

bool operator==(const LatticePolytope& a, const LatticePolytope& b) { return a.contains(b) && b.contains(a); }

std::vector<std::size_t> LatticePolytope::faces_of_dimension(int d) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (faces_[i].dim == d) out.push_back(i);
  return out;
}

std::optional<std::size_t> LatticePolytope::face_index(const Bitset& points, const Bitset& rays) const {
  Bitset key(points.size() + rays.size());
  for (std::size_t i = 0; i < points.size(); ++i) key[i] = points[i];
  for (std::size_t i = 0; i < rays.size(); ++i) key[points.size() + i] = rays[i];
  auto it = face_lookup_.find(key);
  if (it == face_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t LatticePolytope::face_with_tight_facets(const Bitset& facets) const {
  Bitset pts(points_.size()), rs(rays_.size());
  pts.set();
  rs.set();
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    if (!facets[f]) continue;
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (facets_[f].slack(points_[i]) != 0) pts[i] = false;
    for (std::size_t i = 0; i < rays_.size(); ++i)
      if (dot(facets_[f].normal, rays_[i]) != 0) rs[i] = false;
  }
  auto idx = face_index(pts, rs);
  if (!idx) throw MathError("tight facet set does not define a face");
  return *idx;
}

std::size_t LatticePolytope::smallest_face_containing(const std::vector<RatVector>& points,
                                                      const std::vector<IntVector>& rays) const {
  Bitset tight(facets_.size());
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    bool t = true;
    for (const auto& p : points)
      if (facets_[f].slack(p) != 0) t = false;
    for (const auto& r : rays)
      if (dot(r, facets_[f].normal) != 0) t = false;
    tight[f] = t;
  }
  return face_with_tight_facets(tight);
}

bool LatticePolytope::face_contains(std::size_t outer, std::size_t inner) const {
  return faces_[inner].points.is_subset_of(faces_[outer].points) && faces_[inner].rays.is_subset_of(faces_[outer].rays);
}

LatticePolytope LatticePolytope::face_polytope(std::size_t face) const {
  std::vector<Halfspace> ineqs, eqs = equations_;
  for (std::size_t f = 0; f < facets_.size(); ++f)
    (faces_[face].facets[f] ? eqs : ineqs).push_back(facets_[f]);
  return from_halfspaces(rank_, std::move(ineqs), std::move(eqs));
}

std::vector<RatVector> LatticePolytope::face_vertices(std::size_t face) const {
  std::vector<RatVector> out;
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (faces_[face].points[i]) out.push_back(points_[i]);
  return out;
}

std::vector<IntVector> LatticePolytope::face_rays(std::size_t face) const {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (faces_[face].rays[i]) out.push_back(rays_[i]);
  return out;
}

std::optional<std::size_t> LatticePolytope::vertex_index(const RatVector& v) const {
  if (!is_pointed()) return std::nullopt;
  auto it = std::lower_bound(points_.begin(), points_.end(), v);
  if (it == points_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

std::vector<IntVector> LatticePolytope::edge_directions(std::size_t vertex) const {
  std::vector<IntVector> out;
  for (const auto& f : faces_) {
    if (f.dim != 1 || !f.points[vertex]) continue;
    bool found = false;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (i == vertex || !f.points[i]) continue;
      out.push_back(primitive_integer_direction(sub(points_[i], points_[vertex])));
      found = true;
      break;
    }
    if (found) continue;
    for (std::size_t i = 0; i < rays_.size(); ++i)
      if (f.rays[i]) {
        out.push_back(rays_[i]);
        break;
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntrinsicChart LatticePolytope::chart() const {
  IntrinsicChart c;
  c.origin = points_.front();
  if (equations_.empty()) {
    c.basis = identity_matrix(rank_);
  } else {
    IntMatrix normals;
    for (const auto& h : equations_) normals.push_back(h.normal);
    c.basis = integer_kernel(normals, rank_);
  }
  return c;
}

Rational LatticePolytope::normalized_volume() const {
  if (!is_compact()) throw MathError("volume of an unbounded polyhedron");
  if (dim_ == 0) return 1;
  const IntrinsicChart ch = chart();
  std::vector<RatVector> coords;
  for (const auto& p : points_) coords.push_back(ch.coordinates(p));

  // Pulling triangulation through the face lattice.
  std::vector<std::vector<std::vector<std::size_t>>> memo(faces_.size());
  std::vector<bool> done(faces_.size(), false);
  auto first_point = [&](std::size_t f) {
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (faces_[f].points[i]) return i;
    return points_.size();
  };
  auto triangulate = [&](auto&& self, std::size_t f) -> const std::vector<std::vector<std::size_t>>& {
    if (done[f]) return memo[f];
    std::vector<std::vector<std::size_t>> out;
    const std::size_t v0 = first_point(f);
    if (faces_[f].dim == 0) {
      out.push_back({v0});
    } else {
      for (std::size_t g = 0; g < faces_.size(); ++g) {
        if (faces_[g].dim != faces_[f].dim - 1 || !face_contains(f, g) || faces_[g].points[v0]) continue;
        for (const auto& simplex : self(self, g)) {
          auto s = simplex;
          s.insert(s.begin(), v0);
          out.push_back(std::move(s));
        }
      }
    }
    memo[f] = std::move(out);
    done[f] = true;
    return memo[f];
  };
  Rational total = 0;
  for (const auto& simplex : triangulate(triangulate, faces_.size() - 1)) {
    RatMatrix m;
    for (std::size_t i = 1; i < simplex.size(); ++i) m.push_back(sub(coords[simplex[i]], coords[simplex[0]]));
    total += abs(determinant(m));
  }
  return total;
}

LatticePolytope LatticePolytope::intersect(const LatticePolytope& other) const {
  auto r = try_intersect(other);
  if (!r) throw MathError("empty polyhedron");
  return *r;
}

std::optional<LatticePolytope> LatticePolytope::try_intersect(const LatticePolytope& other) const {
  if (other.rank_ != rank_) throw MathError("dimension mismatch");
  std::vector<Halfspace> ineqs = facets_;
  ineqs.insert(ineqs.end(), other.facets_.begin(), other.facets_.end());
  std::vector<Halfspace> eqs = equations_;
  eqs.insert(eqs.end(), other.equations_.begin(), other.equations_.end());
  return try_from_halfspaces(rank_, std::move(ineqs), std::move(eqs));
}

std::vector<IntVector> LatticePolytope::lattice_points() const {
  if (!is_compact()) throw MathError("lattice points of an unbounded polyhedron");
  IntVector lo(rank_), hi(rank_);
  for (std::size_t i = 0; i < rank_; ++i) {
    lo[i] = ceil_of(points_[0][i]);
    hi[i] = floor_of(points_[0][i]);
    for (const auto& p : points_) {
      lo[i] = std::min(lo[i], ceil_of(p[i]));
      hi[i] = std::max(hi[i], floor_of(p[i]));
    }
    if (lo[i] > hi[i]) return {};
  }
  std::vector<IntVector> out;
  IntVector x = lo;
  while (true) {
    if (contains(x)) out.push_back(x);
    std::size_t i = rank_;
    while (i > 0 && x[i - 1] == hi[i - 1]) {
      x[i - 1] = lo[i - 1];
      --i;
    }
    if (i == 0) return out;
    ++x[i - 1];
  }
}

RatVector LatticePolytope::relative_interior_point() const {
  RatVector c = zero_rat_vector(rank_);
  for (const auto& p : points_) c = add(c, p);
  c = scale(c, Rational(1, static_cast<unsigned long>(points_.size())));
  for (const auto& r : rays_) c = add(c, to_rational(r));
  return c;
}

std::string LatticePolytope::describe() const {
  std::ostringstream os;
  os << "polyhedron(dim " << dim_ << ", " << points_.size() << (is_pointed() ? " vertices, " : " points, ")
     << rays_.size() << " rays, " << facets_.size() << " facets)";
  return os.str();
}

// ---------------------------------------------------------------------------
// Fans

int Fan::cone_dimension(std::size_t cone) const {
  RatMatrix m;
  for (auto r : cones[cone]) m.push_back(to_rational(rays[r]));
  return static_cast<int>(toricdegen::rank(m));
}

std::vector<std::size_t> Fan::maximal_cones() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < cones.size() && maximal; ++j) {
      if (i == j || cones[j].size() <= cones[i].size()) continue;
      if (std::includes(cones[j].begin(), cones[j].end(), cones[i].begin(), cones[i].end())) maximal = false;
    }
    if (maximal) out.push_back(i);
  }
  return out;
}

bool Fan::is_complete() const {
  auto maximal = maximal_cones();
  if (maximal.empty()) return false;
  for (auto m : maximal)
    if (cone_dimension(m) != static_cast<int>(rank)) return false;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    if (cone_dimension(i) + 1 != static_cast<int>(rank)) continue;
    int count = 0;
    for (auto m : maximal)
      if (std::includes(cones[m].begin(), cones[m].end(), cones[i].begin(), cones[i].end())) ++count;
    if (count != 2) return false;
  }
  return true;
}

std::optional<std::size_t> Fan::find_cone(const std::vector<std::size_t>& r) const {
  auto sorted = r;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (cones[i] == sorted) return i;
  return std::nullopt;
}

Fan fan_from_maximal_cones(std::size_t rank, std::vector<IntVector> rays,
                           const std::vector<std::vector<std::size_t>>& maximal) {
  Fan fan;
  fan.rank = rank;
  for (auto& r : rays) r = primitive(r);
  fan.rays = std::move(rays);
  std::set<std::vector<std::size_t>> cones;
  const std::vector<RatVector> origin{zero_rat_vector(rank)};
  for (const auto& m : maximal) {
    std::vector<IntVector> gens;
    for (auto r : m) gens.push_back(fan.rays.at(r));
    auto cone = LatticePolytope::from_generators(rank, origin, gens);
    if (!cone.is_pointed()) throw MathError("cone is not strongly convex");
    for (std::size_t f = 0; f < cone.faces().size(); ++f) {
      std::vector<std::size_t> idx;
      for (const auto& r : cone.face_rays(f)) {
        auto it = std::find(fan.rays.begin(), fan.rays.end(), r);
        if (it == fan.rays.end()) throw MathError("cone generator is not extreme");
        idx.push_back(static_cast<std::size_t>(it - fan.rays.begin()));
      }
      std::sort(idx.begin(), idx.end());
      cones.insert(idx);
    }
  }
  fan.cones.assign(cones.begin(), cones.end());
  return fan;
}

Fan normal_fan(const LatticePolytope& p) {
  if (!p.is_full_dimensional()) throw MathError("normal fan requires a full-dimensional polyhedron");
  Fan fan;
  fan.rank = p.ambient_rank();
  for (const auto& h : p.facets()) fan.rays.push_back(h.normal);
  for (const auto& face : p.faces()) {
    std::vector<std::size_t> cone;
    for (std::size_t f = 0; f < p.facets().size(); ++f)
      if (face.facets[f]) cone.push_back(f);
    fan.cones.push_back(std::move(cone));
  }
  return fan;
}

std::string to_string(Convexity c) {
  switch (c) {
    case Convexity::Affine: return "affine";
    case Convexity::StrictlyConvex: return "strictly-convex";
    case Convexity::Convex: return "convex";
    case Convexity::None: return "none";
  }
  return "none";
}

std::vector<RatVector> linear_pieces(const SupportFunction& phi) {
  if (phi.values.size() != phi.fan.rays.size()) throw MathError("one value per ray required");
  std::vector<RatVector> out;
  for (auto m : phi.fan.maximal_cones()) {
    RatMatrix a;
    RatVector b;
    for (auto r : phi.fan.cones[m]) {
      a.push_back(to_rational(phi.fan.rays[r]));
      b.push_back(phi.values[r]);
    }
    auto sol = a.empty() ? std::optional<RatVector>(zero_rat_vector(phi.fan.rank)) : solve_unique(a, b);
    if (!sol) throw MathError("support function is not linear on a cone");
    out.push_back(*sol);
  }
  return out;
}

Convexity classify_support_function(const SupportFunction& phi) {
  if (!phi.fan.is_complete()) throw MathError("classification requires complete fan");
  const auto maximal = phi.fan.maximal_cones();
  const auto pieces = linear_pieces(phi);
  if (std::all_of(pieces.begin(), pieces.end(), [&](const RatVector& m) { return m == pieces[0]; }))
    return Convexity::Affine;
  bool strict = true;
  for (std::size_t c = 0; c < maximal.size(); ++c) {
    const auto& cone = phi.fan.cones[maximal[c]];
    for (std::size_t r = 0; r < phi.fan.rays.size(); ++r) {
      Rational v = dot(phi.fan.rays[r], pieces[c]);
      if (v < phi.values[r]) return Convexity::None;
      bool inside = std::binary_search(cone.begin(), cone.end(), r);
      if (!inside && v == phi.values[r]) strict = false;
    }
  }
  return strict ? Convexity::StrictlyConvex : Convexity::Convex;
}

LatticePolytope divisor_polytope(const SupportFunction& phi) {
  if (classify_support_function(phi) == Convexity::None) throw MathError("support function is not convex");
  std::vector<Halfspace> hs;
  for (std::size_t r = 0; r < phi.fan.rays.size(); ++r) hs.push_back({phi.fan.rays[r], -phi.values[r]});
  return LatticePolytope::from_halfspaces(phi.fan.rank, std::move(hs));
}

// ---------------------------------------------------------------------------
// Simplicity and nonsingularity

VertexCheck check_simplicial(const LatticePolytope& p) {
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    if (p.edge_directions(v).size() != static_cast<std::size_t>(p.dimension()))
      return {false, p.vertices()[v]};
  }
  return {};
}

bool is_nonsingular_vertex(const LatticePolytope& p, std::size_t vertex) {
  auto edges = p.edge_directions(vertex);
  if (edges.size() != static_cast<std::size_t>(p.dimension())) return false;
  if (edges.empty()) return true;
  return is_saturated_basis(edges);
}

VertexCheck check_nonsingular(const LatticePolytope& p) {
  for (std::size_t v = 0; v < p.vertices().size(); ++v)
    if (!is_nonsingular_vertex(p, v)) return {false, p.vertices()[v]};
  return {};
}

bool is_simplicial(const LatticePolytope& p) { return check_simplicial(p).ok; }
bool is_nonsingular(const LatticePolytope& p) { return check_nonsingular(p).ok; }

// ---------------------------------------------------------------------------
// Lattice equivalence

RatVector AffineLatticeMap::apply(const RatVector& x) const { return add(multiply(matrix, x), translation); }

namespace {

std::vector<AffineLatticeMap> full_dimensional_equivalences(const LatticePolytope& p, const LatticePolytope& q,
                                                           bool first_only) {
  const std::size_t n = p.ambient_rank();
  const auto& pv = p.vertices();
  const auto& qv = q.vertices();
  std::vector<AffineLatticeMap> found;
  if (pv.size() != qv.size() || p.rays().size() != q.rays().size()) return found;
  if (n == 0) {
    found.push_back(AffineLatticeMap{{}, {}, false});
    return found;
  }

  const auto p_edges = p.edge_directions(0);
  // Pick n independent edges at the first vertex of p.
  std::vector<IntVector> basis;
  for (const auto& e : p_edges) {
    IntMatrix trial = basis;
    trial.push_back(e);
    if (toricdegen::rank(trial) == trial.size()) basis = std::move(trial);
    if (basis.size() == n) break;
  }
  if (basis.size() != n) return found;
  const RatMatrix basis_inv = inverse(transpose(to_rational(basis)));  // columns are edges

  std::vector<IntVector> q_rays = q.rays();
  std::sort(q_rays.begin(), q_rays.end());

  for (std::size_t qi = 0; qi < qv.size(); ++qi) {
    const auto q_edges = q.edge_directions(qi);
    if (q_edges.size() != p_edges.size()) continue;
    bool stop = false;
    for_each_subset(q_edges.size(), n, [&](const std::vector<std::size_t>& subset) {
      std::vector<std::size_t> perm = subset;
      do {
        // A = F * B^{-1} with F's columns the chosen edges of q.
        RatMatrix f(n, RatVector(n));
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t i = 0; i < n; ++i) f[i][j] = Rational(q_edges[perm[j]][i]);
        IntMatrix a(n, IntVector(n));
        bool integral = true;
        for (std::size_t i = 0; i < n && integral; ++i)
          for (std::size_t j = 0; j < n && integral; ++j) {
            Rational s = 0;
            for (std::size_t k = 0; k < n; ++k) s += f[i][k] * basis_inv[k][j];
            if (!is_integer(s)) integral = false;
            else a[i][j] = s.get_num();
          }
        if (!integral) continue;
        Integer det = determinant(a);
        if (det != 1 && det != -1) continue;
        AffineLatticeMap map{a, {}, false};
        map.translation = sub(qv[qi], multiply(a, pv[0]));
        std::vector<RatVector> image;
        for (const auto& v : pv) image.push_back(map.apply(v));
        std::sort(image.begin(), image.end());
        if (image != qv) continue;
        std::vector<IntVector> ray_image;
        for (const auto& r : p.rays()) ray_image.push_back(multiply(a, r));
        std::sort(ray_image.begin(), ray_image.end());
        if (ray_image != q_rays) continue;
        if (std::find_if(found.begin(), found.end(), [&](const AffineLatticeMap& m) {
              return m.matrix == map.matrix && m.translation == map.translation;
            }) == found.end())
          found.push_back(map);
        if (first_only) {
          stop = true;
          return false;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      return true;
    });
    if (stop) break;
  }
  return found;
}

LatticePolytope to_chart(const LatticePolytope& p) {
  const auto ch = p.chart();
  std::vector<RatVector> pts;
  for (const auto& v : p.vertices()) pts.push_back(ch.coordinates(v));
  std::vector<IntVector> rays;
  for (const auto& r : p.rays()) {
    auto c = to_integer(ch.direction_coordinates(r));
    if (!c) throw MathError("ray outside the intrinsic lattice");
    rays.push_back(primitive(*c));
  }
  return LatticePolytope::from_generators(static_cast<std::size_t>(p.dimension()), pts, rays);
}

}  // namespace

std::vector<AffineLatticeMap> lattice_equivalences(const LatticePolytope& p, const LatticePolytope& q,
                                                  bool first_only) {
  if (p.ambient_rank() != q.ambient_rank() || p.dimension() != q.dimension()) return {};
  if (!p.is_pointed() || !q.is_pointed()) throw MathError("lattice equivalence requires pointed polyhedra");
  if (p.is_full_dimensional()) return full_dimensional_equivalences(p, q, first_only);
  auto maps = full_dimensional_equivalences(to_chart(p), to_chart(q), first_only);
  for (auto& m : maps) m.intrinsic = true;
  return maps;
}

std::optional<AffineLatticeMap> lattice_equivalent(const LatticePolytope& p, const LatticePolytope& q) {
  auto maps = lattice_equivalences(p, q, true);
  if (maps.empty()) return std::nullopt;
  return maps.front();
}

std::vector<std::size_t> equivalence_classes(const std::vector<LatticePolytope>& polytopes) {
  std::vector<std::size_t> cls(polytopes.size());
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < polytopes.size(); ++i) {
    bool placed = false;
    for (std::size_t c = 0; c < reps.size() && !placed; ++c) {
      if (lattice_equivalent(polytopes[reps[c]], polytopes[i])) {
        cls[i] = c;
        placed = true;
      }
    }
    if (!placed) {
      cls[i] = reps.size();
      reps.push_back(i);
    }
  }
  return cls;
}

}  // namespace toricdegen
