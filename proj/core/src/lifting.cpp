#include "toricdegen/lifting.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace toricdegen {

namespace {

IntVector append(const IntVector& v, const Integer& last) {
  IntVector out = v;
  out.push_back(last);
  return out;
}

RatVector append(const RatVector& v, const Rational& last) {
  RatVector out = v;
  out.push_back(last);
  return out;
}

IntVector head(const IntVector& v) { return IntVector(v.begin(), v.end() - 1); }
RatVector head(const RatVector& v) { return RatVector(v.begin(), v.end() - 1); }

std::size_t index_of(const std::vector<std::size_t>& v, std::size_t x) {
  return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
}

bool in_face(const LatticePolytope& p, std::size_t face, const RatVector& x) {
  if (!p.contains(x)) return false;
  const auto& tight = p.faces()[face].facets;
  for (std::size_t f = 0; f < p.facets().size(); ++f)
    if (tight[f] && p.facets()[f].slack(x) != 0) return false;
  return true;
}

bool in_face_recession(const LatticePolytope& p, std::size_t face, const IntVector& d) {
  if (!p.recession_contains(d)) return false;
  const auto& tight = p.faces()[face].facets;
  for (std::size_t f = 0; f < p.facets().size(); ++f)
    if (tight[f] && dot(p.facets()[f].normal, d) != 0) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Wall functions and the cocycle

std::optional<AffineFunction> WallCochain::get(std::size_t i, std::size_t j) const {
  for (const auto& w : walls) {
    if (w.i == i && w.j == j) return w.f;
    if (w.i == j && w.j == i) return -w.f;
  }
  return std::nullopt;
}

WallCochain wall_functions(const Partition& g) {
  const auto& c = g.classification();
  if (!c.semistable) throw PartitionError("partition is not semi-stable");
  const auto& faces = g.faces();
  WallCochain alpha;
  for (auto w : g.walls()) {
    const auto& face = faces[w];
    std::size_t i = std::min(face.pieces[0], face.pieces[1]);
    std::size_t j = std::max(face.pieces[0], face.pieces[1]);
    const auto& piece_i = g.pieces()[i];
    const auto& tight = piece_i.faces()[face.piece_faces[index_of(face.pieces, i)]].facets;
    const Halfspace& h = piece_i.facets()[tight.find_first()];
    const AffineFunction raw{to_rational(negate(h.normal)), -h.offset};

    // Base vertex.
    std::optional<std::size_t> base;
    for (const auto& v : face.vertices) {
      auto vf = g.find_vertex(v);
      if (!vf || faces[*vf].is_delta_vertex) continue;
      if (c.dual_dimension <= 1) {
        base = vf;
        break;
      }
      bool maximal = std::count(c.maximal_vertices.begin(), c.maximal_vertices.end(), *vf) > 0;
      bool singular = std::count(c.singular_vertices.begin(), c.singular_vertices.end(), *vf) > 0;
      if (maximal && !singular) {
        base = vf;
        break;
      }
    }
    if (!base && c.dual_dimension <= 1) base = g.find_vertex(face.vertices.front());
    if (!base) throw PartitionError("partition not mildly singular");

    const auto& bf = faces[*base];
    const RatVector& p = bf.vertices[0];
    std::optional<IntVector> edge;
    for (auto e : g.edges_at(*base, bf.is_delta_vertex ? std::nullopt : std::optional(bf.delta_face))) {
      const auto& ef = faces[e];
      if (std::find(ef.pieces.begin(), ef.pieces.end(), j) == ef.pieces.end()) continue;
      IntVector d = g.edge_direction(e, p);
      if (raw.slope(d) > 0) {
        edge = d;
        break;
      }
    }
    if (!edge) throw MathError("no edge leaves the wall at " + to_string(p));
    Integer weight = 1;
    if (!bf.is_delta_vertex) {
      auto wv = weight_vector(g, *base);
      auto it = std::find(wv.edges.begin(), wv.edges.end(), *edge);
      weight = wv.edge_weights[static_cast<std::size_t>(it - wv.edges.begin())];
    }
    Rational unit = raw.slope(*edge) * Rational(weight);
    alpha.walls.push_back({w, i, j, Rational(1) / unit * raw, p, *edge, weight});
  }
  return alpha;
}

CocycleCheck check_cocycle(const WallCochain& alpha, const DualComplex& k) {
  for (const auto& s : k.simplices_of_dimension(2)) {
    auto a = alpha.get(s[0], s[1]);
    auto b = alpha.get(s[1], s[2]);
    auto c = alpha.get(s[2], s[0]);
    if (!a || !b || !c || !(*a + *b + *c).is_zero()) return {false, std::array{s[0], s[1], s[2]}};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Piecewise affine functions

Rational PiecewiseAffine::operator()(const RatVector& x) const {
  for (std::size_t j = 0; j < per_piece.size(); ++j)
    if (partition->pieces()[j].contains(x)) return per_piece[j](x);
  throw MathError("point " + to_string(x) + " lies outside the polytope");
}

PiecewiseAffine PiecewiseAffine::scaled(const Rational& r) const {
  PiecewiseAffine out = *this;
  for (auto& f : out.per_piece) f = r * f;
  return out;
}

PiecewiseAffine PiecewiseAffine::shifted(const AffineFunction& g) const {
  PiecewiseAffine out = *this;
  for (auto& f : out.per_piece) f = f - g;
  return out;
}

bool PiecewiseAffine::is_continuous() const {
  for (const auto& face : partition->faces()) {
    for (std::size_t k = 1; k < face.pieces.size(); ++k) {
      const auto& a = per_piece[face.pieces[0]];
      const auto& b = per_piece[face.pieces[k]];
      for (const auto& v : face.vertices)
        if (a(v) != b(v)) return false;
      for (const auto& r : face.rays)
        if (a.slope(r) != b.slope(r)) return false;
    }
  }
  return true;
}

PiecewiseAffine integrate_cocycle(const Partition& g, const WallCochain& alpha, const DualComplex& k,
                                  SpanningTree tree, std::size_t root) {
  const std::size_t count = g.pieces().size();
  if (root >= count) throw MathError("anchor piece out of range");
  std::vector<std::vector<std::size_t>> adj(count);
  const auto edges = k.simplices_of_dimension(1);
  for (const auto& e : edges) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  const std::size_t n = g.rank();
  std::vector<std::optional<AffineFunction>> f(count);
  f[root] = AffineFunction::zero(n);
  std::deque<std::size_t> work{root};
  while (!work.empty()) {
    std::size_t i;
    if (tree == SpanningTree::BreadthFirst) {
      i = work.front();
      work.pop_front();
    } else {
      i = work.back();
      work.pop_back();
    }
    auto visit = [&](std::size_t j) {
      if (f[j]) return;
      auto fij = alpha.get(i, j);
      if (!fij) throw MathError("cocycle integration failed");
      f[j] = *f[i] + *fij;
      work.push_back(j);
    };
    if (tree == SpanningTree::BreadthFirst) {
      for (auto j : adj[i]) visit(j);
    } else {
      for (auto it = adj[i].rbegin(); it != adj[i].rend(); ++it) visit(*it);
    }
  }
  PiecewiseAffine out;
  out.partition = std::make_shared<const Partition>(g);
  for (std::size_t j = 0; j < count; ++j) {
    if (!f[j]) throw MathError("dual complex is not connected");
    out.per_piece.push_back(*f[j]);
  }
  for (const auto& e : edges) {
    auto fij = alpha.get(e[0], e[1]);
    if (!fij || !(out.per_piece[e[1]] - out.per_piece[e[0]] - *fij).is_zero())
      throw MathError("cocycle integration failed");
  }
  return out;
}

PiecewiseAffine lifting_function(const Partition& g, SpanningTree tree) {
  const WallCochain alpha = wall_functions(g);
  const DualComplex k = dual_complex(g);
  auto check = check_cocycle(alpha, k);
  if (!check.ok) {
    const auto& w = *check.witness;
    throw MathError("wall functions fail the cocycle condition on pieces " + std::to_string(w[0]) + ", " +
                    std::to_string(w[1]) + ", " + std::to_string(w[2]));
  }
  return integrate_cocycle(g, alpha, k, tree, 0);
}

Rational concavity(const PiecewiseAffine& f, std::size_t vertex_face) {
  const Partition& g = *f.partition;
  const auto& face = g.faces().at(vertex_face);
  if (face.dim != 0) throw MathError("concavity is defined at vertices only");
  if (face.is_delta_vertex) throw MathError("concavity undefined at vertices of delta");
  const RatVector& p = face.vertices[0];
  Rational sum = 0;
  for (auto e : g.edges_at(vertex_face, face.delta_face)) {
    const auto& fj = f.per_piece[g.faces()[e].pieces[0]];
    IntVector d = g.edge_direction(e, p);
    sum += fj.slope(d);
  }
  return sum;
}

std::vector<Rational> concavities(const PiecewiseAffine& f) {
  std::vector<Rational> out;
  for (auto v : f.partition->vertices()) out.push_back(concavity(f, v));
  return out;
}

std::vector<IntVector> integrality_points(const Partition& g) {
  const auto& delta = g.ambient();
  if (delta.is_compact()) return delta.lattice_points();
  Integer radius = 2;
  for (const auto& face : g.faces())
    for (const auto& v : face.vertices)
      for (const auto& x : v) radius = std::max(radius, Integer(ceil_of(abs(x)) + 2));
  const std::size_t n = g.rank();
  std::vector<Halfspace> box;
  for (std::size_t i = 0; i < n; ++i) {
    box.push_back({unit_int_vector(n, i), Rational(radius)});
    box.push_back({negate(unit_int_vector(n, i)), Rational(radius)});
  }
  return delta.intersect(LatticePolytope::from_halfspaces(n, box)).lattice_points();
}

namespace {

bool integral_on(const PiecewiseAffine& f, const std::vector<IntVector>& points) {
  return std::all_of(points.begin(), points.end(), [&](const IntVector& m) { return is_integer(f(m)); });
}

}  // namespace

IntegralLifting minimal_integral_lifting(const PiecewiseAffine& f) {
  const Partition& g = *f.partition;
  const auto vertices = g.vertices();
  const auto cs = concavities(f);
  for (std::size_t k = 0; k < cs.size(); ++k)
    if (cs[k] <= 0)
      throw MathError("not a lifting function: concavity " + to_string(cs[k]) + " at " +
                      to_string(g.faces()[vertices[k]].vertices[0]));

  const auto points = integrality_points(g);
  std::vector<Rational> values;
  for (const auto& m : points) values.push_back(f(m));
  Integer denominators = 1;
  for (const auto& q : values) denominators = lcm(denominators, Integer(q.get_den()));
  std::vector<Integer> numerators;
  for (const auto& q : values) numerators.push_back(Integer(q.get_num() * (denominators / q.get_den())));
  const Integer span = gcd_of(numerators);

  IntegralLifting out;
  out.scale = span == 0 ? Rational(1) : make_rational(denominators, span);
  if (g.classification().balanced && !cs.empty() &&
      std::all_of(cs.begin(), cs.end(), [&](const Rational& c) { return c == cs[0]; })) {
    const Rational unit = Rational(1) / cs[0];
    if (integral_on(f.scaled(unit), points)) out.scale = unit;
  }
  out.function = f.scaled(out.scale);
  for (const auto& c : cs) out.concavity.push_back(out.scale * c);
  out.unit_concavity =
      std::all_of(out.concavity.begin(), out.concavity.end(), [](const Rational& c) { return c == 1; });
  if (g.classification().balanced && !out.unit_concavity)
    out.warning = "scaling alone does not reach unit concavity";
  return out;
}

// ---------------------------------------------------------------------------
// Lifted polytope

IntVector lift_direction(const PiecewiseAffine& f, std::size_t piece, const IntVector& direction) {
  return primitive_integer_direction(append(to_rational(direction), f.per_piece[piece].slope(direction)));
}

LiftedFaceKind lifted_face_kind(const LiftedPolytope& l, std::size_t face) {
  const auto& tight = l.polytope.faces()[face].facets;
  bool lift = false;
  for (std::size_t f = 0; f < l.polytope.facets().size(); ++f) {
    if (!tight[f]) continue;
    const Integer& last = l.polytope.facets()[f].normal.back();
    if (last < 0) return LiftedFaceKind::Cap;
    if (last > 0) lift = true;
  }
  return lift ? LiftedFaceKind::Lift : LiftedFaceKind::Vertical;
}

ProjectionCheck check_projection(const LiftedPolytope& l) {
  const Partition& g = *l.base;
  const auto& delta = g.ambient();
  const auto& p = l.polytope;
  const auto& f = l.function;

  // Facets of the lifted polytope that come from facets of delta.
  std::vector<std::optional<std::size_t>> from_delta(p.facets().size());
  for (std::size_t k = 0; k < p.facets().size(); ++k) {
    const auto& h = p.facets()[k];
    if (h.normal.back() != 0) continue;
    for (std::size_t d = 0; d < delta.facets().size(); ++d)
      if (delta.facets()[d].normal == head(h.normal) && delta.facets()[d].offset == h.offset) from_delta[k] = d;
  }
  auto max_slope = [&](const IntVector& r) {
    Rational s = f.per_piece[0].slope(r);
    for (const auto& fj : f.per_piece) s = std::max(s, fj.slope(r));
    return s;
  };

  for (std::size_t face = 0; face < p.faces().size(); ++face) {
    const auto kind = lifted_face_kind(l, face);
    const auto points = p.face_vertices(face);
    const auto rays = p.face_rays(face);
    if (kind == LiftedFaceKind::Lift) {
      std::vector<RatVector> xs;
      std::vector<IntVector> rs;
      for (const auto& v : points) xs.push_back(head(v));
      for (const auto& r : rays) {
        IntVector x = head(r);
        if (is_zero(x)) return {false, face};
        rs.push_back(primitive(x));
      }
      auto gf = g.find_face(xs, rs);
      if (!gf || l.lift_map[*gf] != face) return {false, face};
      continue;
    }
    Bitset tight(delta.facets().size());
    for (std::size_t k = 0; k < p.facets().size(); ++k) {
      if (!p.faces()[face].facets[k] || p.facets()[k].normal.back() != 0) continue;
      if (!from_delta[k]) return {false, face};
      tight[*from_delta[k]] = true;
    }
    const std::size_t target = delta.face_with_tight_facets(tight);
    // The projection lies in the face of delta.
    for (const auto& v : points)
      if (!in_face(delta, target, head(v))) return {false, face};
    for (const auto& r : rays) {
      IntVector x = head(r);
      if (!is_zero(x) && !in_face_recession(delta, target, x)) return {false, face};
    }
    // The face of delta lies in the projection.
    auto height = [&](const RatVector& x) {
      return kind == LiftedFaceKind::Cap ? dot(l.cap->a, x) + Rational(l.cap->b) : f(x);
    };
    auto rise = [&](const IntVector& r) {
      return kind == LiftedFaceKind::Cap ? Rational(dot(l.cap->a, r)) : max_slope(r);
    };
    for (const auto& v : delta.face_vertices(target))
      if (!in_face(p, face, append(v, height(v)))) return {false, face};
    std::vector<IntVector> directions = delta.face_rays(target);
    for (const auto& d : delta.lineality()) {
      directions.push_back(d);
      directions.push_back(negate(d));
    }
    for (const auto& r : directions)
      if (!in_face_recession(p, face, primitive_integer_direction(append(to_rational(r), rise(r)))))
        return {false, face};
  }
  return {};
}

LiftedPolytope lift_polytope(const Partition& g, const IntegralLifting& lifting, std::optional<CapRequest> cap) {
  const auto& delta = g.ambient();
  const std::size_t n = g.rank();
  const PiecewiseAffine& f = lifting.function;

  std::vector<Halfspace> ineqs, eqs;
  for (const auto& h : delta.facets()) ineqs.push_back({append(h.normal, Integer(0)), h.offset});
  for (const auto& h : delta.equations()) eqs.push_back({append(h.normal, Integer(0)), h.offset});
  for (const auto& fj : f.per_piece) {
    RatVector normal;
    for (const auto& c : fj.linear) normal.push_back(-c);
    normal.push_back(1);
    ineqs.push_back(make_halfspace(normal, -fj.constant));
  }

  LiftedPolytope l;
  l.base = f.partition;
  l.function = f;
  l.unit_concavity = lifting.unit_concavity;
  if (cap) {
    Cap c;
    c.a = cap->a.value_or(zero_int_vector(n));
    if (c.a.size() != n) throw MathError("cap slope has the wrong rank");
    if (cap->b) {
      c.b = *cap->b;
    } else {
      std::optional<Rational> top;
      for (const auto& face : g.faces()) {
        if (face.dim != 0) continue;
        Rational h = f(face.vertices[0]) - dot(c.a, face.vertices[0]);
        if (!top || h > *top) top = h;
      }
      if (!top) throw MathError("partition has no vertices to place the cap above");
      c.b = floor_of(*top) + 1;
    }
    ineqs.push_back({append(c.a, Integer(-1)), Rational(c.b)});
    l.cap = c;
  }
  l.polytope = LatticePolytope::from_halfspaces(n + 1, std::move(ineqs), std::move(eqs));
  const auto& p = l.polytope;
  if (!p.is_pointed()) throw MathError("lifted polytope has lineality");

  for (const auto& face : g.faces()) {
    const std::size_t piece = face.pieces[0];
    std::vector<RatVector> pts;
    std::vector<IntVector> rays;
    for (const auto& v : face.vertices) pts.push_back(append(v, f.per_piece[piece](v)));
    for (const auto& r : face.rays) rays.push_back(lift_direction(f, piece, r));
    std::size_t target = p.smallest_face_containing(pts, rays);
    auto got_pts = p.face_vertices(target);
    auto got_rays = p.face_rays(target);
    std::sort(pts.begin(), pts.end());
    std::sort(rays.begin(), rays.end());
    std::sort(got_pts.begin(), got_pts.end());
    std::sort(got_rays.begin(), got_rays.end());
    if (got_pts != pts || got_rays != rays || p.faces()[target].dim != face.dim) {
      std::string where = face.vertices.empty() ? "" : " at " + to_string(face.vertices[0]);
      throw MathError("face of dimension " + std::to_string(face.dim) + where + " has no lift");
    }
    l.lift_map.push_back(target);
  }
  std::size_t lifts = 0;
  for (std::size_t k = 0; k < p.faces().size(); ++k)
    if (lifted_face_kind(l, k) == LiftedFaceKind::Lift) ++lifts;
  if (lifts != g.faces().size()) throw MathError("a face of the partition has more than one lift");

  for (const auto& v : p.vertices())
    if (is_integral(head(v)) && !is_integer(v.back()))
      throw MathError("lifted vertex " + to_string(v) + " is not integral");

  auto proj = check_projection(l);
  if (!proj.ok) {
    const auto pts = p.face_vertices(*proj.witness);
    throw MathError("face of the lifted polytope through " + (pts.empty() ? std::string("?") : to_string(pts[0])) +
                    " does not project onto a face");
  }

  for (std::size_t v = 0; v < p.vertices().size(); ++v)
    if (!is_nonsingular_vertex(p, v)) l.singular_vertices.push_back(p.vertices()[v]);
  l.nonsingular = l.singular_vertices.empty();
  const auto& c = g.classification();
  if (c.nonsingular && is_nonsingular(delta) && l.unit_concavity && !l.nonsingular)
    throw MathError("lift is singular at " + to_string(l.singular_vertices[0]));
  return l;
}

// ---------------------------------------------------------------------------
// Multi-parameter lift

IteratedLift iterated_lift(const LatticePolytope& delta, const IntVector& m, const std::vector<Integer>& offsets) {
  const std::size_t n = delta.ambient_rank();
  if (m.size() != n) throw MathError("hyperplane normal has the wrong rank");
  if (offsets.empty()) throw MathError("no hyperplanes given");
  if (!std::is_sorted(offsets.begin(), offsets.end()) ||
      std::adjacent_find(offsets.begin(), offsets.end()) != offsets.end())
    throw MathError("hyperplane offsets must be strictly increasing");
  const std::size_t l = offsets.size();

  IteratedLift out;
  out.steps = l;

  // One shot: y_k >= 0 and y_k >= <m, x> - c_k.
  std::vector<Halfspace> hs, eqs;
  auto pad = [&](const IntVector& v) {
    IntVector w = v;
    w.resize(n + l, Integer(0));
    return w;
  };
  for (const auto& h : delta.facets()) hs.push_back({pad(h.normal), h.offset});
  for (const auto& h : delta.equations()) eqs.push_back({pad(h.normal), h.offset});
  for (std::size_t k = 0; k < l; ++k) {
    IntVector e = zero_int_vector(n + l);
    e[n + k] = 1;
    hs.push_back({e, Rational(0)});
    IntVector w = pad(negate(m));
    w[n + k] = 1;
    hs.push_back({w, Rational(offsets[k])});
  }
  out.one_shot = LatticePolytope::from_halfspaces(n + l, std::move(hs), std::move(eqs));
  for (std::size_t i = 0; i <= l; ++i) {
    std::vector<AffineFunction> row;
    for (std::size_t k = 0; k < l; ++k)
      row.push_back(k < i ? AffineFunction{to_rational(m), Rational(-offsets[k])} : AffineFunction::zero(n));
    out.components.push_back(std::move(row));
  }

  // Step by step: lift by the lowest remaining hyperplane.
  LatticePolytope current = delta;
  for (std::size_t k = 0; k < l; ++k) {
    IntVector mk = m;
    mk.resize(n + k, Integer(0));
    std::vector<Integer> remaining(offsets.begin() + static_cast<std::ptrdiff_t>(k), offsets.end());
    if (!classify(partition_by_hyperplanes(current, mk, remaining)).nonsingular)
      throw PartitionError("intermediate partition " + std::to_string(k) + " is singular");
    Partition g = partition_by_hyperplanes(current, mk, {offsets[k]});
    auto lifting = minimal_integral_lifting(lifting_function(g));
    current = lift_polytope(g, lifting).polytope;
  }
  out.iterative = current;

  auto sorted = [](auto v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  out.agree = out.one_shot == out.iterative &&
              sorted(out.one_shot.vertices()) == sorted(out.iterative.vertices()) &&
              sorted(out.one_shot.rays()) == sorted(out.iterative.rays());
  return out;
}

// ---------------------------------------------------------------------------
// Support function extension

ExtendedSupportFunction extend_support_function(const SupportFunction& phi, const LiftedPolytope& lifted) {
  if (!lifted.cap) throw MathError("extension requires a compact lift");
  if (lifted.base->pieces().size() != 2) throw MathError("extension requires a single-hyperplane lift");
  if (classify_support_function(phi) == Convexity::None) throw MathError("support function is not convex");

  ExtendedSupportFunction out;
  out.function.fan = normal_fan(lifted.polytope);
  const auto& fan = out.function.fan;
  out.function.values.assign(fan.rays.size(), Rational(0));
  std::vector<std::size_t> downward;
  for (std::size_t r = 0; r < fan.rays.size(); ++r) {
    const auto& v = fan.rays[r];
    if (v.back() < 0) {
      downward.push_back(r);
    } else if (v.back() == 0) {
      auto it = std::find(phi.fan.rays.begin(), phi.fan.rays.end(), head(v));
      if (it == phi.fan.rays.end()) throw MathError("ray " + to_string(v) + " is not in the fan of delta");
      out.function.values[r] = phi.values[static_cast<std::size_t>(it - phi.fan.rays.begin())];
    }
  }
  for (Integer a = 0; a >= -4096; --a) {
    for (auto r : downward) out.function.values[r] = a;
    out.convexity = classify_support_function(out.function);
    if (out.convexity != Convexity::None) {
      out.cap_value = a;
      out.restricts = true;
      for (std::size_t r = 0; r < fan.rays.size(); ++r) {
        if (fan.rays[r].back() != 0) continue;
        auto it = std::find(phi.fan.rays.begin(), phi.fan.rays.end(), head(fan.rays[r]));
        if (out.function.values[r] != phi.values[static_cast<std::size_t>(it - phi.fan.rays.begin())])
          out.restricts = false;
      }
      return out;
    }
  }
  throw MathError("no convex extension found");
}

}  // namespace toricdegen
