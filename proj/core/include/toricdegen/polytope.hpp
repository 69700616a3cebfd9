#pragma once

#include "toricdegen/exactmath.hpp"

#include <boost/dynamic_bitset.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace toricdegen {

using Bitset = boost::dynamic_bitset<>;

/// The halfspace <x, normal> >= -offset (or the hyperplane <x, normal> = -offset
/// when used as an equation). Normals are kept primitive.
struct Halfspace {
  IntVector normal;
  Rational offset;

  bool satisfied_by(const RatVector& x) const { return dot(x, normal) + offset >= 0; }
  Rational slack(const RatVector& x) const { return dot(x, normal) + offset; }
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// Halfspace with a rational normal, rescaled so the normal is primitive integral.
Halfspace make_halfspace(const RatVector& normal, const Rational& offset);

/// Affine chart of a polyhedron's affine hull: x = origin + sum_i c_i basis[i],
/// where basis is a lattice basis of (hull direction) intersected with Z^n.
struct IntrinsicChart {
  RatVector origin;
  IntMatrix basis;

  RatVector coordinates(const RatVector& x) const;
  RatVector direction_coordinates(const IntVector& d) const;
};

/// A rational polyhedron {x : <x, n_i> >= -a_i, <x, e_j> = -b_j} with cached
/// generators and face lattice. Possibly unbounded and possibly with lineality.
class LatticePolytope {
 public:
  struct Face {
    Bitset points;  // indices into points()
    Bitset rays;    // indices into rays()
    Bitset facets;  // tight facets
    int dim = 0;
  };

  static LatticePolytope from_halfspaces(std::size_t rank, std::vector<Halfspace> inequalities,
                                         std::vector<Halfspace> equations = {});
  static std::optional<LatticePolytope> try_from_halfspaces(std::size_t rank,
                                                            std::vector<Halfspace> inequalities,
                                                            std::vector<Halfspace> equations = {});
  static LatticePolytope from_vertices(const std::vector<IntVector>& points);
  static LatticePolytope from_generators(std::size_t rank, const std::vector<RatVector>& points,
                                         const std::vector<IntVector>& rays = {});
  static LatticePolytope whole_space(std::size_t rank);

  std::size_t ambient_rank() const { return rank_; }
  int dimension() const { return dim_; }
  bool is_full_dimensional() const { return dim_ == static_cast<int>(rank_); }
  bool is_pointed() const { return lineality_.empty(); }
  bool is_compact() const { return lineality_.empty() && rays_.empty(); }
  /// All vertices integral.
  bool is_lattice() const;

  const std::vector<Halfspace>& facets() const { return facets_; }
  const std::vector<Halfspace>& equations() const { return equations_; }
  /// Vertices for a pointed polyhedron; otherwise representatives of the minimal face.
  const std::vector<RatVector>& points() const { return points_; }
  const std::vector<RatVector>& vertices() const;
  const std::vector<IntVector>& rays() const { return rays_; }
  const IntMatrix& lineality() const { return lineality_; }

  bool contains(const RatVector& x) const;
  bool contains(const IntVector& x) const { return contains(to_rational(x)); }
  bool recession_contains(const IntVector& d) const;
  bool contains(const LatticePolytope& other) const;
  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b);

  /// Faces ordered by dimension, then by vertex list; the last face is P.
  const std::vector<Face>& faces() const { return faces_; }
  std::vector<std::size_t> faces_of_dimension(int d) const;
  std::optional<std::size_t> face_index(const Bitset& points, const Bitset& rays) const;
  /// Face cut out by exactly the given tight facet set (after closure).
  std::size_t face_with_tight_facets(const Bitset& facets) const;
  /// Smallest face containing the given points and directions.
  std::size_t smallest_face_containing(const std::vector<RatVector>& points,
                                       const std::vector<IntVector>& rays = {}) const;
  bool face_contains(std::size_t outer, std::size_t inner) const;
  LatticePolytope face_polytope(std::size_t face) const;
  std::vector<RatVector> face_vertices(std::size_t face) const;
  std::vector<IntVector> face_rays(std::size_t face) const;

  /// Index of a vertex (pointed case).
  std::optional<std::size_t> vertex_index(const RatVector& v) const;
  /// Primitive edge directions at a vertex, sorted lexicographically.
  std::vector<IntVector> edge_directions(std::size_t vertex) const;

  IntrinsicChart chart() const;
  /// Normalized volume relative to the intrinsic lattice (dim! * volume). Compact only.
  Rational normalized_volume() const;

  LatticePolytope intersect(const LatticePolytope& other) const;
  std::optional<LatticePolytope> try_intersect(const LatticePolytope& other) const;
  /// Lattice points, sorted lexicographically. Compact only.
  std::vector<IntVector> lattice_points() const;
  /// Some point in the relative interior.
  RatVector relative_interior_point() const;

  std::string describe() const;

 private:
  void build(std::vector<Halfspace> inequalities, std::vector<Halfspace> equations);
  void build_faces();
  int rank_of_face(const Bitset& points, const Bitset& rays) const;

  std::size_t rank_ = 0;
  int dim_ = 0;
  std::vector<Halfspace> facets_;
  std::vector<Halfspace> equations_;
  std::vector<RatVector> points_;
  std::vector<IntVector> rays_;
  IntMatrix lineality_;
  std::vector<Face> faces_;
  std::map<Bitset, std::size_t> face_lookup_;  // points+rays bitset -> face
};

// ---------------------------------------------------------------------------
// Fans and support functions

struct Fan {
  std::size_t rank = 0;
  std::vector<IntVector> rays;               // primitive generators
  std::vector<std::vector<std::size_t>> cones;  // ray index sets, sorted, closed under faces

  int cone_dimension(std::size_t cone) const;
  std::vector<std::size_t> maximal_cones() const;
  bool is_complete() const;
  std::optional<std::size_t> find_cone(const std::vector<std::size_t>& rays) const;
};

/// Fan with the given rays whose maximal cones are listed; all faces are added.
Fan fan_from_maximal_cones(std::size_t rank, std::vector<IntVector> rays,
                           const std::vector<std::vector<std::size_t>>& maximal);

/// Inward facet normals as rays; one cone per face (its tight facets).
Fan normal_fan(const LatticePolytope& p);

struct SupportFunction {
  Fan fan;
  RatVector values;  // value on each ray generator
};

enum class Convexity { Affine, StrictlyConvex, Convex, None };
std::string to_string(Convexity c);

/// Linear function m_sigma with <m_sigma, v_rho> = phi(v_rho) on each maximal cone.
std::vector<RatVector> linear_pieces(const SupportFunction& phi);
Convexity classify_support_function(const SupportFunction& phi);
/// {u : <u, v_rho> >= phi(v_rho) for all rays}.
LatticePolytope divisor_polytope(const SupportFunction& phi);

// ---------------------------------------------------------------------------
// Simplicity and nonsingularity ("simplicial" here means n edges per vertex)

struct VertexCheck {
  bool ok = true;
  std::optional<RatVector> witness;
};

VertexCheck check_simplicial(const LatticePolytope& p);
VertexCheck check_nonsingular(const LatticePolytope& p);
bool is_simplicial(const LatticePolytope& p);
bool is_nonsingular(const LatticePolytope& p);
/// Edges at the vertex form a basis of the intrinsic lattice.
bool is_nonsingular_vertex(const LatticePolytope& p, std::size_t vertex);

// ---------------------------------------------------------------------------
// Lattice equivalence

/// x -> matrix * x + translation. For lower-dimensional polytopes the map is
/// expressed in intrinsic chart coordinates and `intrinsic` is set.
struct AffineLatticeMap {
  IntMatrix matrix;
  RatVector translation;
  bool intrinsic = false;

  RatVector apply(const RatVector& x) const;
};

std::optional<AffineLatticeMap> lattice_equivalent(const LatticePolytope& p, const LatticePolytope& q);
/// Every affine lattice map taking p onto q.
std::vector<AffineLatticeMap> lattice_equivalences(const LatticePolytope& p, const LatticePolytope& q,
                                                  bool first_only = false);

/// Group indices into classes of pairwise lattice-equivalent polytopes; returns class id per item.
std::vector<std::size_t> equivalence_classes(const std::vector<LatticePolytope>& polytopes);

}  // namespace toricdegen
