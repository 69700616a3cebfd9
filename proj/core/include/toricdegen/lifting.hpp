#pragma once

#include "toricdegen/partition.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace toricdegen {

/// Affine function per interior wall, oriented from the lower to the higher piece index.
struct WallCochain {
  struct Wall {
    std::size_t face = 0;  // index into Partition::faces()
    std::size_t i = 0, j = 0;  // i < j
    AffineFunction f;          // f_ij, positive on the side of piece j
    RatVector base_vertex;
    IntVector normalizing_edge;  // primitive edge of piece j at the base vertex
    Integer edge_weight = 1;
  };
  std::vector<Wall> walls;

  /// f_ij for any ordered pair sharing a wall (f_ji = -f_ij).
  std::optional<AffineFunction> get(std::size_t i, std::size_t j) const;
};

WallCochain wall_functions(const Partition& g);

struct CocycleCheck {
  bool ok = true;
  std::optional<std::array<std::size_t, 3>> witness;
};

/// f_ij + f_jk + f_ki = 0 on every 2-simplex of K.
CocycleCheck check_cocycle(const WallCochain& alpha, const DualComplex& k);

enum class SpanningTree { BreadthFirst, DepthFirst };

/// One affine function per piece of a fixed partition.
struct PiecewiseAffine {
  std::shared_ptr<const Partition> partition;
  std::vector<AffineFunction> per_piece;

  /// Value at a point of the ambient polytope (maximum over pieces containing it).
  Rational operator()(const RatVector& x) const;
  Rational operator()(const IntVector& x) const { return (*this)(to_rational(x)); }
  PiecewiseAffine scaled(const Rational& r) const;
  /// Subtract one affine function from every piece.
  PiecewiseAffine shifted(const AffineFunction& g) const;
  /// Pieces agree on every common face.
  bool is_continuous() const;
};

/// Solves f_j - f_i = f_ij along a spanning tree of K rooted at `root`, with f_root = 0.
PiecewiseAffine integrate_cocycle(const Partition& g, const WallCochain& alpha, const DualComplex& k,
                                  SpanningTree tree = SpanningTree::BreadthFirst, std::size_t root = 0);

/// Lifting function F of a partition: wall functions integrated from piece 0.
PiecewiseAffine lifting_function(const Partition& g, SpanningTree tree = SpanningTree::BreadthFirst);

/// C(F, p): sum of increments of F along the partition edges at p inside its smallest face of delta.
Rational concavity(const PiecewiseAffine& f, std::size_t vertex_face);
std::vector<Rational> concavities(const PiecewiseAffine& f);

/// Lattice points of delta on which integrality is tested (box-truncated when unbounded).
std::vector<IntVector> integrality_points(const Partition& g);

struct IntegralLifting {
  PiecewiseAffine function;       // R * F
  Rational scale;                 // R
  std::vector<Rational> concavity;  // C(R F, p) per vertex of the partition
  bool unit_concavity = false;
  std::optional<std::string> warning;
};

/// Smallest positive R with R F integral on the lattice points of delta. For a balanced
/// partition with constant concavity c, uses R = 1/c when that is integral.
IntegralLifting minimal_integral_lifting(const PiecewiseAffine& f);

struct Cap {
  IntVector a;
  Integer b;
};

struct LiftedPolytope {
  std::shared_ptr<const Partition> base;
  PiecewiseAffine function;
  LatticePolytope polytope;  // coordinates (x, y) with the height last
  std::optional<Cap> cap;
  std::vector<std::size_t> lift_map;  // face of the partition -> face of the lifted polytope
  bool unit_concavity = false;
  bool nonsingular = false;
  std::vector<RatVector> singular_vertices;
};

struct CapRequest {
  std::optional<IntVector> a;
  std::optional<Integer> b;
};

/// {(x, y) : x in delta, y >= F(x)}, optionally capped by y <= <a, x> + b, with all checks run.
LiftedPolytope lift_polytope(const Partition& g, const IntegralLifting& lifting,
                             std::optional<CapRequest> cap = std::nullopt);

/// Kinds of faces of a lifted polytope.
enum class LiftedFaceKind { Lift, Vertical, Cap };
LiftedFaceKind lifted_face_kind(const LiftedPolytope& l, std::size_t face);

/// Every face projects onto a face of delta or of the partition.
struct ProjectionCheck {
  bool ok = true;
  std::optional<std::size_t> witness;
};
ProjectionCheck check_projection(const LiftedPolytope& l);

/// Primitive direction of (d, slope of the piece along d).
IntVector lift_direction(const PiecewiseAffine& f, std::size_t piece, const IntVector& direction);

struct IteratedLift {
  std::size_t steps = 0;
  LatticePolytope one_shot;
  LatticePolytope iterative;
  std::vector<std::vector<AffineFunction>> components;  // per piece: l affine functions
  bool agree = false;
};

/// Multi-parameter lift for parallel hyperplanes <m, x> = c_1 < ... < c_l.
IteratedLift iterated_lift(const LatticePolytope& delta, const IntVector& m, const std::vector<Integer>& offsets);

struct ExtendedSupportFunction {
  SupportFunction function;
  Integer cap_value = 0;  // value on the downward ray
  Convexity convexity = Convexity::None;
  bool restricts = false;
};

/// Extends a convex support function on the fan of delta to the fan of a capped single-hyperplane lift.
ExtendedSupportFunction extend_support_function(const SupportFunction& phi, const LiftedPolytope& lifted);

}  // namespace toricdegen
