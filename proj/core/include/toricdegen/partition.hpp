#pragma once

#include "toricdegen/polytope.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace toricdegen {

/// A tiling of a polytope that fails one of the structural requirements.
class PartitionError : public MathError {
 public:
  using MathError::MathError;
};

enum class Tri { Unknown, Yes, No };
std::string to_string(Tri t);

/// A face of the partition: a face of at least one piece, merged across pieces.
struct GammaFace {
  int dim = 0;
  std::vector<RatVector> vertices;        // sorted
  std::vector<IntVector> rays;            // sorted
  std::vector<std::size_t> pieces;        // pieces having this as a face
  std::vector<std::size_t> piece_faces;   // face index inside each of those pieces
  std::size_t delta_face = 0;             // smallest face of the ambient polytope containing it
  int delta_face_dim = 0;
  bool is_delta_vertex = false;           // excluded from the 0-faces of the partition
};

struct SemistableWitness {
  std::size_t face = 0;  // index into Partition::faces()
  int face_dim = 0;
  int delta_face_dim = 0;
  std::size_t count = 0;
  std::size_t expected = 0;
};

struct WeightVector {
  RatVector vertex;
  std::vector<IntVector> edges;        // primitive edge vectors in the smallest face, sorted
  std::vector<Integer> edge_weights;   // relation coefficient of each edge (parallel to edges)
  std::vector<Integer> weights;        // w_0 (first edge) then the rest ascending

  bool is_balanced() const;
};

struct DualComplex {
  std::size_t vertex_count = 0;
  std::vector<std::vector<std::size_t>> simplices;  // distinct, sorted by size then lexicographically

  int dimension() const;
  std::vector<std::vector<std::size_t>> simplices_of_dimension(int d) const;
  bool contains(const std::vector<std::size_t>& simplex) const;
  bool is_connected() const;
};

struct Classification {
  bool semistable = false;
  std::optional<SemistableWitness> witness;
  bool balanced = false;
  bool nonsingular = false;
  bool mildly_singular = false;
  int dual_dimension = -1;
  std::vector<std::size_t> maximal_vertices;     // indices into Partition::faces()
  std::vector<std::size_t> unbalanced_vertices;
  std::vector<std::size_t> singular_vertices;
  std::vector<WeightVector> weights;             // one per vertex of the partition, same order as vertices()
};

struct PartitionFlags {
  Tri semistable = Tri::Unknown;
  Tri balanced = Tri::Unknown;
  Tri nonsingular = Tri::Unknown;
  Tri mildly_singular = Tri::Unknown;
};

class Partition {
 public:
  /// Verifies that the pieces tile delta and are simplicial, then builds the face poset.
  static Partition build(LatticePolytope delta, std::vector<LatticePolytope> pieces);

  const LatticePolytope& ambient() const { return delta_; }
  const std::vector<LatticePolytope>& pieces() const { return pieces_; }
  const std::vector<GammaFace>& faces() const { return faces_; }
  std::size_t rank() const { return delta_.ambient_rank(); }
  int dimension() const { return delta_.dimension(); }

  /// 0-faces of the partition (vertices of delta excluded).
  std::vector<std::size_t> vertices() const;
  std::optional<std::size_t> find_face(const std::vector<RatVector>& vertices,
                                       const std::vector<IntVector>& rays = {}) const;
  std::optional<std::size_t> find_vertex(const RatVector& p) const;
  /// 1-faces through a vertex face; when `within` is set, only those inside that face of delta.
  std::vector<std::size_t> edges_at(std::size_t vertex_face, std::optional<std::size_t> within = std::nullopt) const;
  /// Primitive direction of an edge face leaving the given vertex.
  IntVector edge_direction(std::size_t edge_face, const RatVector& from) const;
  /// Interior faces of dimension dim - 1 lying in exactly two pieces.
  std::vector<std::size_t> walls() const;
  bool is_interior(std::size_t face) const;

  /// Computed once and shared between copies.
  const Classification& classification() const;
  PartitionFlags flags() const;

 private:
  struct Cache {
    std::once_flag once;
    std::optional<Classification> value;
  };

  LatticePolytope delta_;
  std::vector<LatticePolytope> pieces_;
  std::vector<GammaFace> faces_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Exact count condition: every l-face inside a k-face of delta lies on k - l + 1 pieces.
bool is_semistable(const Partition& g, SemistableWitness* witness = nullptr);
WeightVector weight_vector(const Partition& g, std::size_t vertex_face);
bool is_nonsingular_partition_vertex(const Partition& g, std::size_t vertex_face);
Classification classify(const Partition& g);

/// K_Gamma from interior faces of dimension >= min_face_dim.
DualComplex dual_complex(const Partition& g, int min_face_dim = 0);
/// Restriction to a face of the ambient polytope.
Partition restrict(const Partition& g, std::size_t delta_face);
/// A lattice map of the ambients carrying the pieces onto the pieces.
std::optional<AffineLatticeMap> partitions_equivalent(const Partition& a, const Partition& b);

/// Pieces delta intersected with the maximal cones of a fan (apex at the origin).
Partition partition_by_fan(const LatticePolytope& delta, const Fan& fan);
/// Pieces between consecutive parallel hyperplanes <m, x> = c_1 < ... < c_l.
Partition partition_by_hyperplanes(const LatticePolytope& delta, const IntVector& m,
                                   const std::vector<Integer>& offsets);

}  // namespace toricdegen
