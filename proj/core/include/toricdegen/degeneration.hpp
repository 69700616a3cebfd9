#pragma once

#include "toricdegen/lifting.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace toricdegen {

/// 0 -> N -i-> N + Z -mu-> Z -> 0 and its dual 0 -> Z -j-> M + Z -nu-> M -> 0.
struct LatticeSequence {
  IntMatrix i;   // (n+1) x n
  IntMatrix mu;  // 1 x (n+1)
  IntMatrix j;   // (n+1) x 1
  IntMatrix nu;  // n x (n+1)

  bool is_exact() const;
};

LatticeSequence build_sequences(std::size_t n);

/// Affine piece of the total space at the lift of a vertex q: t = prod x_k^{exponent_k}.
struct LocalChart {
  RatVector vertex;                 // q in delta
  RatVector lifted;                 // its lift
  int face_dim = 0;                 // dimension of the smallest face of delta containing q
  bool delta_vertex = false;
  std::vector<IntVector> edges;     // primitive edges of the lifted polytope at the lift, sorted
  std::vector<Integer> exponents;   // E c = (0, ..., 0, 1)
  std::vector<std::size_t> monomial;  // indices k with a nonzero exponent
  bool edge_sum_holds = false;      // lifted partition edges inside the face sum to (0, ..., 0, 1)
};

struct Component {
  std::size_t piece = 0;
  LatticePolytope polytope;
  bool nonsingular = false;
  std::size_t equivalence_class = 0;
};

struct FanChecks {
  bool subfan = false;        // normal fan of delta sits in the fan of the lift at height 0
  bool upper = false;         // every other cone meets the open upper half-space
  std::optional<bool> support;  // support is the closed upper half-space (open lift of a compact delta)
};

struct DegenerationReport {
  LiftedPolytope lifted;
  Fan fan;
  std::vector<Component> components;
  DualComplex dual_graph;
  std::vector<LocalChart> charts;
  bool weak = false;
  std::vector<RatVector> singular_vertices;
  FanChecks fan_checks;
  std::vector<std::string> warnings;
};

/// One chart per lifted vertex of the partition; singular lifts are skipped with a warning.
std::vector<LocalChart> local_charts(const LiftedPolytope& l, std::vector<std::string>* warnings = nullptr);
/// Charts at the two ends of every lifted edge are related by E_v^{-1} E_w.
bool charts_consistent(const LiftedPolytope& l, const std::vector<LocalChart>& charts);
FanChecks check_fans(const LiftedPolytope& l, const Fan& lifted_fan);

DegenerationReport build_report(const LiftedPolytope& l);

struct FamilyEquations {
  std::size_t anchor = 0;
  std::vector<IntVector> points;                 // lattice points of delta, sorted
  std::vector<Integer> exponents;                // F(m_j) after F = 0 on the anchor piece
  std::vector<std::vector<std::size_t>> supports;  // per piece: indices of its lattice points
  std::vector<std::string> coefficients;         // symbols a_j or seeded rationals
  std::vector<AffineFunction> normalized;        // F per piece after normalization

  /// sum_j coefficient_j * lambda^e_j * x^m_j
  std::string polynomial() const;
};

FamilyEquations family_equations(const LiftedPolytope& l, std::optional<std::size_t> anchor = std::nullopt,
                                 std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace toricdegen
