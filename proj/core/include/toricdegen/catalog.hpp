#pragma once

#include "toricdegen/partition.hpp"

namespace toricdegen::catalog {

/// {x >= 0, x_1 + ... + x_n <= d}.
LatticePolytope standard_simplex(std::size_t n, long d);
/// Reflexive simplex of CP^n: conv(e_0, e_0 + (n+1) e_i) with e_0 = (-1, ..., -1).
LatticePolytope projective_space(std::size_t n);
/// Complete fan with rays e_1, e_2 - e_1, ..., e_n - e_{n-1}, -e_n.
Fan flag_fan(std::size_t n);
/// Projective space cut by the flag fan; piece i contains e_i (piece 0 contains e_0).
Partition projective_space_partition(std::size_t n);

/// Reflexive simplex of P(1,1,2,2,2) and its partition by the flag fan.
LatticePolytope weighted_projective_space();
Partition weighted_projective_partition();

/// The three partitions of conv((0,0), (3,0), (0,3)); variant is 'a', 'b' or 'c'.
Partition triangle_partition(char variant);

/// Octagon with vertices (1,1), (3,1), (4,2), (4,3), (3,4), (1,4), (0,3), (0,2), cut along x = 2.
Partition octagon_partition();

/// Degree-d simplex in R^n cut by x_1 + ... + x_k = j for j = 1, ..., d - 1.
Partition chain_partition(std::size_t n, long d, std::size_t k);

/// [0, length] cut at the given integers.
Partition segment_partition(long length, const std::vector<long>& cuts);
/// The real line cut at 0, 1, ..., l.
Partition line_partition(long l);
/// R^n cut by the flag fan.
Partition open_space_partition(std::size_t n);

/// Value -1 on every ray of the normal fan (the canonical class).
SupportFunction canonical_support_function(const LatticePolytope& p);
/// Support function of dH on CP^1 (values 0 at +1 and -d at -1).
SupportFunction projective_line_divisor(long d);

}  // namespace toricdegen::catalog
