#pragma once

#include <array>
#include <vector>

#include "sunada/graph.hpp"
#include "sunada/group.hpp"

namespace sunada::fixtures {

// 3x3 matrix over F2, row-major bits.
using F2Matrix = std::array<std::array<int, 3>, 3>;

F2Matrix f2_multiply(const F2Matrix& a, const F2Matrix& b);
bool f2_invertible(const F2Matrix& m);
std::vector<F2Matrix> all_invertible_f2_matrices();

// The degree-14 permutation induced by an invertible matrix on the 7
// nonzero vectors (slots 0..6, vector with bits b encoded as slot b-1)
// followed by the 7 nonzero covectors (slots 7..13), acted on by the
// inverse transpose.
Permutation gl3f2_permutation(const F2Matrix& m);

// GL(3,F2) on points-and-planes of the Fano plane, from two matrix
// generators; order 168.
PermGroup fano_group();

// Duality swap point <-> plane; conjugation by it realizes the
// inverse-transpose outer automorphism.
Permutation fano_duality();

// Semidirect extension of fano_group() by the duality; order 336.
PermGroup fano_extended_group();

// Stabilizer of the point e1 (slot 0) / the plane e1^t (slot 7).
Subgroup fano_point_stabilizer(const PermGroup& G);
Subgroup fano_plane_stabilizer(const PermGroup& G);

PermGroup symmetric_group(int n);
PermGroup trivial_group(int degree);
PermGroup cyclic_group(int n);          // degree n
PermGroup dihedral_group_d4();          // degree 4
PermGroup quaternion_group_q8();        // degree 8, regular action
PermGroup s3_times_s3();                // degree 6

// n-cycle as a voltage graph: one vertex, one loop carrying a generator
// of the cyclic deck group.
VoltageGraph cycle_voltage_graph(int n);

// Two vertices joined by three parallel edges with the given voltages.
VoltageGraph theta_voltage_graph(const PermGroup& deck, const std::vector<Permutation>& voltages);

BaseGraph cycle_graph(int n);
BaseGraph path_graph(int n);

}  // namespace sunada::fixtures
