#ifndef PTLOC_BUILDERS_HPP
#define PTLOC_BUILDERS_HPP

#include <cstdint>

#include "ptloc/dpgroup.hpp"
#include "ptloc/subgroup.hpp"

namespace ptloc {
namespace builders {

// Finite groups as rank-0 group specs, labels in cycle notation.
DPGroup::Spec symmetric_group(std::int32_t n, std::int64_t prime);
DPGroup::Spec dihedral8(std::int64_t prime);      // D8 as permutations of a square
DPGroup::Spec quaternion8();                      // Q8 from the usual unit table
DPGroup::Spec alternating4(std::int64_t prime);

// T ⋊ C2 with the inversion action at p = 2 (rank 1).
DPGroup::Spec torus_c2(std::int32_t truncation);

// Standard Sylow subgroups inside the groups above.
Subgroup sylow_d8_in_s4(DPGroupPtr s4);
Subgroup sylow_c3_in_s3(DPGroupPtr s3);
Subgroup sylow_v4_in_a4(DPGroupPtr a4);

// F_S(G)-centric subgroups of S, computed straight from conjugation in the
// ambient group: P with C_S(Q) = Z(Q) for every conjugate Q = P^g inside S.
std::vector<Subgroup> group_centric_delta(DPGroupPtr ambient, const Subgroup& sylow);

}  // namespace builders
}  // namespace ptloc

#endif
