#ifndef PTLOC_CHECKS_HPP
#define PTLOC_CHECKS_HPP

#include "ptloc/fusion.hpp"
#include "ptloc/locality.hpp"
#include "ptloc/report.hpp"

namespace ptloc {

// Full objectivity report: (O1) both ways plus (O2) F-closedness of Delta.
Report check_objectivity(const Locality& loc, const FusionSystem& f, std::int32_t max_len);

// The three properness conditions.  PL1 is exposed separately so that a
// mutated object set can be checked against a fixed fusion system.
Report check_pl1(const FusionSystem& f, const std::vector<Subgroup>& delta);
Report check_pl2(const Locality& loc);
Report check_pl3(const Subgroup& sylow);
Report check_proper(const Locality& loc, const FusionSystem& f, std::int32_t max_len);

// Properness plus virtually p-toral normalizers (Definition A.1).
Report check_compact(const Locality& loc, const FusionSystem& f, std::int32_t max_len);

}  // namespace ptloc

#endif
