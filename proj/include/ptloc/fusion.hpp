#ifndef PTLOC_FUSION_HPP
#define PTLOC_FUSION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptloc/group_algorithms.hpp"
#include "ptloc/locality.hpp"
#include "ptloc/report.hpp"
#include "ptloc/subgroup.hpp"

namespace ptloc {

// An injective homomorphism between subgroups of S, given extensionally.
struct RawMap {
  std::vector<DPElement> domain;
  std::vector<DPElement> image;  // parallel to domain
};

// F-isomorphism between members of the subgroup family:
// image[k] is the ambient index of the image of family[dom].elems()[k].
struct FIso {
  std::int32_t dom = -1;
  std::int32_t cod = -1;
  std::vector<std::int32_t> image;
  friend bool operator==(const FIso&, const FIso&) = default;
  friend bool operator<(const FIso& a, const FIso& b) {
    if (a.dom != b.dom) return a.dom < b.dom;
    if (a.cod != b.cod) return a.cod < b.cod;
    return a.image < b.image;
  }
};

// Fusion system over S, materialized as the full groupoid of
// F-isomorphisms between subgroups of S at the working truncation.
// Closure is computed orbit by orbit (transversal plus vertex group), which
// yields a set closed under composition, inversion and restriction.
class FusionSystem {
public:
  FusionSystem(Subgroup sylow, const std::vector<RawMap>& generators);

  const Subgroup& sylow() const { return sylow_; }
  const std::vector<Subgroup>& family() const { return family_; }
  std::int32_t family_index(const Subgroup& p) const;          // by element set
  std::int32_t family_index(const std::vector<std::int32_t>& elems) const;

  const std::vector<FIso>& isos() const { return isos_; }
  const FIso& iso(std::int32_t id) const { return isos_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::int32_t>& isos_between(std::int32_t dom, std::int32_t cod) const;
  const std::vector<std::int32_t>& isos_from(std::int32_t dom) const;
  std::int32_t find_iso(const FIso& m) const;  // -1 when absent
  bool stored(const FIso& m) const { return find_iso(m) >= 0; }

  std::vector<std::int32_t> orbit(std::int32_t fid) const;      // sorted family indices
  std::vector<std::vector<std::int32_t>> orbit_partition() const;

  std::int32_t inverse_iso(std::int32_t id) const;
  std::optional<std::int32_t> compose_iso(std::int32_t a, std::int32_t b) const;  // a then b
  FIso restrict_iso(const FIso& m, std::int32_t sub_fid) const;  // pre: sub <= dom
  FIso identity_iso(std::int32_t fid) const;
  FIso conjugation_map(std::int32_t fid, std::int32_t x) const;  // c_x on family[fid]
  bool is_inner(const FIso& m) const;                            // equals some c_x, x in S

  std::vector<std::int32_t> aut_ids(std::int32_t fid) const;     // Aut_F(P)
  std::vector<std::int32_t> inn_ids(std::int32_t fid) const;     // Inn(P) inside Aut_F(P)
  std::vector<std::int32_t> aut_s_ids(std::int32_t fid) const;   // Aut_S(P)

  // post-closure deletion for mutation experiments (no re-closure)
  FusionSystem with_iso_removed(std::int32_t id) const;

  std::string iso_str(const FIso& m) const;

private:
  FusionSystem() = default;
  void index_isos();

  Subgroup sylow_;
  std::vector<Subgroup> family_;
  std::map<std::vector<std::int32_t>, std::int32_t> family_by_elems_;
  std::vector<FIso> isos_;
  std::map<FIso, std::int32_t> iso_index_;
  std::vector<std::vector<std::vector<std::int32_t>>> by_pair_;  // [dom][cod] -> iso ids
  std::vector<std::vector<std::int32_t>> by_dom_;
};

FusionSystem fusion_from_locality(const Locality& loc);

// Aut_F(P) with its inner subgroup and the Out quotient as a group table.
struct OutGroup {
  std::int32_t fid = -1;
  std::vector<std::int32_t> aut;        // iso ids, group under composition
  std::vector<std::int32_t> inn;        // subset of aut
  std::vector<std::vector<std::int32_t>> cosets;  // partition of aut, cosets of inn
  GroupTable quotient;                  // Out_F(P) on the cosets
  GroupTable aut_table;
};
OutGroup make_out_group(const FusionSystem& f, std::int32_t fid);

bool is_fully_order_normalized(const FusionSystem& f, std::int32_t fid);
bool is_fully_order_centralized(const FusionSystem& f, std::int32_t fid);

// Definition A.5 conditions (I) and (II), reported with witnesses.
Report check_saturation_I(const FusionSystem& f);
Report check_saturation_II(const FusionSystem& f);

// Condition (III) on an explicit stabilized chain.  Inputs that cannot be
// materialized at the truncation are the caller's signal for inconclusive.
struct SatIIIResult {
  Status status = Status::Pass;
  std::string witness;
};
SatIIIResult check_saturation_III(const FusionSystem& f, const std::vector<Subgroup>& chain,
                                  const std::vector<RawMap>& maps);

// N_phi of Definition A.5(II) for an isomorphism phi: P -> P phi.
Subgroup extension_control(const FusionSystem& f, const FIso& phi);

std::vector<std::int32_t> centrics(const FusionSystem& f);          // family indices
std::vector<std::int32_t> centric_radicals(const FusionSystem& f);

// Closure of the stored iso set under composition, inversion, restriction
// and the presence of all conjugation maps; trips on mutated systems.
Report verify_closure(const FusionSystem& f);

Report check_lemma_A6(const FusionSystem& f);
Report torus_extension_property(const FusionSystem& f);

// (O2): Delta is F-closed (overgroup closure plus invariance under fusion).
Report check_objectivity_o2(const FusionSystem& f, const std::vector<Subgroup>& delta);

}  // namespace ptloc

#endif
