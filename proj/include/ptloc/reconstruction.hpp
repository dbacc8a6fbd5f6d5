#ifndef PTLOC_RECONSTRUCTION_HPP
#define PTLOC_RECONSTRUCTION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptloc/fusion.hpp"
#include "ptloc/locality.hpp"
#include "ptloc/report.hpp"
#include "ptloc/transporter.hpp"

namespace ptloc {

// Bullet data on the object set: an idempotent fusion-invariant closure
// with a functorial action on morphisms (A.14/A.15).  The identity bullet
// is the default and is what finite examples use.
struct BulletData {
  std::vector<std::int32_t> object_image;  // per object index
  std::vector<std::int32_t> mor_image;     // per morphism id

  static BulletData identity(const TransporterSystem& t);
};

Report validate_bullet(const TransporterSystem& t, const FusionSystem& f, const BulletData& b);

// phi ↑ phi2: phi2 extends phi (the inclusion square commutes in T)
bool extends(const TransporterSystem& t, std::int32_t phi, std::int32_t phi2);

// the unique ↑-maximal extension (A.17(c)); throws when uniqueness fails
std::int32_t up_maximal(const TransporterSystem& t, std::int32_t phi);

struct IsoClass {
  std::vector<std::int32_t> members;  // morphism ids
  std::int32_t maximal = -1;
  std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> by_pair;
};

// ≡-classes of Iso(T) via union-find over the ↑ edge set; verifies the
// A.18 invariants and throws on hard violations.
std::vector<IsoClass> equivalence_classes(const TransporterSystem& t);

// The locality L' = Iso(T)/≡ with the chain domain and composite product.
class ReconstructedLocality : public PartialGroupBase {
public:
  ReconstructedLocality(const TransporterSystem& t, BulletData bullet);

  const TransporterSystem& transporter() const { return t_; }
  const std::vector<IsoClass>& classes() const { return classes_; }
  std::int32_t class_of_mor(std::int32_t mor_id) const;
  std::int32_t embed_s(std::int32_t x) const;  // class of (x) eps_S
  const std::vector<Subgroup>& delta() const { return t_.objects(); }

  std::int32_t size() const override { return static_cast<std::int32_t>(classes_.size()); }
  std::int32_t unit() const override { return unit_; }
  std::int32_t inverse(std::int32_t h) const override;
  bool in_domain(std::span<const std::int32_t> w) const override;
  std::int32_t product(std::span<const std::int32_t> w) const override;
  std::string handle_name(std::int32_t h) const override;

  // all chain start objects for a word (for chain-independence checks)
  std::vector<std::int32_t> chain_starts(std::span<const std::int32_t> w) const;
  std::int32_t product_via(std::span<const std::int32_t> w, std::int32_t start_obj) const;

private:
  TransporterSystem t_;  // owned copy; the class must outlive any borrow
  BulletData bullet_;
  std::vector<IsoClass> classes_;
  std::vector<std::int32_t> class_of_;   // per morphism id (-1 for non-isos)
  std::vector<std::int32_t> inverse_;    // per class
  std::int32_t unit_ = -1;
  std::map<std::int32_t, std::int32_t> s_embed_;  // S element index -> class
};

// A.16/A.17/A.18/A.19/A.20 instance checks on Iso(T).
Report check_up_poset(const TransporterSystem& t);
Report check_classes(const TransporterSystem& t, const ReconstructedLocality& lp,
                     const BulletData& b);
Report check_a20_squares(const TransporterSystem& t);

// A.21/A.22: S_f computed through the partial group agrees with rho.
Report check_s_g_via_classes(const ReconstructedLocality& lp);

// Theorem A.24: Phi(g) = [(g, S_g, S_{g^-1})] is an isomorphism of partial
// groups restricting to the identity on S.
Report roundtrip_phi(const Locality& loc, const TransporterSystem& t,
                     const ReconstructedLocality& lp, std::int32_t max_len);

// Orbit category O = O^c(F) with Mor(P,Q) = Hom_F(P,Q)/Inn(Q), the center
// functor Z and the projection sigma: T -> O.
struct OrbitCategory {
  std::vector<Subgroup> objects;
  // per (p,q): classes of hom maps; each map is the image vector on the
  // sorted elements of P
  std::map<std::pair<std::int32_t, std::int32_t>,
           std::vector<std::vector<std::vector<std::int32_t>>>>
      classes;

  std::int32_t class_index(std::int32_t p, std::int32_t q,
                           const std::vector<std::int32_t>& map) const;
};
OrbitCategory orbit_category(const FusionSystem& f, const std::vector<Subgroup>& delta);
Report check_orbit_category(const FusionSystem& f, const OrbitCategory& o);
Report check_sigma_functor(const TransporterSystem& t, const OrbitCategory& o);

// the contravariant center functor on O
struct ZFunctorData {
  std::vector<std::vector<std::int32_t>> centers;  // per object: Z(P) element indices
  // per (p,q,class): the map Z(Q) -> Z(P) as the image vector on Z(Q)
  std::map<std::tuple<std::int32_t, std::int32_t, std::int32_t>, std::vector<std::int32_t>> maps;
};
ZFunctorData z_functor(const FusionSystem& f, const OrbitCategory& o);
Report check_z_functor(const FusionSystem& f, const OrbitCategory& o, const ZFunctorData& z);

// Backtracking search for a partial-group isomorphism L -> L2 fixing the
// given object handle sets; the object lists must correspond indexwise.
struct IsoSearchResult {
  Status status = Status::Fail;
  std::vector<std::int32_t> mapping;  // per handle of L, when found
};
IsoSearchResult locality_isomorphism_search(const PartialGroupBase& a, const PartialGroupBase& b,
                                            const std::vector<std::vector<std::int32_t>>& objects_a,
                                            const std::vector<std::vector<std::int32_t>>& objects_b,
                                            std::int64_t budget);

}  // namespace ptloc

#endif
