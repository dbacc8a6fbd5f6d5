#ifndef PTLOC_TRANSPORTER_HPP
#define PTLOC_TRANSPORTER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptloc/fusion.hpp"
#include "ptloc/locality.hpp"
#include "ptloc/report.hpp"
#include "ptloc/subgroup.hpp"

namespace ptloc {

// Transporter system on an object set Delta: a finite category with the
// two functors epsilon (from the S-transporter category) and rho (to the
// fusion system), per Definition A.9.  Morphisms are opaque labels with an
// explicit composition table, so both locality-built systems (labels are
// carrier triples) and file-built ones share one representation.
class TransporterSystem {
public:
  struct Mor {
    std::int32_t src = -1;  // object index
    std::int32_t dst = -1;
    std::string label;
    std::vector<std::int32_t> rho;  // image of the k-th element of objects[src]
  };

  TransporterSystem(DPGroupPtr owner, Subgroup sylow, std::vector<Subgroup> objects,
                    std::vector<Mor> mors,
                    std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> compose,
                    std::map<std::pair<std::int32_t, std::int32_t>,
                             std::map<std::int32_t, std::int32_t>>
                        epsilon);

  static TransporterSystem from_locality(const Locality& loc);

  const DPGroupPtr& owner() const { return owner_; }
  const Subgroup& sylow() const { return sylow_; }
  const std::vector<Subgroup>& objects() const { return objects_; }
  std::int32_t object_index(const std::vector<std::int32_t>& elems) const;
  std::int32_t mor_count() const { return static_cast<std::int32_t>(mors_.size()); }
  const Mor& mor(std::int32_t id) const { return mors_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::int32_t>& mors_between(std::int32_t src, std::int32_t dst) const;

  std::optional<std::int32_t> compose(std::int32_t f, std::int32_t g) const;  // f then g
  std::optional<std::int32_t> epsilon(std::int32_t src, std::int32_t dst, std::int32_t x) const;
  std::int32_t inclusion(std::int32_t src, std::int32_t dst) const;  // iota = (1) epsilon
  std::int32_t identity(std::int32_t obj) const { return inclusion(obj, obj); }

  bool is_iso(std::int32_t id) const;           // rho is onto the target (A.13(c))
  std::optional<std::int32_t> inverse(std::int32_t id) const;
  std::vector<std::int32_t> iso_ids() const;

  // N_S(P,Q) inside the sylow subgroup
  std::vector<std::int32_t> transporter_set(std::int32_t src, std::int32_t dst) const;

  std::string mor_str(std::int32_t id) const;

  // category structure + functoriality of epsilon and rho
  Report check_category() const;
  Report check_axiom_A1_A2() const;
  Report check_axiom_B_C() const;
  Report check_axiom_I_II() const;
  // (III) on an explicit increasing chain of object indices with morphisms
  // psi_i: P_i -> S subject to psi_i = iota * psi_{i+1}
  struct AxiomIIIResult {
    Status status = Status::Pass;
    std::string witness;
  };
  AxiomIIIResult check_axiom_III(const std::vector<std::int32_t>& chain,
                                 const std::vector<std::int32_t>& psis) const;
  Report check_axiom_III_auto() const;  // all nested object chains, extensions searched

  Report check_linking(const FusionSystem& f) const;

  std::int32_t restrict_morphism(std::int32_t id, std::int32_t src0, std::int32_t dst0) const;
  std::pair<std::int32_t, std::int32_t> factor_morphism(std::int32_t id) const;  // (iso, inclusion)

  // mutation helper: drop an object and every morphism touching it
  TransporterSystem without_object(std::int32_t obj) const;
  // mutation helpers for axiom trips
  TransporterSystem with_duplicated_morphism(std::int32_t id) const;
  TransporterSystem with_rho_overridden(std::int32_t id, std::vector<std::int32_t> rho) const;

private:
  void index();

  DPGroupPtr owner_;
  Subgroup sylow_;
  std::vector<Subgroup> objects_;
  std::vector<Mor> mors_;
  std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> compose_;
  std::map<std::pair<std::int32_t, std::int32_t>, std::map<std::int32_t, std::int32_t>> epsilon_;
  std::vector<std::vector<std::vector<std::int32_t>>> by_pair_;
};

}  // namespace ptloc

#endif
