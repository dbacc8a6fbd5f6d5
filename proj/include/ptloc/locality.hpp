#ifndef PTLOC_LOCALITY_HPP
#define PTLOC_LOCALITY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptloc/group_algorithms.hpp"
#include "ptloc/report.hpp"
#include "ptloc/subgroup.hpp"

namespace ptloc {

using Word = std::vector<std::int32_t>;

// The partial-group surface shared by group-backed localities and the
// locality reconstructed from a transporter system: a finite carrier of
// handles, a unit, an involutory inversion, a decidable word domain and
// the partial product.
class PartialGroupBase {
public:
  virtual ~PartialGroupBase() = default;
  virtual std::int32_t size() const = 0;
  virtual std::int32_t unit() const = 0;
  virtual std::int32_t inverse(std::int32_t h) const = 0;
  virtual bool in_domain(std::span<const std::int32_t> w) const = 0;
  virtual std::int32_t product(std::span<const std::int32_t> w) const = 0;  // throws off-domain
  virtual std::string handle_name(std::int32_t h) const = 0;
};

std::string word_str(const PartialGroupBase& pg, std::span<const std::int32_t> w);

// Explicit domain edits for mutation experiments: exact word matches that
// are forced out of (or into) D ahead of the (O1) chain test.
struct DomainOverride {
  std::vector<Word> removed;
  std::vector<Word> added;
  bool empty() const { return removed.empty() && added.empty(); }
};

// Group-backed locality L_Delta(G): carrier is the materialization of the
// ambient group, words lie in D exactly when a Delta-chain witnesses them
// (O1), and the product is the ambient group product.
class Locality : public PartialGroupBase {
public:
  Locality(DPGroupPtr ambient, Subgroup sylow, std::vector<Subgroup> delta,
           DomainOverride overrides = {});

  const DPGroup& ambient() const { return *ambient_; }
  const DPGroupPtr& ambient_ptr() const { return ambient_; }
  const Subgroup& sylow() const { return sylow_; }
  const std::vector<Subgroup>& delta() const { return delta_; }
  const DomainOverride& overrides() const { return overrides_; }
  std::int32_t delta_index(const Subgroup& p) const;  // by element set; -1 if absent

  std::int32_t size() const override { return ambient_->size(); }
  std::int32_t unit() const override { return ambient_->unit_index(); }
  std::int32_t inverse(std::int32_t h) const override { return ambient_->inv(h); }
  bool in_domain(std::span<const std::int32_t> w) const override;
  std::int32_t product(std::span<const std::int32_t> w) const override;
  std::string handle_name(std::int32_t h) const override;

  // pure (O1) chain test, ignoring overrides; optionally yields a witness chain
  bool chain_exists(std::span<const std::int32_t> w) const;
  std::optional<std::vector<std::int32_t>> chain_witness(std::span<const std::int32_t> w) const;

  Subgroup s_g(std::int32_t g) const;
  Subgroup s_w(std::span<const std::int32_t> w) const;  // the recursion S_w = (S_{g^-1} cap S_v)^{g^-1}
  Subgroup conjugate_by(std::int32_t g, const Subgroup& p) const;  // P^g, pre P <= S_g

  struct LocalNormalizer {
    std::vector<std::int32_t> elems;        // N_L(P) as carrier handles
    std::vector<std::int32_t> centralizer;  // C_L(P) subset
    GroupTable table;                       // product restricted to N_L(P)
  };
  LocalNormalizer normalizer_in(const Subgroup& p) const;  // pre: P in Delta

private:
  DPGroupPtr ambient_;
  Subgroup sylow_;
  std::vector<Subgroup> delta_;
  DomainOverride overrides_;
  // conj_[d][g] = index in delta of (delta_[d])^g, or -1
  std::vector<std::vector<std::int32_t>> conj_;
};

// Definition I.1.1-style axioms, exhaustively over words up to max_len.
Report check_partial_group_axioms(const PartialGroupBase& pg, std::int32_t max_len);

// (O1) both ways: in_domain(w) iff a Delta-chain exists, words up to max_len.
Report check_objectivity_o1(const Locality& loc, std::int32_t max_len);

// Overgroup closure of Delta inside S (the fusion-free half of (O2)).
Report check_delta_overgroup_closed(const Subgroup& sylow, const std::vector<Subgroup>& delta);

struct StratificationPoset {
  std::vector<Subgroup> members;
  std::vector<std::int32_t> dim;  // longest chain below each member
  bool stabilized = false;        // members at word length L equal those at L+1
};
StratificationPoset omega_poset(const Locality& loc, std::int32_t word_len);

// Virtually p-toral classification of a carrier subset at truncation:
// flagged subgroups witness the torus; unflagged ones certify finiteness
// by staying strictly inside the truncation boundary.
enum class VPtoral { TorusWitnessed, Finite, UnstableAtTruncation };
VPtoral classify_vptoral(const Subgroup& n);
VPtoral classify_vptoral_handles(const DPGroup& g, const std::vector<std::int32_t>& handles,
                                 bool torus_flag);

}  // namespace ptloc

#endif
