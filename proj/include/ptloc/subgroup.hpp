#ifndef PTLOC_SUBGROUP_HPP
#define PTLOC_SUBGROUP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptloc/dpgroup.hpp"
#include "ptloc/report.hpp"

namespace ptloc {

// A subgroup of a discrete p-toral group, carried as the closure of its
// generators inside the truncation G_m, plus a flag recording whether the
// value stands for a subgroup containing the full torus T.  With the flag
// set the element set is T_m * (finite part) and re-truncating at a higher
// level reproduces the same subgroup; without it the closure is a genuine
// finite subgroup and is exact at every level that can hold it.
class Subgroup {
public:
  Subgroup() = default;  // empty placeholder; any operation on it throws
  Subgroup(DPGroupPtr owner, std::vector<DPElement> generators, bool full_torus,
           std::optional<std::size_t> size_bound = std::nullopt);

  static Subgroup from_indices(DPGroupPtr owner, std::vector<std::int32_t> elems, bool full_torus);
  static Subgroup trivial(DPGroupPtr owner);
  static Subgroup full(DPGroupPtr owner);  // the whole group (full torus flag set)

  const DPGroupPtr& owner() const { return owner_; }
  const DPGroup& group() const { return *owner_; }
  const std::vector<DPElement>& generators() const { return gens_; }
  const std::vector<std::int32_t>& elems() const { return elems_; }
  bool full_torus() const { return full_torus_; }
  std::size_t size() const { return elems_.size(); }

  bool contains(std::int32_t idx) const;
  bool contains_subgroup(const Subgroup& other) const;
  bool same_owner(const Subgroup& other) const { return owner_ == other.owner_; }

  std::string str() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b);
  friend bool operator<(const Subgroup& a, const Subgroup& b);  // canonical order

private:
  DPGroupPtr owner_;
  std::vector<DPElement> gens_;
  std::vector<std::int32_t> elems_;  // sorted indices into the owner materialization
  bool full_torus_ = false;
};

struct OrderPair {
  std::int32_t rank = 0;
  std::int64_t index = 1;  // |P / T(P)|, exact at the truncation
  friend bool operator==(const OrderPair&, const OrderPair&) = default;
};
bool order_pair_less(const OrderPair& a, const OrderPair& b);  // lexicographic

std::int32_t rank(const Subgroup& p);
Subgroup maximal_torus(const Subgroup& p);
OrderPair order_pair(const Subgroup& p);
bool order_less(const Subgroup& p, const Subgroup& q);

Subgroup normalizer(const Subgroup& p, const Subgroup& q);    // N_Q(P), pre P <= Q
Subgroup centralizer(const Subgroup& p, const Subgroup& q);   // C_Q(P)
Subgroup center(const Subgroup& p);

struct TowerResult {
  Subgroup limit;                 // union of the stabilized tower
  std::vector<Subgroup> tower;    // P_0 <= P_1 <= ... up to stabilization
};
// A.4(d)-style normalizer tower in Q starting at P.  Throws if the tower
// fails to stabilize within the step bound (defaults to 2 log_p |Q_m| + 4).
TowerResult normalizer_tower(const Subgroup& p, const Subgroup& q, std::int32_t step_bound = -1);

Subgroup generated_subgroup(DPGroupPtr owner, std::vector<DPElement> generators, bool full_torus,
                            std::optional<std::size_t> size_bound = std::nullopt);

Subgroup conjugate_subgroup(const Subgroup& p, std::int32_t g);  // P^g inside the owner
Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup join(const Subgroup& a, const Subgroup& b);

bool is_p_subgroup(const Subgroup& p);  // truncation order is a p-power

// All subgroups of the materialized parent; each result is flagged as
// torus-containing exactly when it holds every level-m torus element (the
// desk-scale reading of the subgroup lattice of a group with torus).
std::vector<Subgroup> enumerate_subgroups(const Subgroup& parent);

// brute-force isomorphism test between small subgroups (generator images)
bool subgroups_isomorphic(const Subgroup& a, const Subgroup& b);

}  // namespace ptloc

#endif
