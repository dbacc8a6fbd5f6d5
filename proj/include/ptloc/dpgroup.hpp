#ifndef PTLOC_DPGROUP_HPP
#define PTLOC_DPGROUP_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ptloc/rational.hpp"

namespace ptloc {

// Element of a split extension T ⋊ F: torus part plus index into the
// finite part's label list.
struct DPElement {
  TorusVector torus;
  std::int32_t finite = 0;
};

bool operator==(const DPElement& a, const DPElement& b);
int dpelement_cmp(const DPElement& a, const DPElement& b);
bool operator<(const DPElement& a, const DPElement& b);

// A discrete p-toral group presented as T ⋊ F with T = (Z/p^inf)^r, F a
// finite group given by a multiplication table, and F acting on torus
// coordinates through integer matrices (invertible mod every p-power).
//
// Arithmetic on elements is exact.  Enumeration happens inside the
// p^m-torsion truncation G_m = T_m ⋊ F, which is a genuine finite
// subgroup: integer matrices never increase coordinate denominators, so
// products and inverses of truncated elements stay truncated.
//
// Immutable after construction; the materialization tables are built once
// and shared, so values are safe to use from several threads.
class DPGroup {
public:
  struct Spec {
    std::int64_t prime = 2;
    std::int32_t torus_rank = 0;
    std::int32_t truncation = 1;
    std::vector<std::string> labels;
    std::vector<std::vector<std::int32_t>> table;  // table[i][j] = index of l_i * l_j
    std::vector<IntMatrix> action;                 // one r x r matrix per label
  };

  explicit DPGroup(Spec spec);

  std::int64_t prime() const { return spec_.prime; }
  std::int32_t torus_rank() const { return spec_.torus_rank; }
  std::int32_t truncation() const { return spec_.truncation; }
  const Spec& spec() const { return spec_; }

  std::int32_t finite_order() const { return static_cast<std::int32_t>(spec_.labels.size()); }
  const std::string& label(std::int32_t i) const { return spec_.labels.at(static_cast<std::size_t>(i)); }
  std::int32_t label_index(const std::string& name) const;
  std::int32_t finite_mul(std::int32_t i, std::int32_t j) const;
  std::int32_t finite_inv(std::int32_t i) const;
  std::int32_t finite_unit() const { return finite_unit_; }
  const IntMatrix& action(std::int32_t i) const { return spec_.action.at(static_cast<std::size_t>(i)); }
  bool trivial_action(std::int32_t i) const;  // A_i == identity

  // exact element arithmetic
  DPElement unit() const;
  DPElement multiply(const DPElement& a, const DPElement& b) const;
  DPElement inverse(const DPElement& a) const;
  DPElement conjugate(const DPElement& a, const DPElement& g) const;  // g^-1 a g
  void validate_element(const DPElement& a) const;
  std::string element_str(const DPElement& a) const;

  // materialization G_m at the working truncation
  std::int32_t size() const { return static_cast<std::int32_t>(elements_.size()); }
  const DPElement& element(std::int32_t idx) const { return elements_.at(static_cast<std::size_t>(idx)); }
  std::int32_t index_of(const DPElement& a) const;  // -1 when beyond truncation
  std::int32_t mul(std::int32_t i, std::int32_t j) const { return mul_table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  std::int32_t inv(std::int32_t i) const { return inv_table_[static_cast<std::size_t>(i)]; }
  std::int32_t conj(std::int32_t a, std::int32_t g) const { return mul(mul(inv(g), a), g); }
  std::int32_t unit_index() const { return unit_index_; }
  // indices of (t, 1) for all t in the p^m-torsion of T, sorted
  const std::vector<std::int32_t>& torus_indices() const { return torus_indices_; }
  std::int64_t torus_size() const { return static_cast<std::int64_t>(torus_indices_.size()); }

  // Same group data re-truncated at level m (for cross-level checks).
  Spec with_truncation(std::int32_t m) const;

private:
  void validate();
  void materialize();

  Spec spec_;
  std::int32_t finite_unit_ = -1;
  std::vector<std::int32_t> finite_inv_;
  std::vector<bool> trivial_action_;
  std::vector<DPElement> elements_;
  std::map<DPElement, std::int32_t> index_;
  std::vector<std::vector<std::int32_t>> mul_table_;
  std::vector<std::int32_t> inv_table_;
  std::int32_t unit_index_ = -1;
  std::vector<std::int32_t> torus_indices_;
};

using DPGroupPtr = std::shared_ptr<const DPGroup>;

}  // namespace ptloc

#endif
