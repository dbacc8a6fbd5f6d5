#ifndef PTLOC_GROUP_ALGORITHMS_HPP
#define PTLOC_GROUP_ALGORITHMS_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace ptloc {

// A small concrete group: elements 0..n-1 with a multiplication table.
// Used for normalizers, automorphism groups and other groups that arise
// during checks and need Sylow-style computations.
struct GroupTable {
  std::vector<std::vector<std::int32_t>> mul;
  std::int32_t unit = 0;

  std::int32_t size() const { return static_cast<std::int32_t>(mul.size()); }
  std::int32_t inverse(std::int32_t a) const;

  static GroupTable from_mul(std::function<std::int32_t(std::int32_t, std::int32_t)> f,
                             std::int32_t n, std::int32_t unit);
};

std::vector<std::vector<std::int32_t>> enumerate_subgroups(const GroupTable& g);
std::int64_t p_part(std::int64_t n, std::int64_t p);
std::vector<std::vector<std::int32_t>> sylow_subgroups(const GroupTable& g, std::int64_t p);
std::vector<std::int32_t> core_p(const GroupTable& g, std::int64_t p);  // O_p(G)
std::vector<std::int32_t> centralizer_in(const GroupTable& g, const std::vector<std::int32_t>& sub);
// characteristic p: C_G(O_p(G)) <= O_p(G)
bool has_characteristic_p(const GroupTable& g, std::int64_t p);

}  // namespace ptloc

#endif
