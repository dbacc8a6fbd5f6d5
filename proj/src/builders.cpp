#include "ptloc/builders.hpp"

#include <algorithm>
#include <map>

#include "ptloc/report.hpp"

namespace ptloc {
namespace builders {

namespace {

using Perm = std::vector<std::int32_t>;  // image of point i at position i

Perm perm_mul(const Perm& a, const Perm& b) {  // apply a, then b
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = b[static_cast<std::size_t>(a[i])];
  return r;
}

std::string cycle_name(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<std::int32_t>(i)) continue;
    s += "(";
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      s += std::to_string(j + 1);
      j = static_cast<std::size_t>(p[j]);
    }
    s += ")";
  }
  return s.empty() ? "e" : s;
}

DPGroup::Spec spec_from_perms(std::vector<Perm> elems, std::int64_t prime) {
  std::sort(elems.begin(), elems.end());
  std::map<Perm, std::int32_t> idx;
  for (std::size_t i = 0; i < elems.size(); ++i) idx[elems[i]] = static_cast<std::int32_t>(i);
  DPGroup::Spec s;
  s.prime = prime;
  s.torus_rank = 0;
  s.truncation = 1;
  for (const auto& p : elems) s.labels.push_back(cycle_name(p));
  s.table.assign(elems.size(), std::vector<std::int32_t>(elems.size()));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) {
      auto it = idx.find(perm_mul(elems[i], elems[j]));
      if (it == idx.end()) throw error("permutation set is not closed");
      s.table[i][j] = it->second;
    }
  s.action.assign(elems.size(), IntMatrix{});
  return s;
}

std::vector<Perm> all_perms(std::int32_t n) {
  Perm base(static_cast<std::size_t>(n));
  for (std::int32_t i = 0; i < n; ++i) base[static_cast<std::size_t>(i)] = i;
  std::vector<Perm> out;
  std::sort(base.begin(), base.end());
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

bool is_even(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  std::int32_t transpositions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = static_cast<std::size_t>(p[j]);
      ++len;
    }
    transpositions += static_cast<std::int32_t>(len - 1);
  }
  return transpositions % 2 == 0;
}

Perm perm_of_cycles(std::int32_t n, const std::vector<std::vector<std::int32_t>>& cycles) {
  Perm p(static_cast<std::size_t>(n));
  for (std::int32_t i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i)
      p[static_cast<std::size_t>(c[i] - 1)] = c[(i + 1) % c.size()] - 1;
  return p;
}

}  // namespace

DPGroup::Spec symmetric_group(std::int32_t n, std::int64_t prime) {
  return spec_from_perms(all_perms(n), prime);
}

DPGroup::Spec alternating4(std::int64_t prime) {
  std::vector<Perm> evens;
  for (const auto& p : all_perms(4))
    if (is_even(p)) evens.push_back(p);
  return spec_from_perms(evens, prime);
}

DPGroup::Spec dihedral8(std::int64_t prime) {
  // symmetries of the square 1-2-3-4
  Perm r = perm_of_cycles(4, {{1, 2, 3, 4}});
  Perm s = perm_of_cycles(4, {{1, 3}});
  std::vector<Perm> elems;
  Perm x = perm_of_cycles(4, {});
  for (int i = 0; i < 4; ++i) {
    elems.push_back(x);
    elems.push_back(perm_mul(x, s));
    x = perm_mul(x, r);
  }
  return spec_from_perms(elems, prime);
}

DPGroup::Spec quaternion8() {
  // 1,-1,i,-i,j,-j,k,-k encoded 0..7; sign in the low bit
  auto neg = [](std::int32_t a) { return a ^ 1; };
  auto base = [](std::int32_t a) { return a >> 1; };  // 0:1, 1:i, 2:j, 3:k
  // base multiplication: table of (result base, sign) for 1,i,j,k
  static const std::int32_t bm[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const std::int32_t bs[4][4] = {{+1, +1, +1, +1},
                                        {+1, -1, +1, -1},
                                        {+1, -1, -1, +1},
                                        {+1, +1, -1, -1}};
  DPGroup::Spec s;
  s.prime = 2;
  s.torus_rank = 0;
  s.truncation = 1;
  s.labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  s.table.assign(8, std::vector<std::int32_t>(8));
  for (std::int32_t a = 0; a < 8; ++a)
    for (std::int32_t b = 0; b < 8; ++b) {
      std::int32_t rb = bm[base(a)][base(b)] << 1;
      std::int32_t sign = bs[base(a)][base(b)];
      if (a & 1) sign = -sign;
      if (b & 1) sign = -sign;
      s.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = sign > 0 ? rb : neg(rb);
    }
  s.action.assign(8, IntMatrix{});
  return s;
}

DPGroup::Spec torus_c2(std::int32_t truncation) {
  DPGroup::Spec s;
  s.prime = 2;
  s.torus_rank = 1;
  s.truncation = truncation;
  s.labels = {"1", "s"};
  s.table = {{0, 1}, {1, 0}};
  s.action = {IntMatrix{{1}}, IntMatrix{{-1}}};
  return s;
}

namespace {

Subgroup subgroup_from_labels(DPGroupPtr g, const std::vector<std::string>& labels) {
  std::vector<DPElement> gens;
  for (const auto& l : labels) gens.push_back(DPElement{{}, g->label_index(l)});
  return Subgroup(std::move(g), std::move(gens), false);
}

}  // namespace

Subgroup sylow_d8_in_s4(DPGroupPtr s4) {
  return subgroup_from_labels(std::move(s4), {"(1234)", "(13)"});
}

Subgroup sylow_c3_in_s3(DPGroupPtr s3) {
  return subgroup_from_labels(std::move(s3), {"(123)"});
}

Subgroup sylow_v4_in_a4(DPGroupPtr a4) {
  return subgroup_from_labels(std::move(a4), {"(12)(34)", "(13)(24)"});
}

std::vector<Subgroup> group_centric_delta(DPGroupPtr ambient, const Subgroup& sylow) {
  const DPGroup& g = *ambient;
  auto subs = enumerate_subgroups(sylow);
  std::vector<Subgroup> out;
  for (const auto& p : subs) {
    bool centric = true;
    for (std::int32_t x = 0; x < g.size() && centric; ++x) {
      Subgroup q = conjugate_subgroup(p, x);
      if (!sylow.contains_subgroup(q)) continue;
      if (centralizer(q, sylow).elems() != center(q).elems()) centric = false;
    }
    if (centric) out.push_back(p);
  }
  return out;
}

}  // namespace builders
}  // namespace ptloc
