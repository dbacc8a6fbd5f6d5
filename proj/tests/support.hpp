#ifndef PTLOC_TESTS_SUPPORT_HPP
#define PTLOC_TESTS_SUPPORT_HPP

// Test-only brute-force oracles.  Everything here works straight off raw
// permutation arithmetic or multiplication tables, independent of the
// library's subgroup/fusion machinery, so expected values frozen in the
// tests are computed on a second path.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ptloc/builders.hpp"
#include "ptloc/dpgroup.hpp"

namespace oracle {

using Table = std::vector<std::vector<int>>;

inline int table_unit(const Table& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    bool unit = true;
    for (std::size_t j = 0; j < t.size(); ++j)
      if (t[i][j] != static_cast<int>(j) || t[j][i] != static_cast<int>(j)) unit = false;
    if (unit) return static_cast<int>(i);
  }
  return -1;
}

inline int table_inv(const Table& t, int a) {
  int e = table_unit(t);
  for (std::size_t b = 0; b < t.size(); ++b)
    if (t[static_cast<std::size_t>(a)][b] == e) return static_cast<int>(b);
  return -1;
}

inline int table_conj(const Table& t, int a, int g) {
  return t[static_cast<std::size_t>(t[static_cast<std::size_t>(table_inv(t, g))][static_cast<std::size_t>(a)])]
          [static_cast<std::size_t>(g)];
}

inline std::vector<int> close_set(const Table& t, std::vector<int> seed) {
  std::set<int> have(seed.begin(), seed.end());
  have.insert(table_unit(t));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> snap(have.begin(), have.end());
    for (int a : snap) {
      if (have.insert(table_inv(t, a)).second) grew = true;
      for (int b : snap)
        if (have.insert(t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]).second)
          grew = true;
    }
  }
  return {have.begin(), have.end()};
}

inline std::vector<std::vector<int>> all_subgroups(const Table& t,
                                                   const std::vector<int>& parent) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> work{close_set(t, {})};
  seen.insert(work[0]);
  while (!work.empty()) {
    auto base = work.back();
    work.pop_back();
    for (int x : parent) {
      auto seed = base;
      seed.push_back(x);
      auto c = close_set(t, seed);
      if (seen.insert(c).second) work.push_back(c);
    }
  }
  return {seen.begin(), seen.end()};
}

inline std::vector<int> normalizer_of(const Table& t, const std::vector<int>& sub,
                                      const std::vector<int>& in) {
  std::vector<int> out;
  for (int g : in) {
    std::set<int> conj;
    for (int a : sub) conj.insert(table_conj(t, a, g));
    if (std::vector<int>(conj.begin(), conj.end()) == sub) out.push_back(g);
  }
  return out;
}

inline std::vector<int> centralizer_of(const Table& t, const std::vector<int>& sub,
                                       const std::vector<int>& in) {
  std::vector<int> out;
  for (int g : in) {
    bool ok = true;
    for (int a : sub)
      if (t[static_cast<std::size_t>(g)][static_cast<std::size_t>(a)] !=
          t[static_cast<std::size_t>(a)][static_cast<std::size_t>(g)])
        ok = false;
    if (ok) out.push_back(g);
  }
  return out;
}

// All distinct conjugation maps sub -> target realized by elements of the
// full table group: the fusion oracle for F_S(G).
inline std::set<std::vector<int>> conjugation_maps(const Table& t, const std::vector<int>& sub,
                                                   const std::vector<int>& target) {
  std::set<std::vector<int>> maps;
  for (std::size_t g = 0; g < t.size(); ++g) {
    std::vector<int> img;
    bool ok = true;
    for (int a : sub) {
      int c = table_conj(t, a, static_cast<int>(g));
      if (!std::binary_search(target.begin(), target.end(), c)) {
        ok = false;
        break;
      }
      img.push_back(c);
    }
    if (ok) maps.insert(img);
  }
  return maps;
}

inline oracle::Table table_of(const ptloc::DPGroup& g) {
  Table t(static_cast<std::size_t>(g.size()), std::vector<int>(static_cast<std::size_t>(g.size())));
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g.mul(i, j);
  return t;
}

}  // namespace oracle

#endif
