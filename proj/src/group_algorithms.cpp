#include "ptloc/group_algorithms.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "ptloc/report.hpp"

namespace ptloc {

std::int32_t GroupTable::inverse(std::int32_t a) const {
  for (std::int32_t b = 0; b < size(); ++b)
    if (mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == unit) return b;
  throw error("GroupTable: element without inverse");
}

GroupTable GroupTable::from_mul(std::function<std::int32_t(std::int32_t, std::int32_t)> f,
                                std::int32_t n, std::int32_t unit) {
  GroupTable g;
  g.unit = unit;
  g.mul.assign(static_cast<std::size_t>(n), std::vector<std::int32_t>(static_cast<std::size_t>(n)));
  for (std::int32_t i = 0; i < n; ++i)
    for (std::int32_t j = 0; j < n; ++j) g.mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = f(i, j);
  return g;
}

namespace {

std::vector<std::int32_t> closure(const GroupTable& g, std::vector<std::int32_t> seed) {
  std::set<std::int32_t> have(seed.begin(), seed.end());
  have.insert(g.unit);
  std::deque<std::int32_t> work(have.begin(), have.end());
  while (!work.empty()) {
    std::int32_t a = work.front();
    work.pop_front();
    std::int32_t ia = g.inverse(a);
    if (have.insert(ia).second) work.push_back(ia);
    for (std::int32_t b : std::vector<std::int32_t>(have.begin(), have.end()))
      for (std::int32_t c : {g.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)],
                             g.mul[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]})
        if (have.insert(c).second) work.push_back(c);
  }
  return {have.begin(), have.end()};
}

}  // namespace

std::vector<std::vector<std::int32_t>> enumerate_subgroups(const GroupTable& g) {
  std::set<std::vector<std::int32_t>> seen;
  std::deque<std::vector<std::int32_t>> work;
  std::vector<std::int32_t> triv{g.unit};
  seen.insert(triv);
  work.push_back(triv);
  while (!work.empty()) {
    auto base = work.front();
    work.pop_front();
    for (std::int32_t x = 0; x < g.size(); ++x) {
      if (std::binary_search(base.begin(), base.end(), x)) continue;
      auto seed = base;
      seed.push_back(x);
      auto c = closure(g, std::move(seed));
      if (seen.insert(c).second) work.push_back(std::move(c));
    }
  }
  return {seen.begin(), seen.end()};
}

std::int64_t p_part(std::int64_t n, std::int64_t p) {
  std::int64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

std::vector<std::vector<std::int32_t>> sylow_subgroups(const GroupTable& g, std::int64_t p) {
  std::int64_t target = p_part(g.size(), p);
  std::vector<std::vector<std::int32_t>> out;
  for (auto& sub : enumerate_subgroups(g))
    if (static_cast<std::int64_t>(sub.size()) == target) out.push_back(sub);
  return out;
}

std::vector<std::int32_t> core_p(const GroupTable& g, std::int64_t p) {
  auto sylows = sylow_subgroups(g, p);
  if (sylows.empty()) return {g.unit};
  std::vector<std::int32_t> acc = sylows[0];
  for (std::size_t i = 1; i < sylows.size(); ++i) {
    std::vector<std::int32_t> next;
    std::set_intersection(acc.begin(), acc.end(), sylows[i].begin(), sylows[i].end(),
                          std::back_inserter(next));
    acc = std::move(next);
  }
  return acc;
}

std::vector<std::int32_t> centralizer_in(const GroupTable& g, const std::vector<std::int32_t>& sub) {
  std::vector<std::int32_t> out;
  for (std::int32_t x = 0; x < g.size(); ++x) {
    bool ok = true;
    for (std::int32_t a : sub)
      if (g.mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)] !=
          g.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)]) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

bool has_characteristic_p(const GroupTable& g, std::int64_t p) {
  auto op = core_p(g, p);
  auto c = centralizer_in(g, op);
  return std::includes(op.begin(), op.end(), c.begin(), c.end());
}

}  // namespace ptloc
