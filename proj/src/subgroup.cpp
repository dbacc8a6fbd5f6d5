#include "ptloc/subgroup.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace ptloc {

namespace {

std::vector<std::int32_t> close_under_group_ops(const DPGroup& g, std::vector<std::int32_t> seed,
                                                std::optional<std::size_t> bound) {
  std::set<std::int32_t> have(seed.begin(), seed.end());
  have.insert(g.unit_index());
  std::deque<std::int32_t> work(have.begin(), have.end());
  while (!work.empty()) {
    std::int32_t a = work.front();
    work.pop_front();
    std::int32_t ia = g.inv(a);
    if (have.insert(ia).second) work.push_back(ia);
    for (std::int32_t b : std::vector<std::int32_t>(have.begin(), have.end())) {
      for (std::int32_t c : {g.mul(a, b), g.mul(b, a)}) {
        if (have.insert(c).second) {
          if (bound && have.size() > *bound)
            throw error("generated subgroup exceeds the configured size bound");
          work.push_back(c);
        }
      }
    }
  }
  return {have.begin(), have.end()};
}

bool contains_all_torus(const DPGroup& g, const std::vector<std::int32_t>& elems) {
  return std::includes(elems.begin(), elems.end(), g.torus_indices().begin(),
                       g.torus_indices().end());
}

}  // namespace

Subgroup::Subgroup(DPGroupPtr owner, std::vector<DPElement> generators, bool full_torus,
                   std::optional<std::size_t> size_bound) {
  owner_ = std::move(owner);
  gens_ = std::move(generators);
  full_torus_ = full_torus || owner_->torus_rank() == 0;
  std::vector<std::int32_t> seed;
  for (const auto& e : gens_) {
    std::int32_t idx = owner_->index_of(e);
    if (idx < 0) throw error("subgroup generator lies beyond the truncation: " + owner_->element_str(e));
    seed.push_back(idx);
  }
  if (full_torus_)
    for (std::int32_t t : owner_->torus_indices()) seed.push_back(t);
  elems_ = close_under_group_ops(*owner_, std::move(seed), size_bound);
  if (full_torus_ && !contains_all_torus(*owner_, elems_))
    throw error("full_torus subgroup does not contain the torus at truncation");
}

Subgroup Subgroup::from_indices(DPGroupPtr owner, std::vector<std::int32_t> elems, bool full_torus) {
  Subgroup s;
  s.owner_ = std::move(owner);
  s.full_torus_ = full_torus || s.owner_->torus_rank() == 0;
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  s.elems_ = std::move(elems);
  for (std::int32_t i : s.elems_) s.gens_.push_back(s.owner_->element(i));
  if (s.full_torus_ && !contains_all_torus(*s.owner_, s.elems_))
    throw error("full_torus subgroup does not contain the torus at truncation");
  return s;
}

Subgroup Subgroup::trivial(DPGroupPtr owner) {
  auto o = owner;
  return from_indices(std::move(owner), {o->unit_index()}, false);
}

Subgroup Subgroup::full(DPGroupPtr owner) {
  auto o = owner;
  std::vector<std::int32_t> all(static_cast<std::size_t>(o->size()));
  for (std::int32_t i = 0; i < o->size(); ++i) all[static_cast<std::size_t>(i)] = i;
  return from_indices(std::move(owner), std::move(all), true);
}

bool Subgroup::contains(std::int32_t idx) const {
  return std::binary_search(elems_.begin(), elems_.end(), idx);
}

bool Subgroup::contains_subgroup(const Subgroup& other) const {
  return std::includes(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end());
}

std::string Subgroup::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) s += ",";
    s += owner_->element_str(owner_->element(elems_[i]));
  }
  s += "}";
  if (full_torus_ && owner_->torus_rank() > 0) s += "+T";
  return s;
}

bool operator==(const Subgroup& a, const Subgroup& b) {
  return a.owner_ == b.owner_ && a.full_torus_ == b.full_torus_ && a.elems_ == b.elems_;
}

bool operator<(const Subgroup& a, const Subgroup& b) {
  if (a.elems_.size() != b.elems_.size()) return a.elems_.size() < b.elems_.size();
  if (a.elems_ != b.elems_) return a.elems_ < b.elems_;
  return a.full_torus_ < b.full_torus_;
}

bool order_pair_less(const OrderPair& a, const OrderPair& b) {
  if (a.rank != b.rank) return a.rank < b.rank;
  return a.index < b.index;
}

std::int32_t rank(const Subgroup& p) {
  return p.full_torus() ? p.group().torus_rank() : 0;
}

Subgroup maximal_torus(const Subgroup& p) {
  if (!p.full_torus() || p.group().torus_rank() == 0) return Subgroup::trivial(p.owner());
  return Subgroup::from_indices(p.owner(), p.group().torus_indices(), true);
}

OrderPair order_pair(const Subgroup& p) {
  OrderPair o;
  o.rank = rank(p);
  std::int64_t torus_part = p.full_torus() ? p.group().torus_size() : 1;
  if (static_cast<std::int64_t>(p.size()) % torus_part != 0)
    throw error("order_pair: torus index is not integral — invalid subgroup encoding");
  o.index = static_cast<std::int64_t>(p.size()) / torus_part;
  return o;
}

bool order_less(const Subgroup& p, const Subgroup& q) {
  return order_pair_less(order_pair(p), order_pair(q));
}

namespace {

// Whether every element of the full torus T centralizes P.  Exact at all
// levels: conjugation by (t,1) sends (s,f) to (s + (I - A_f) t, f), and
// (I - A_f) T is either trivial or infinite, so the condition holds iff
// every finite part occurring in P acts trivially.
bool torus_centralizes(const DPGroup& g, const std::vector<std::int32_t>& elems) {
  for (std::int32_t i : elems)
    if (!g.trivial_action(g.element(i).finite)) return false;
  return true;
}

// T normalizes P: immediate for flagged P (conjugation by T preserves the
// fibers over the finite part), and otherwise needs pointwise fixing by
// the same divisibility argument as above.
bool torus_normalizes(const Subgroup& p) {
  if (p.full_torus()) return true;
  return torus_centralizes(p.group(), p.elems());
}

}  // namespace

Subgroup normalizer(const Subgroup& p, const Subgroup& q) {
  if (!p.same_owner(q)) throw error("normalizer: mismatched owners");
  if (!q.contains_subgroup(p)) throw error("normalizer: P is not contained in Q");
  const DPGroup& g = p.group();
  std::vector<std::int32_t> out;
  for (std::int32_t x : q.elems()) {
    bool ok = true;
    for (std::int32_t a : p.elems())
      if (!p.contains(g.conj(a, x))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  bool flag = q.full_torus() && torus_normalizes(p);
  return Subgroup::from_indices(p.owner(), std::move(out), flag);
}

Subgroup centralizer(const Subgroup& p, const Subgroup& q) {
  if (!p.same_owner(q)) throw error("centralizer: mismatched owners");
  const DPGroup& g = p.group();
  std::vector<std::int32_t> out;
  for (std::int32_t x : q.elems()) {
    bool ok = true;
    for (std::int32_t a : p.elems())
      if (g.mul(x, a) != g.mul(a, x)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  bool flag = q.full_torus() && torus_centralizes(g, p.elems());
  return Subgroup::from_indices(p.owner(), std::move(out), flag);
}

Subgroup center(const Subgroup& p) { return centralizer(p, p); }

TowerResult normalizer_tower(const Subgroup& p, const Subgroup& q, std::int32_t step_bound) {
  if (step_bound < 0) {
    std::int64_t order = static_cast<std::int64_t>(q.size());
    std::int32_t lg = 0;
    std::int64_t v = 1;
    while (v < order) {
      v *= q.group().prime();
      ++lg;
    }
    step_bound = 2 * lg + 4;
  }
  TowerResult r{p, {p}};
  for (std::int32_t step = 0; step < step_bound; ++step) {
    Subgroup next = normalizer(r.tower.back(), q);
    if (next.elems() == r.tower.back().elems()) {
      r.limit = r.tower.back();
      return r;
    }
    r.tower.push_back(std::move(next));
  }
  throw error("normalizer tower failed to stabilize within the step bound (truncation too small?)");
}

Subgroup generated_subgroup(DPGroupPtr owner, std::vector<DPElement> generators, bool full_torus,
                            std::optional<std::size_t> size_bound) {
  return Subgroup(std::move(owner), std::move(generators), full_torus, size_bound);
}

Subgroup conjugate_subgroup(const Subgroup& p, std::int32_t g) {
  const DPGroup& gr = p.group();
  std::vector<std::int32_t> out;
  out.reserve(p.size());
  for (std::int32_t a : p.elems()) out.push_back(gr.conj(a, g));
  // conjugation by a truncated element is a bijection on T_m, so the flag carries over
  return Subgroup::from_indices(p.owner(), std::move(out), p.full_torus());
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  if (!a.same_owner(b)) throw error("intersect: mismatched owners");
  std::vector<std::int32_t> out;
  std::set_intersection(a.elems().begin(), a.elems().end(), b.elems().begin(), b.elems().end(),
                        std::back_inserter(out));
  return Subgroup::from_indices(a.owner(), std::move(out), a.full_torus() && b.full_torus());
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  if (!a.same_owner(b)) throw error("join: mismatched owners");
  std::vector<std::int32_t> seed = a.elems();
  seed.insert(seed.end(), b.elems().begin(), b.elems().end());
  auto elems = close_under_group_ops(a.group(), std::move(seed), std::nullopt);
  return Subgroup::from_indices(a.owner(), std::move(elems), a.full_torus() || b.full_torus());
}

bool is_p_subgroup(const Subgroup& p) {
  std::int64_t n = static_cast<std::int64_t>(p.size());
  std::int64_t q = p.group().prime();
  while (n % q == 0) n /= q;
  return n == 1;
}

std::vector<Subgroup> enumerate_subgroups(const Subgroup& parent) {
  const DPGroup& g = parent.group();
  std::set<std::vector<std::int32_t>> seen;
  std::deque<std::vector<std::int32_t>> work;
  std::vector<std::int32_t> triv{g.unit_index()};
  seen.insert(triv);
  work.push_back(triv);
  while (!work.empty()) {
    auto base = work.front();
    work.pop_front();
    for (std::int32_t x : parent.elems()) {
      if (std::binary_search(base.begin(), base.end(), x)) continue;
      auto seed = base;
      seed.push_back(x);
      auto closure = close_under_group_ops(g, std::move(seed), std::nullopt);
      if (seen.insert(closure).second) work.push_back(std::move(closure));
    }
  }
  std::vector<Subgroup> out;
  for (const auto& elems : seen) {
    bool flag = parent.full_torus() && contains_all_torus(g, elems);
    out.push_back(Subgroup::from_indices(parent.owner(), elems, flag));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool extend_iso(const DPGroup& g, const std::vector<std::int32_t>& a_elems,
                const std::vector<std::int32_t>& b_elems, std::vector<std::int32_t>& img,
                std::size_t pos) {
  std::size_t n = a_elems.size();
  if (pos == n) return true;
  for (std::int32_t candidate : b_elems) {
    bool used = false;
    for (std::size_t i = 0; i < pos; ++i)
      if (img[i] == candidate) {
        used = true;
        break;
      }
    if (used) continue;
    img[pos] = candidate;
    bool ok = true;
    for (std::size_t i = 0; ok && i <= pos; ++i)
      for (std::size_t j = 0; ok && j <= pos; ++j) {
        std::int32_t prod = g.mul(a_elems[i], a_elems[j]);
        auto it = std::find(a_elems.begin(), a_elems.end(), prod);
        std::size_t k = static_cast<std::size_t>(it - a_elems.begin());
        if (k <= pos && g.mul(img[i], img[j]) != img[k]) ok = false;
      }
    if (ok && extend_iso(g, a_elems, b_elems, img, pos + 1)) return true;
  }
  return false;
}

}  // namespace

bool subgroups_isomorphic(const Subgroup& a, const Subgroup& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::int32_t> img(a.size(), -1);
  return extend_iso(a.group(), a.elems(), b.elems(), img, 0);
}

}  // namespace ptloc
