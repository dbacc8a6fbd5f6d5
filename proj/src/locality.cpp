#include "ptloc/locality.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ptloc {

std::string word_str(const PartialGroupBase& pg, std::span<const std::int32_t> w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += pg.handle_name(w[i]);
  }
  return s + ")";
}

namespace {

bool same_elements(const Subgroup& a, const Subgroup& b) { return a.elems() == b.elems(); }

bool word_equal(std::span<const std::int32_t> a, const Word& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

bool word_listed(std::span<const std::int32_t> w, const std::vector<Word>& list) {
  for (const auto& x : list)
    if (x.size() == w.size() && word_equal(w, x)) return true;
  return false;
}

}  // namespace

Locality::Locality(DPGroupPtr ambient, Subgroup sylow, std::vector<Subgroup> delta,
                   DomainOverride overrides)
    : ambient_(std::move(ambient)),
      sylow_(std::move(sylow)),
      delta_(std::move(delta)),
      overrides_(std::move(overrides)) {
  if (sylow_.owner() != ambient_) throw error("locality: sylow subgroup has a different owner");
  if (!is_p_subgroup(sylow_)) throw error("locality: S is not a p-group");
  if (delta_.empty()) throw error("locality: Delta is empty");
  if (delta_.size() >= 64) throw error("locality: Delta is larger than the desk-scale bound");
  for (const auto& p : delta_) {
    if (p.owner() != ambient_) throw error("locality: Delta member has a different owner");
    if (!sylow_.contains_subgroup(p)) throw error("locality: Delta member is not a subgroup of S");
  }
  std::sort(delta_.begin(), delta_.end());
  Report closed = check_delta_overgroup_closed(sylow_, delta_);
  if (!closed.all_pass()) throw error("locality: Delta not overgroup-closed in S");

  conj_.assign(delta_.size(), std::vector<std::int32_t>(static_cast<std::size_t>(ambient_->size()), -1));
  for (std::size_t d = 0; d < delta_.size(); ++d)
    for (std::int32_t g = 0; g < ambient_->size(); ++g) {
      Subgroup image = conjugate_subgroup(delta_[d], g);
      for (std::size_t e = 0; e < delta_.size(); ++e)
        if (same_elements(image, delta_[e])) {
          conj_[d][static_cast<std::size_t>(g)] = static_cast<std::int32_t>(e);
          break;
        }
    }
}

std::int32_t Locality::delta_index(const Subgroup& p) const {
  for (std::size_t i = 0; i < delta_.size(); ++i)
    if (same_elements(delta_[i], p)) return static_cast<std::int32_t>(i);
  return -1;
}

bool Locality::chain_exists(std::span<const std::int32_t> w) const {
  // backward DP over Delta as a bitmask; Delta is small by construction
  std::uint64_t valid = (delta_.size() >= 64) ? ~0ull : ((1ull << delta_.size()) - 1);
  for (std::size_t i = w.size(); i-- > 0;) {
    std::uint64_t next = 0;
    const auto& col = conj_;
    for (std::size_t d = 0; d < delta_.size(); ++d) {
      std::int32_t e = col[d][static_cast<std::size_t>(w[i])];
      if (e >= 0 && (valid >> e) & 1) next |= 1ull << d;
    }
    valid = next;
    if (!valid) return false;
  }
  return valid != 0;
}

std::optional<std::vector<std::int32_t>> Locality::chain_witness(
    std::span<const std::int32_t> w) const {
  std::size_t n = w.size();
  std::size_t m = delta_.size();
  // valid[i] = set of Delta indices usable as P_i in a chain for the suffix
  std::vector<std::vector<bool>> valid(n + 1, std::vector<bool>(m, false));
  for (std::size_t d = 0; d < m; ++d) valid[n][d] = true;
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t d = 0; d < m; ++d) {
      std::int32_t e = conj_[d][static_cast<std::size_t>(w[i])];
      if (e >= 0 && valid[i + 1][static_cast<std::size_t>(e)]) valid[i][d] = true;
    }
  for (std::size_t d = 0; d < m; ++d)
    if (valid[0][d]) {
      std::vector<std::int32_t> chain;
      std::int32_t cur = static_cast<std::int32_t>(d);
      chain.push_back(cur);
      for (std::size_t i = 0; i < n; ++i) {
        cur = conj_[static_cast<std::size_t>(cur)][static_cast<std::size_t>(w[i])];
        chain.push_back(cur);
      }
      return chain;
    }
  return std::nullopt;
}

bool Locality::in_domain(std::span<const std::int32_t> w) const {
  if (!overrides_.empty()) {
    if (word_listed(w, overrides_.removed)) return false;
    if (word_listed(w, overrides_.added)) return true;
  }
  return chain_exists(w);
}

std::int32_t Locality::product(std::span<const std::int32_t> w) const {
  if (!in_domain(w)) throw error("product undefined: word " + word_str(*this, w) + " is not in D");
  std::int32_t acc = ambient_->unit_index();
  for (std::int32_t h : w) acc = ambient_->mul(acc, h);
  return acc;
}

std::string Locality::handle_name(std::int32_t h) const {
  return ambient_->element_str(ambient_->element(h));
}

Subgroup Locality::s_g(std::int32_t g) const {
  std::vector<std::int32_t> out;
  std::int32_t gi = ambient_->inv(g);
  for (std::int32_t x : sylow_.elems()) {
    std::int32_t w[3] = {gi, x, g};
    if (in_domain(w) && sylow_.contains(product(w))) out.push_back(x);
  }
  Subgroup res = Subgroup::from_indices(
      ambient_, out,
      sylow_.full_torus() &&
          std::includes(out.begin(), out.end(), ambient_->torus_indices().begin(),
                        ambient_->torus_indices().end()));
  // closedness assertion: S_g must form a subgroup of S
  for (std::int32_t a : res.elems())
    for (std::int32_t b : res.elems())
      if (!res.contains(ambient_->mul(a, b)))
        throw error("S_g is not closed under products for g=" + handle_name(g));
  return res;
}

Subgroup Locality::s_w(std::span<const std::int32_t> w) const {
  if (w.empty()) return sylow_;
  std::int32_t g = w[0];
  Subgroup sv = s_w(w.subspan(1));
  Subgroup sgi = s_g(ambient_->inv(g));
  Subgroup meet = intersect(sgi, sv);
  // (S_{g^-1} cap S_v)^{g^-1}: conjugate the meet back through g
  std::vector<std::int32_t> out;
  std::int32_t gi = ambient_->inv(g);
  for (std::int32_t y : meet.elems()) out.push_back(ambient_->conj(y, gi));
  return Subgroup::from_indices(ambient_, out, meet.full_torus());
}

Subgroup Locality::conjugate_by(std::int32_t g, const Subgroup& p) const {
  Subgroup sg = s_g(g);
  if (!sg.contains_subgroup(p))
    throw error("conjugate: P is not contained in S_g for g=" + handle_name(g));
  std::int32_t gi = ambient_->inv(g);
  std::vector<std::int32_t> out;
  for (std::int32_t x : p.elems()) {
    std::int32_t w[3] = {gi, x, g};
    out.push_back(product(w));
  }
  return Subgroup::from_indices(ambient_, out, p.full_torus());
}

Locality::LocalNormalizer Locality::normalizer_in(const Subgroup& p) const {
  if (delta_index(p) < 0) throw error("normalizer_in: P is not in Delta");
  LocalNormalizer res;
  for (std::int32_t g = 0; g < ambient_->size(); ++g) {
    Subgroup sg = s_g(g);
    if (!sg.contains_subgroup(p)) continue;
    Subgroup image = conjugate_by(g, p);
    if (!same_elements(image, p)) continue;
    res.elems.push_back(g);
    bool central = true;
    std::int32_t gi = ambient_->inv(g);
    for (std::int32_t x : p.elems()) {
      std::int32_t w[3] = {gi, x, g};
      if (product(w) != x) {
        central = false;
        break;
      }
    }
    if (central) res.centralizer.push_back(g);
  }
  // N_L(P) must carry a total product
  std::map<std::int32_t, std::int32_t> pos;
  for (std::size_t i = 0; i < res.elems.size(); ++i)
    pos[res.elems[i]] = static_cast<std::int32_t>(i);
  for (std::int32_t a : res.elems)
    for (std::int32_t b : res.elems) {
      std::int32_t w[2] = {a, b};
      if (!in_domain(w) || !pos.count(product(w)))
        throw error("N_L(P) is not a group: product escapes for " + word_str(*this, w));
    }
  res.table = GroupTable::from_mul(
      [&](std::int32_t i, std::int32_t j) {
        std::int32_t w[2] = {res.elems[static_cast<std::size_t>(i)],
                             res.elems[static_cast<std::size_t>(j)]};
        return pos.at(product(w));
      },
      static_cast<std::int32_t>(res.elems.size()), pos.at(unit()));
  return res;
}

namespace {

template <typename Fn>
void for_each_word(std::int32_t carrier, std::int32_t len, Fn&& fn) {
  Word w(static_cast<std::size_t>(len), 0);
  while (true) {
    fn(w);
    std::int32_t pos = len - 1;
    while (pos >= 0 && ++w[static_cast<std::size_t>(pos)] == carrier) {
      w[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

}  // namespace

Report check_partial_group_axioms(const PartialGroupBase& pg, std::int32_t max_len) {
  Report rep;
  rep.title = "partial-group axioms";
  std::int32_t n = pg.size();

  // D contains all length-1 words, and Pi restricted to them is the identity
  bool len1 = true, len1_id = true;
  std::string len1_witness, len1_id_witness;
  for (std::int32_t g = 0; g < n && (len1 || len1_id); ++g) {
    std::int32_t w[1] = {g};
    if (!pg.in_domain(w)) {
      if (len1) len1_witness = pg.handle_name(g);
      len1 = false;
      continue;
    }
    if (pg.product(w) != g) {
      if (len1_id) len1_id_witness = pg.handle_name(g);
      len1_id = false;
    }
  }
  if (len1)
    rep.pass("length-1 words lie in D");
  else
    rep.fail("length-1 words lie in D", "missing (" + len1_witness + ")");
  if (len1_id)
    rep.pass("Pi is the identity on length-1 words");
  else
    rep.fail("Pi is the identity on length-1 words", len1_id_witness);

  {
    Word empty;
    if (pg.in_domain(empty) && pg.product(empty) == pg.unit())
      rep.pass("empty word has product 1");
    else
      rep.fail("empty word has product 1", "Pi(()) != 1 or () not in D");
  }

  // subword closure, splicing and inversion, exhaustively up to max_len
  bool subword_ok = true, splice_ok = true, invert_ok = true, cancel_ok = true;
  std::string subword_w, splice_w, invert_w, cancel_w;
  for (std::int32_t len = 2; len <= max_len; ++len) {
    for_each_word(n, len, [&](const Word& w) {
      if (!pg.in_domain(w)) return;
      // every contiguous factor of a domain word is a domain word
      if (subword_ok) {
        for (std::int32_t i = 0; i < len && subword_ok; ++i)
          for (std::int32_t j = i + 1; j <= len && subword_ok; ++j) {
            std::span<const std::int32_t> sub(w.data() + i, static_cast<std::size_t>(j - i));
            if (!pg.in_domain(sub)) {
              subword_ok = false;
              subword_w = word_str(pg, w) + " with factor " + word_str(pg, sub);
            }
          }
      }
      // splicing: contract any inner segment through Pi
      if (splice_ok) {
        for (std::int32_t i = 0; i < len && splice_ok; ++i)
          for (std::int32_t j = i + 1; j <= len && splice_ok; ++j) {
            std::span<const std::int32_t> seg(w.data() + i, static_cast<std::size_t>(j - i));
            if (!pg.in_domain(seg)) continue;
            Word spliced(w.begin(), w.begin() + i);
            spliced.push_back(pg.product(seg));
            spliced.insert(spliced.end(), w.begin() + j, w.end());
            if (!pg.in_domain(spliced) || pg.product(spliced) != pg.product(w)) {
              splice_ok = false;
              splice_w = word_str(pg, w) + " vs " + word_str(pg, spliced);
            }
          }
      }
    });
  }
  // inversion: w in D implies w^-1 o w in D with product 1
  for (std::int32_t len = 1; len <= max_len; ++len) {
    for_each_word(n, len, [&](const Word& w) {
      if (!invert_ok || !pg.in_domain(w)) return;
      Word wi;
      for (auto it = w.rbegin(); it != w.rend(); ++it) wi.push_back(pg.inverse(*it));
      Word both = wi;
      both.insert(both.end(), w.begin(), w.end());
      if (!pg.in_domain(both) || pg.product(both) != pg.unit()) {
        invert_ok = false;
        invert_w = word_str(pg, w);
      }
    });
  }
  // derived cancellation on length-2 words
  for (std::int32_t a = 0; a < n && cancel_ok; ++a)
    for (std::int32_t x = 0; x < n && cancel_ok; ++x)
      for (std::int32_t y = x + 1; y < n && cancel_ok; ++y) {
        std::int32_t wx[2] = {a, x}, wy[2] = {a, y};
        if (pg.in_domain(wx) && pg.in_domain(wy) && pg.product(wx) == pg.product(wy)) {
          cancel_ok = false;
          cancel_w = pg.handle_name(a) + " with " + pg.handle_name(x) + "," + pg.handle_name(y);
        }
      }

  auto emit = [&rep](bool ok, const char* name, const std::string& w) {
    if (ok)
      rep.pass(name);
    else
      rep.fail(name, w);
  };
  emit(subword_ok, "subword closure", subword_w);
  emit(splice_ok, "splicing associativity", splice_w);
  emit(invert_ok, "inversion law Pi(w^-1 o w) = 1", invert_w);
  emit(cancel_ok, "left cancellation", cancel_w);
  return rep;
}

Report check_objectivity_o1(const Locality& loc, std::int32_t max_len) {
  Report rep;
  rep.title = "objectivity (O1)";
  bool ok = true;
  std::string witness;
  for (std::int32_t len = 1; len <= max_len && ok; ++len) {
    Word w(static_cast<std::size_t>(len), 0);
    std::int32_t n = loc.size();
    while (ok) {
      bool dom = loc.in_domain(w);
      bool chain = loc.chain_exists(w);
      if (dom != chain) {
        ok = false;
        witness = word_str(loc, w) + (dom ? " in D without a Delta-chain" : " has a chain but is not in D");
      }
      std::int32_t pos = len - 1;
      while (pos >= 0 && ++w[static_cast<std::size_t>(pos)] == n) {
        w[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  if (ok)
    rep.pass("w in D iff a Delta-chain exists");
  else
    rep.fail("w in D iff a Delta-chain exists", witness);
  return rep;
}

Report check_delta_overgroup_closed(const Subgroup& sylow, const std::vector<Subgroup>& delta) {
  Report rep;
  rep.title = "Delta overgroup closure";
  bool ok = true;
  std::string witness;
  auto in_delta = [&](const Subgroup& h) {
    for (const auto& d : delta)
      if (d.elems() == h.elems()) return true;
    return false;
  };
  for (const auto& h : enumerate_subgroups(sylow)) {
    bool above = false;
    for (const auto& d : delta)
      if (h.contains_subgroup(d)) {
        above = true;
        break;
      }
    if (above && !in_delta(h)) {
      ok = false;
      witness = h.str() + " contains a Delta member but is missing";
      break;
    }
  }
  if (ok)
    rep.pass("Delta is closed under overgroups in S");
  else
    rep.fail("Delta is closed under overgroups in S", witness);
  return rep;
}

namespace {

std::vector<Subgroup> omega_members(const Locality& loc, std::int32_t word_len) {
  std::set<std::vector<std::int32_t>> seen;
  std::vector<Subgroup> members;
  auto insert = [&](const Subgroup& s) {
    if (seen.insert(s.elems()).second) members.push_back(s);
  };
  insert(loc.sylow());
  for (std::int32_t len = 1; len <= word_len; ++len) {
    Word w(static_cast<std::size_t>(len), 0);
    std::int32_t n = loc.size();
    while (true) {
      insert(loc.s_w(w));
      std::int32_t pos = len - 1;
      while (pos >= 0 && ++w[static_cast<std::size_t>(pos)] == n) {
        w[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  // close under pairwise intersection
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subgroup> snapshot = members;
    for (std::size_t i = 0; i < snapshot.size(); ++i)
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        Subgroup meet = intersect(snapshot[i], snapshot[j]);
        if (seen.insert(meet.elems()).second) {
          members.push_back(meet);
          grew = true;
        }
      }
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

StratificationPoset omega_poset(const Locality& loc, std::int32_t word_len) {
  StratificationPoset out;
  out.members = omega_members(loc, word_len);
  auto next = omega_members(loc, word_len + 1);
  out.stabilized = next.size() == out.members.size();
  // dim = longest chain of proper inclusions below each member
  std::size_t n = out.members.size();
  out.dim.assign(n, 0);
  // members are sorted by size, so a single upward pass settles heights
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && out.members[i].size() < out.members[j].size() &&
          out.members[j].contains_subgroup(out.members[i]))
        out.dim[j] = std::max(out.dim[j], out.dim[i] + 1);
  return out;
}

VPtoral classify_vptoral_handles(const DPGroup& g, const std::vector<std::int32_t>& handles,
                                 bool torus_flag) {
  if (torus_flag || g.torus_rank() == 0) return VPtoral::TorusWitnessed;
  // finite is certifiable when the subset stays off the truncation boundary:
  // no element needs the full p^m denominator, so re-truncating higher cannot
  // change the closure
  std::int32_t m = g.truncation();
  for (std::int32_t h : handles)
    for (const auto& c : g.element(h).torus)
      if (c.exp >= m) return VPtoral::UnstableAtTruncation;
  return VPtoral::Finite;
}

VPtoral classify_vptoral(const Subgroup& n) {
  return classify_vptoral_handles(n.group(), n.elems(), n.full_torus());
}

}  // namespace ptloc
