#include "ptloc/transporter.hpp"

#include <algorithm>
#include <set>

namespace ptloc {

namespace {

std::size_t pos_in(const std::vector<std::int32_t>& sorted, std::int32_t v) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  if (it == sorted.end() || *it != v) throw error("transporter: element not in object");
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

TransporterSystem::TransporterSystem(
    DPGroupPtr owner, Subgroup sylow, std::vector<Subgroup> objects, std::vector<Mor> mors,
    std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> compose,
    std::map<std::pair<std::int32_t, std::int32_t>, std::map<std::int32_t, std::int32_t>> epsilon)
    : owner_(std::move(owner)),
      sylow_(std::move(sylow)),
      objects_(std::move(objects)),
      mors_(std::move(mors)),
      compose_(std::move(compose)),
      epsilon_(std::move(epsilon)) {
  index();
}

void TransporterSystem::index() {
  by_pair_.assign(objects_.size(),
                  std::vector<std::vector<std::int32_t>>(objects_.size()));
  for (std::size_t i = 0; i < mors_.size(); ++i)
    by_pair_[static_cast<std::size_t>(mors_[i].src)][static_cast<std::size_t>(mors_[i].dst)]
        .push_back(static_cast<std::int32_t>(i));
}

TransporterSystem TransporterSystem::from_locality(const Locality& loc) {
  std::vector<Subgroup> objects = loc.delta();
  std::sort(objects.begin(), objects.end());
  const DPGroup& g = loc.ambient();

  std::vector<Mor> mors;
  // N_L(P,Q) = {g : P <= S_g and P^g <= Q}, morphisms as triples (g,P,Q)
  std::vector<Subgroup> sg_cache;
  for (std::int32_t h = 0; h < loc.size(); ++h) sg_cache.push_back(loc.s_g(h));
  for (std::size_t p = 0; p < objects.size(); ++p)
    for (std::size_t q = 0; q < objects.size(); ++q)
      for (std::int32_t h = 0; h < loc.size(); ++h) {
        if (!sg_cache[static_cast<std::size_t>(h)].contains_subgroup(objects[p])) continue;
        Subgroup image = loc.conjugate_by(h, objects[p]);
        if (!objects[q].contains_subgroup(image)) continue;
        Mor m;
        m.src = static_cast<std::int32_t>(p);
        m.dst = static_cast<std::int32_t>(q);
        m.label = g.element_str(g.element(h));
        std::int32_t hi = g.inv(h);
        for (std::int32_t x : objects[p].elems()) {
          Word w{hi, x, h};
          m.rho.push_back(loc.product(w));
        }
        mors.push_back(std::move(m));
      }
  // composition by triple arithmetic: (g,P,Q)(h,Q,R) = (gh,P,R)
  std::map<std::string, std::int32_t> by_key;
  auto key = [](std::int32_t src, std::int32_t dst, const std::string& label) {
    return std::to_string(src) + "|" + std::to_string(dst) + "|" + label;
  };
  for (std::size_t i = 0; i < mors.size(); ++i)
    by_key[key(mors[i].src, mors[i].dst, mors[i].label)] = static_cast<std::int32_t>(i);
  auto handle_of = [&](const std::string& label) {
    for (std::int32_t h = 0; h < g.size(); ++h)
      if (g.element_str(g.element(h)) == label) return h;
    throw error("transporter: unknown label " + label);
  };
  std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> compose;
  for (std::size_t a = 0; a < mors.size(); ++a)
    for (std::size_t b = 0; b < mors.size(); ++b) {
      if (mors[a].dst != mors[b].src) continue;
      std::int32_t gh = g.mul(handle_of(mors[a].label), handle_of(mors[b].label));
      auto it = by_key.find(key(mors[a].src, mors[b].dst, g.element_str(g.element(gh))));
      if (it == by_key.end())
        throw error("transporter: composite (g,P,Q)(h,Q,R) escapes the morphism set");
      compose[{static_cast<std::int32_t>(a), static_cast<std::int32_t>(b)}] = it->second;
    }
  // epsilon: N_S(P,Q) -> Mor(P,Q), x -> (x,P,Q)
  std::map<std::pair<std::int32_t, std::int32_t>, std::map<std::int32_t, std::int32_t>> eps;
  for (std::size_t p = 0; p < objects.size(); ++p)
    for (std::size_t q = 0; q < objects.size(); ++q) {
      std::map<std::int32_t, std::int32_t> m;
      for (std::int32_t x : loc.sylow().elems()) {
        Subgroup image = conjugate_subgroup(objects[p], x);
        if (!objects[q].contains_subgroup(image)) continue;
        auto it = by_key.find(key(static_cast<std::int32_t>(p), static_cast<std::int32_t>(q),
                                  g.element_str(g.element(x))));
        if (it == by_key.end()) throw error("transporter: epsilon image missing");
        m[x] = it->second;
      }
      if (!m.empty()) eps[{static_cast<std::int32_t>(p), static_cast<std::int32_t>(q)}] = std::move(m);
    }
  return TransporterSystem(loc.ambient_ptr(), loc.sylow(), std::move(objects), std::move(mors),
                           std::move(compose), std::move(eps));
}

std::int32_t TransporterSystem::object_index(const std::vector<std::int32_t>& elems) const {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i].elems() == elems) return static_cast<std::int32_t>(i);
  return -1;
}

const std::vector<std::int32_t>& TransporterSystem::mors_between(std::int32_t src,
                                                                 std::int32_t dst) const {
  return by_pair_.at(static_cast<std::size_t>(src)).at(static_cast<std::size_t>(dst));
}

std::optional<std::int32_t> TransporterSystem::compose(std::int32_t f, std::int32_t g) const {
  auto it = compose_.find({f, g});
  if (it == compose_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::int32_t> TransporterSystem::epsilon(std::int32_t src, std::int32_t dst,
                                                       std::int32_t x) const {
  auto it = epsilon_.find({src, dst});
  if (it == epsilon_.end()) return std::nullopt;
  auto jt = it->second.find(x);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

std::int32_t TransporterSystem::inclusion(std::int32_t src, std::int32_t dst) const {
  auto m = epsilon(src, dst, owner_->unit_index());
  if (!m) throw error("transporter: missing inclusion morphism");
  return *m;
}

bool TransporterSystem::is_iso(std::int32_t id) const {
  const Mor& m = mor(id);
  std::vector<std::int32_t> img = m.rho;
  std::sort(img.begin(), img.end());
  return img == objects_[static_cast<std::size_t>(m.dst)].elems();
}

std::optional<std::int32_t> TransporterSystem::inverse(std::int32_t id) const {
  const Mor& m = mor(id);
  std::int32_t ip = identity(m.src);
  std::int32_t iq = identity(m.dst);
  for (std::int32_t cand : mors_between(m.dst, m.src)) {
    auto a = compose(id, cand);
    auto b = compose(cand, id);
    if (a && *a == ip && b && *b == iq) return cand;
  }
  return std::nullopt;
}

std::vector<std::int32_t> TransporterSystem::iso_ids() const {
  std::vector<std::int32_t> out;
  for (std::int32_t i = 0; i < mor_count(); ++i)
    if (is_iso(i)) out.push_back(i);
  return out;
}

std::vector<std::int32_t> TransporterSystem::transporter_set(std::int32_t src,
                                                             std::int32_t dst) const {
  std::vector<std::int32_t> out;
  for (std::int32_t x : sylow_.elems()) {
    Subgroup image = conjugate_subgroup(objects_[static_cast<std::size_t>(src)], x);
    if (objects_[static_cast<std::size_t>(dst)].contains_subgroup(image)) out.push_back(x);
  }
  return out;
}

std::string TransporterSystem::mor_str(std::int32_t id) const {
  const Mor& m = mor(id);
  return "(" + m.label + ": " + objects_[static_cast<std::size_t>(m.src)].str() + " -> " +
         objects_[static_cast<std::size_t>(m.dst)].str() + ")";
}

Report TransporterSystem::check_category() const {
  Report rep;
  rep.title = "category laws";
  bool ident_ok = true, assoc_ok = true, eps_ok = true, rho_ok = true;
  std::string ident_w, assoc_w, eps_w, rho_w;
  for (std::int32_t i = 0; i < mor_count() && ident_ok; ++i) {
    auto a = compose(identity(mor(i).src), i);
    auto b = compose(i, identity(mor(i).dst));
    if (!a || *a != i || !b || *b != i) {
      ident_ok = false;
      ident_w = mor_str(i);
    }
  }
  for (std::int32_t a = 0; a < mor_count() && assoc_ok; ++a)
    for (std::int32_t b : by_pair_[static_cast<std::size_t>(mor(a).dst)]
                                  [static_cast<std::size_t>(mor(a).dst)]) {
      (void)b;
      break;
    }
  // associativity over all composable triples
  for (std::int32_t a = 0; a < mor_count() && assoc_ok; ++a)
    for (std::int32_t b = 0; b < mor_count() && assoc_ok; ++b) {
      if (mor(a).dst != mor(b).src) continue;
      auto ab = compose(a, b);
      if (!ab) {
        assoc_ok = false;
        assoc_w = "missing composite " + mor_str(a) + " then " + mor_str(b);
        break;
      }
      for (std::int32_t c = 0; c < mor_count() && assoc_ok; ++c) {
        if (mor(b).dst != mor(c).src) continue;
        auto bc = compose(b, c);
        auto left = compose(*ab, c);
        auto right = bc ? compose(a, *bc) : std::nullopt;
        if (!bc || !left || !right || *left != *right) {
          assoc_ok = false;
          assoc_w = mor_str(a) + "," + mor_str(b) + "," + mor_str(c);
        }
      }
    }
  // epsilon functoriality: eps(x) . eps(y) = eps(xy) whenever defined
  const DPGroup& g = *owner_;
  for (std::size_t p = 0; p < objects_.size() && eps_ok; ++p)
    for (std::size_t q = 0; q < objects_.size() && eps_ok; ++q) {
      auto it = epsilon_.find({static_cast<std::int32_t>(p), static_cast<std::int32_t>(q)});
      if (it == epsilon_.end()) continue;
      for (auto& [x, mx] : it->second) {
        for (std::size_t r = 0; r < objects_.size() && eps_ok; ++r) {
          auto jt = epsilon_.find({static_cast<std::int32_t>(q), static_cast<std::int32_t>(r)});
          if (jt == epsilon_.end()) continue;
          for (auto& [y, my] : jt->second) {
            auto xy = epsilon(static_cast<std::int32_t>(p), static_cast<std::int32_t>(r),
                              g.mul(x, y));
            auto comp = compose(mx, my);
            if (!xy || !comp || *xy != *comp) {
              eps_ok = false;
              eps_w = "epsilon breaks at x=" + g.element_str(g.element(x)) +
                      " y=" + g.element_str(g.element(y));
              break;
            }
          }
        }
      }
    }
  // rho functoriality: rho(f.g) = rho(f) then rho(g)
  for (std::int32_t a = 0; a < mor_count() && rho_ok; ++a)
    for (std::int32_t b = 0; b < mor_count() && rho_ok; ++b) {
      if (mor(a).dst != mor(b).src) continue;
      auto ab = compose(a, b);
      if (!ab) continue;
      const auto& mid = objects_[static_cast<std::size_t>(mor(a).dst)].elems();
      const auto& src = objects_[static_cast<std::size_t>(mor(a).src)].elems();
      for (std::size_t k = 0; k < src.size(); ++k) {
        std::int32_t via = mor(b).rho[pos_in(mid, mor(a).rho[k])];
        if (mor(*ab).rho[k] != via) {
          rho_ok = false;
          rho_w = mor_str(a) + " then " + mor_str(b);
          break;
        }
      }
    }
  auto emit = [&rep](bool ok, const char* name, const std::string& w) {
    if (ok)
      rep.pass(name);
    else
      rep.fail(name, w);
  };
  emit(ident_ok, "identity morphisms", ident_w);
  emit(assoc_ok, "associativity of composition", assoc_w);
  emit(eps_ok, "epsilon is a functor", eps_w);
  emit(rho_ok, "rho is a functor", rho_w);
  return rep;
}

Report TransporterSystem::check_axiom_A1_A2() const {
  Report rep;
  rep.title = "axioms (A1),(A2)";
  // (A1): epsilon is defined exactly on the S-transporter sets and is the
  // identity on objects; rho includes objects into subgroups of S
  bool a1 = true;
  std::string a1_w;
  for (std::size_t p = 0; p < objects_.size() && a1; ++p)
    for (std::size_t q = 0; q < objects_.size() && a1; ++q) {
      auto ns = transporter_set(static_cast<std::int32_t>(p), static_cast<std::int32_t>(q));
      for (std::int32_t x : ns)
        if (!epsilon(static_cast<std::int32_t>(p), static_cast<std::int32_t>(q), x)) {
          a1 = false;
          a1_w = "epsilon undefined on " + owner_->element_str(owner_->element(x));
          break;
        }
      auto it = epsilon_.find({static_cast<std::int32_t>(p), static_cast<std::int32_t>(q)});
      if (it != epsilon_.end())
        for (auto& [x, mid] : it->second) {
          (void)mid;
          if (!std::binary_search(ns.begin(), ns.end(), x)) {
            a1 = false;
            a1_w = "epsilon defined outside N_S(P,Q)";
            break;
          }
        }
    }
  if (a1)
    rep.pass("(A1) epsilon matches the S-transporter category on objects");
  else
    rep.fail("(A1) epsilon matches the S-transporter category on objects", a1_w);

  // (A2): Ker(rho_P) acts freely on the left, rho is the orbit map, and
  // Ker(rho_Q) acts freely on the right
  bool free_ok = true, orbit_ok = true, right_ok = true;
  std::string free_w, orbit_w, right_w;
  for (std::size_t p = 0; p < objects_.size(); ++p) {
    // kernel of rho_P
    std::vector<std::int32_t> ker;
    const auto& pelems = objects_[p].elems();
    for (std::int32_t id : mors_between(static_cast<std::int32_t>(p), static_cast<std::int32_t>(p)))
      if (mor(id).rho == pelems) ker.push_back(id);
    for (std::size_t q = 0; q < objects_.size(); ++q) {
      const auto& ms = mors_between(static_cast<std::int32_t>(p), static_cast<std::int32_t>(q));
      if (ms.empty()) continue;
      // left action; orbits collected per morphism
      std::map<std::int32_t, std::set<std::int32_t>> orbit_of;
      for (std::int32_t m : ms) {
        std::set<std::int32_t> orb;
        for (std::int32_t k : ker) {
          auto km = compose(k, m);
          if (!km) {
            free_ok = false;
            free_w = "kernel action undefined on " + mor_str(m);
            continue;
          }
          if (*km == m && mor(k).rho != pelems) free_ok = false;
          orb.insert(*km);
        }
        if (orb.size() != ker.size()) {
          free_ok = false;
          free_w = "stabilizer in Ker(rho_P) nontrivial at " + mor_str(m);
        }
        orbit_of[m] = std::move(orb);
      }
      // rho is the orbit map: fibers of rho equal orbits
      for (std::int32_t m : ms) {
        std::set<std::int32_t> fiber;
        for (std::int32_t m2 : ms)
          if (mor(m2).rho == mor(m).rho) fiber.insert(m2);
        if (fiber != orbit_of[m]) {
          orbit_ok = false;
          orbit_w = "rho fiber differs from the kernel orbit at " + mor_str(m);
        }
      }
      // right action of Ker(rho_Q)
      std::vector<std::int32_t> kerq;
      const auto& qelems = objects_[q].elems();
      for (std::int32_t id :
           mors_between(static_cast<std::int32_t>(q), static_cast<std::int32_t>(q)))
        if (mor(id).rho == qelems) kerq.push_back(id);
      for (std::int32_t m : ms)
        for (std::int32_t k : kerq) {
          auto mk = compose(m, k);
          if (!mk || (*mk == m && mor(k).rho != qelems)) {
            right_ok = false;
            right_w = mor_str(m);
          }
        }
    }
  }
  auto emit = [&rep](bool ok, const char* name, const std::string& w) {
    if (ok)
      rep.pass(name);
    else
      rep.fail(name, w);
  };
  emit(free_ok, "(A2) Ker(rho_P) acts freely on the left", free_w);
  emit(orbit_ok, "(A2) rho is the orbit map", orbit_w);
  emit(right_ok, "(A2) Ker(rho_Q) acts freely on the right", right_w);
  return rep;
}

Report TransporterSystem::check_axiom_B_C() const {
  Report rep;
  rep.title = "axioms (B),(C)";
  const DPGroup& g = *owner_;
  bool b_inj = true, b_conj = true, c_ok = true;
  std::string b_inj_w, b_conj_w, c_w;
  for (std::size_t p = 0; p < objects_.size(); ++p)
    for (std::size_t q = 0; q < objects_.size(); ++q) {
      auto it = epsilon_.find({static_cast<std::int32_t>(p), static_cast<std::int32_t>(q)});
      if (it == epsilon_.end()) continue;
      std::set<std::int32_t> images;
      for (auto& [x, mid] : it->second) {
        if (!images.insert(mid).second) {
          b_inj = false;
          b_inj_w = "epsilon not injective at " + mor_str(mid);
        }
        // rho(eps(x)) = c_x
        const auto& pelems = objects_[p].elems();
        for (std::size_t k = 0; k < pelems.size(); ++k)
          if (mor(mid).rho[k] != g.conj(pelems[k], x)) {
            b_conj = false;
            b_conj_w = "rho(eps(" + g.element_str(g.element(x)) + ")) != c_x";
          }
      }
    }
  // (C): eps_P(x) . phi = phi . eps_Q((x) rho(phi))
  for (std::int32_t id = 0; id < mor_count() && c_ok; ++id) {
    const Mor& m = mor(id);
    const auto& pelems = objects_[static_cast<std::size_t>(m.src)].elems();
    for (std::size_t k = 0; k < pelems.size(); ++k) {
      auto ex = epsilon(m.src, m.src, pelems[k]);
      auto ey = epsilon(m.dst, m.dst, m.rho[k]);
      if (!ex || !ey) {
        c_ok = false;
        c_w = "epsilon misses an element of P at " + mor_str(id);
        break;
      }
      auto lhs = compose(*ex, id);
      auto rhs = compose(id, *ey);
      if (!lhs || !rhs || *lhs != *rhs) {
        c_ok = false;
        c_w = mor_str(id) + " at x=" + g.element_str(g.element(pelems[k]));
        break;
      }
    }
  }
  auto emit = [&rep](bool ok, const char* name, const std::string& w) {
    if (ok)
      rep.pass(name);
    else
      rep.fail(name, w);
  };
  emit(b_inj, "(B) epsilon is injective", b_inj_w);
  emit(b_conj, "(B) rho of epsilon is conjugation", b_conj_w);
  emit(c_ok, "(C) the naturality square commutes", c_w);
  return rep;
}

Report TransporterSystem::check_axiom_I_II() const {
  Report rep;
  rep.title = "axioms (I),(II)";
  std::int64_t p = owner_->prime();
  // object orbits under T-isomorphisms
  std::vector<std::int32_t> comp(objects_.size(), -1);
  std::int32_t ncomp = 0;
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (comp[i] >= 0) continue;
    std::set<std::size_t> todo{i};
    while (!todo.empty()) {
      std::size_t v = *todo.begin();
      todo.erase(todo.begin());
      if (comp[v] >= 0) continue;
      comp[v] = ncomp;
      for (std::int32_t id : iso_ids()) {
        if (static_cast<std::size_t>(mor(id).src) == v) todo.insert(static_cast<std::size_t>(mor(id).dst));
        if (static_cast<std::size_t>(mor(id).dst) == v) todo.insert(static_cast<std::size_t>(mor(id).src));
      }
    }
    ++ncomp;
  }
  bool i_ok = true;
  std::string i_w;
  for (std::int32_t c = 0; c < ncomp; ++c) {
    bool found = false;
    for (std::size_t v = 0; v < objects_.size(); ++v) {
      if (comp[v] != c) continue;
      std::int64_t aut = static_cast<std::int64_t>(
          mors_between(static_cast<std::int32_t>(v), static_cast<std::int32_t>(v)).size());
      Subgroup ns = normalizer(objects_[v], sylow_);
      std::int64_t eps_img = static_cast<std::int64_t>(ns.size());
      if (aut % eps_img == 0 && (aut / eps_img) % p != 0) {
        found = true;
        break;
      }
    }
    if (!found) {
      i_ok = false;
      for (std::size_t v = 0; v < objects_.size(); ++v)
        if (comp[v] == c) {
          i_w = "no Sylow representative in the class of " + objects_[v].str();
          break;
        }
    }
  }
  if (i_ok)
    rep.pass("(I) each class has a Sylow representative");
  else
    rep.fail("(I) each class has a Sylow representative", i_w);

  // (II): extensions along normal pairs of objects
  bool ii_ok = true;
  std::string ii_w;
  for (std::int32_t phi : iso_ids()) {
    std::int32_t P = mor(phi).src, Q = mor(phi).dst;
    auto phi_inv = inverse(phi);
    if (!phi_inv) {
      ii_ok = false;
      ii_w = "iso without inverse " + mor_str(phi);
      break;
    }
    for (std::size_t pb = 0; pb < objects_.size() && ii_ok; ++pb) {
      // P normal in Pbar
      if (!objects_[pb].contains_subgroup(objects_[static_cast<std::size_t>(P)])) continue;
      bool pnormal = true;
      for (std::int32_t x : objects_[pb].elems())
        if (conjugate_subgroup(objects_[static_cast<std::size_t>(P)], x).elems() !=
            objects_[static_cast<std::size_t>(P)].elems())
          pnormal = false;
      if (!pnormal) continue;
      for (std::size_t qb = 0; qb < objects_.size() && ii_ok; ++qb) {
        if (!objects_[qb].contains_subgroup(objects_[static_cast<std::size_t>(Q)])) continue;
        bool qnormal = true;
        for (std::int32_t x : objects_[qb].elems())
          if (conjugate_subgroup(objects_[static_cast<std::size_t>(Q)], x).elems() !=
              objects_[static_cast<std::size_t>(Q)].elems())
            qnormal = false;
        if (!qnormal) continue;
        // c_phi maps (Pbar) eps_P into (Qbar) eps_Q ?
        bool maps_in = true;
        for (std::int32_t x : objects_[pb].elems()) {
          auto ex = epsilon(P, P, x);
          if (!ex) {
            maps_in = false;
            break;
          }
          auto half = compose(*phi_inv, *ex);
          auto conj = half ? compose(*half, phi) : std::nullopt;
          if (!conj) {
            maps_in = false;
            break;
          }
          bool in_image = false;
          for (std::int32_t y : objects_[qb].elems()) {
            auto ey = epsilon(Q, Q, y);
            if (ey && *ey == *conj) in_image = true;
          }
          if (!in_image) {
            maps_in = false;
            break;
          }
        }
        if (!maps_in) continue;
        // an extension must exist: phibar in Mor(Pbar,Qbar) with
        // iota_{P,Pbar} . phibar = phi . iota_{Q,Qbar}
        std::int32_t ip = inclusion(P, static_cast<std::int32_t>(pb));
        std::int32_t iq = inclusion(Q, static_cast<std::int32_t>(qb));
        auto rhs = compose(phi, iq);
        bool found = false;
        for (std::int32_t cand : mors_between(static_cast<std::int32_t>(pb),
                                              static_cast<std::int32_t>(qb))) {
          auto lhs = compose(ip, cand);
          if (lhs && rhs && *lhs == *rhs) {
            found = true;
            break;
          }
        }
        if (!found) {
          ii_ok = false;
          ii_w = "no extension of " + mor_str(phi) + " to (" + objects_[pb].str() + "," +
                 objects_[qb].str() + ")";
        }
      }
    }
    if (!ii_ok) break;
  }
  if (ii_ok)
    rep.pass("(II) qualifying isomorphisms extend");
  else
    rep.fail("(II) qualifying isomorphisms extend", ii_w);
  return rep;
}

TransporterSystem::AxiomIIIResult TransporterSystem::check_axiom_III(
    const std::vector<std::int32_t>& chain, const std::vector<std::int32_t>& psis) const {
  if (chain.size() != psis.size() || chain.empty())
    throw error("axiom (III): chain and morphism family sizes differ");
  std::int32_t s_obj = object_index(sylow_.elems());
  if (s_obj < 0) return {Status::Inconclusive, "S is not an object"};
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (!objects_[static_cast<std::size_t>(chain[i + 1])].contains_subgroup(
            objects_[static_cast<std::size_t>(chain[i])]))
      throw error("axiom (III): chain is not increasing");
    std::int32_t iota = inclusion(chain[i], chain[i + 1]);
    auto lhs = compose(iota, psis[i + 1]);
    if (!lhs || *lhs != psis[i])
      throw error("axiom (III): morphism family is not inclusion-compatible");
  }
  // stabilized chain: the union is the top member; psi = psis.back() works
  // exactly when every psi_i factors through it, which compatibility gives
  std::int32_t top = chain.back();
  for (std::size_t i = 0; i < chain.size(); ++i) {
    std::int32_t iota = inclusion(chain[i], top);
    auto lhs = compose(iota, psis.back());
    if (!lhs || *lhs != psis[i])
      return {Status::Fail, "no morphism from the union restricting to the family"};
  }
  return {Status::Pass, {}};
}

Report TransporterSystem::check_axiom_III_auto() const {
  Report rep;
  rep.title = "axiom (III)";
  std::int32_t s_obj = object_index(sylow_.elems());
  if (s_obj < 0) {
    rep.inconclusive("stabilized chains admit a union morphism",
                     "S is not an object of the transporter system");
    return rep;
  }
  bool ok = true;
  std::string witness;
  for (std::size_t a = 0; a < objects_.size() && ok; ++a)
    for (std::size_t b = 0; b < objects_.size() && ok; ++b) {
      if (!objects_[b].contains_subgroup(objects_[a])) continue;
      for (std::int32_t psi2 : mors_between(static_cast<std::int32_t>(b), s_obj)) {
        std::int32_t iota = inclusion(static_cast<std::int32_t>(a), static_cast<std::int32_t>(b));
        auto psi1 = compose(iota, psi2);
        if (!psi1) {
          ok = false;
          witness = "restriction missing for " + mor_str(psi2);
          break;
        }
        auto res = check_axiom_III({static_cast<std::int32_t>(a), static_cast<std::int32_t>(b)},
                                   {*psi1, psi2});
        if (res.status == Status::Fail) {
          ok = false;
          witness = res.witness;
          break;
        }
      }
    }
  if (ok)
    rep.pass("stabilized chains admit a union morphism");
  else
    rep.fail("stabilized chains admit a union morphism", witness);
  return rep;
}

Report TransporterSystem::check_linking(const FusionSystem& f) const {
  Report rep;
  rep.title = "linking system";
  rep.merge(check_saturation_I(f));
  rep.merge(check_saturation_II(f));

  // (2): every F-centric P with O_p(Out_F(P)) = 1 is an object
  std::int64_t p = owner_->prime();
  bool two_ok = true;
  std::string two_w;
  for (std::int32_t fid : centrics(f)) {
    OutGroup og = make_out_group(f, fid);
    auto op = core_p(og.quotient, p);
    if (op.size() != 1) continue;
    if (object_index(f.family()[static_cast<std::size_t>(fid)].elems()) < 0) {
      two_ok = false;
      two_w = "qualifying centric " + f.family()[static_cast<std::size_t>(fid)].str() +
              " is not an object";
      break;
    }
  }
  if (two_ok)
    rep.pass("(2) qualifying centrics are objects");
  else
    rep.fail("(2) qualifying centrics are objects", two_w);

  // (3): Ker(rho_P) is discrete p-toral (a p-group at the truncation)
  bool three_ok = true;
  std::string three_w;
  for (std::size_t v = 0; v < objects_.size(); ++v) {
    std::int64_t ker = 0;
    for (std::int32_t id : mors_between(static_cast<std::int32_t>(v), static_cast<std::int32_t>(v)))
      if (mor(id).rho == objects_[v].elems()) ++ker;
    if (p_part(ker, p) != ker) {
      three_ok = false;
      three_w = "Ker(rho_P) has order " + std::to_string(ker) + " at P=" + objects_[v].str();
      break;
    }
  }
  if (three_ok)
    rep.pass("(3) rho kernels are discrete p-toral");
  else
    rep.fail("(3) rho kernels are discrete p-toral", three_w);

  // p-local compact case: Delta = F^c, and then Ker(rho_P) = eps_P(Z(P))
  auto cents = centrics(f);
  bool is_fc = cents.size() == objects_.size();
  for (std::int32_t fid : cents)
    if (object_index(f.family()[static_cast<std::size_t>(fid)].elems()) < 0) is_fc = false;
  rep.info.push_back(std::string("Delta equals F^c: ") + (is_fc ? "yes" : "no"));
  if (is_fc) {
    bool kz_ok = true;
    std::string kz_w;
    for (std::size_t v = 0; v < objects_.size(); ++v) {
      std::set<std::int32_t> ker;
      for (std::int32_t id :
           mors_between(static_cast<std::int32_t>(v), static_cast<std::int32_t>(v)))
        if (mor(id).rho == objects_[v].elems()) ker.insert(id);
      std::set<std::int32_t> zimg;
      Subgroup zp = center(objects_[v]);
      for (std::int32_t z : zp.elems()) {
        auto e = epsilon(static_cast<std::int32_t>(v), static_cast<std::int32_t>(v), z);
        if (e) zimg.insert(*e);
      }
      if (ker != zimg) {
        kz_ok = false;
        kz_w = "Ker(rho_P) != eps_P(Z(P)) at P=" + objects_[v].str();
        break;
      }
    }
    if (kz_ok)
      rep.pass("kernel-center identity Ker(rho_P) = Z(P)");
    else
      rep.fail("kernel-center identity Ker(rho_P) = Z(P)", kz_w);
  }
  return rep;
}

std::int32_t TransporterSystem::restrict_morphism(std::int32_t id, std::int32_t src0,
                                                  std::int32_t dst0) const {
  const Mor& m = mor(id);
  const auto& p0 = objects_[static_cast<std::size_t>(src0)];
  const auto& q0 = objects_[static_cast<std::size_t>(dst0)];
  const auto& pelems = objects_[static_cast<std::size_t>(m.src)].elems();
  // precondition: rho maps P0 into Q0
  for (std::int32_t x : p0.elems())
    if (!q0.contains(m.rho[pos_in(pelems, x)]))
      throw error("restrict: rho image of P0 is not contained in Q0");
  std::int32_t ip = inclusion(src0, m.src);
  std::int32_t iq = inclusion(dst0, m.dst);
  std::int32_t found = -1;
  auto lhs = compose(ip, id);
  for (std::int32_t cand : mors_between(src0, dst0)) {
    auto rhs = compose(cand, iq);
    if (lhs && rhs && *lhs == *rhs) {
      if (found >= 0) throw error("restrict: restriction is not unique");
      found = cand;
    }
  }
  if (found < 0) throw error("restrict: no restriction morphism exists");
  return found;
}

std::pair<std::int32_t, std::int32_t> TransporterSystem::factor_morphism(std::int32_t id) const {
  const Mor& m = mor(id);
  std::vector<std::int32_t> image = m.rho;
  std::sort(image.begin(), image.end());
  std::int32_t q0 = object_index(image);
  if (q0 < 0) throw error("factor: the image of rho is not an object");
  std::int32_t iso = restrict_morphism(id, m.src, q0);
  std::int32_t iota = inclusion(q0, m.dst);
  auto back = compose(iso, iota);
  if (!back || *back != id) throw error("factor: decomposition does not recompose");
  return {iso, iota};
}

TransporterSystem TransporterSystem::without_object(std::int32_t obj) const {
  std::vector<Subgroup> objects;
  std::vector<std::int32_t> omap(objects_.size(), -1);
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (static_cast<std::int32_t>(i) == obj) continue;
    omap[i] = static_cast<std::int32_t>(objects.size());
    objects.push_back(objects_[i]);
  }
  std::vector<Mor> mors;
  std::vector<std::int32_t> mmap(mors_.size(), -1);
  for (std::size_t i = 0; i < mors_.size(); ++i) {
    if (mors_[i].src == obj || mors_[i].dst == obj) continue;
    Mor m = mors_[i];
    m.src = omap[static_cast<std::size_t>(m.src)];
    m.dst = omap[static_cast<std::size_t>(m.dst)];
    mmap[i] = static_cast<std::int32_t>(mors.size());
    mors.push_back(std::move(m));
  }
  std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> compose;
  for (auto& [key, val] : compose_) {
    if (mmap[static_cast<std::size_t>(key.first)] < 0 ||
        mmap[static_cast<std::size_t>(key.second)] < 0 || mmap[static_cast<std::size_t>(val)] < 0)
      continue;
    compose[{mmap[static_cast<std::size_t>(key.first)], mmap[static_cast<std::size_t>(key.second)]}] =
        mmap[static_cast<std::size_t>(val)];
  }
  std::map<std::pair<std::int32_t, std::int32_t>, std::map<std::int32_t, std::int32_t>> eps;
  for (auto& [key, val] : epsilon_) {
    if (key.first == obj || key.second == obj) continue;
    std::map<std::int32_t, std::int32_t> inner;
    for (auto& [x, mid] : val)
      if (mmap[static_cast<std::size_t>(mid)] >= 0) inner[x] = mmap[static_cast<std::size_t>(mid)];
    eps[{omap[static_cast<std::size_t>(key.first)], omap[static_cast<std::size_t>(key.second)]}] =
        std::move(inner);
  }
  return TransporterSystem(owner_, sylow_, std::move(objects), std::move(mors), std::move(compose),
                           std::move(eps));
}

TransporterSystem TransporterSystem::with_duplicated_morphism(std::int32_t id) const {
  TransporterSystem copy = *this;
  Mor dup = copy.mors_[static_cast<std::size_t>(id)];
  dup.label += "'";
  std::int32_t nid = static_cast<std::int32_t>(copy.mors_.size());
  copy.mors_.push_back(dup);
  // the duplicate composes exactly like the original
  std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> extra;
  for (auto& [key, val] : copy.compose_) {
    if (key.first == id) extra[{nid, key.second}] = val;
    if (key.second == id) extra[{key.first, nid}] = val;
  }
  copy.compose_.insert(extra.begin(), extra.end());
  copy.index();
  return copy;
}

TransporterSystem TransporterSystem::with_rho_overridden(std::int32_t id,
                                                         std::vector<std::int32_t> rho) const {
  TransporterSystem copy = *this;
  copy.mors_[static_cast<std::size_t>(id)].rho = std::move(rho);
  copy.index();
  return copy;
}

}  // namespace ptloc
