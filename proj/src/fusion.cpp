#include "ptloc/fusion.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace ptloc {

namespace {

std::size_t position_of(const std::vector<std::int32_t>& sorted, std::int32_t v) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
  if (it == sorted.end() || *it != v) throw error("element not found in subgroup");
  return static_cast<std::size_t>(it - sorted.begin());
}

// φ then ψ on the elements of family[dom(φ)]
std::vector<std::int32_t> compose_images(const std::vector<std::int32_t>& mid_elems,
                                         const std::vector<std::int32_t>& phi_image,
                                         const std::vector<std::int32_t>& psi_image) {
  std::vector<std::int32_t> out(phi_image.size());
  for (std::size_t k = 0; k < phi_image.size(); ++k)
    out[k] = psi_image[position_of(mid_elems, phi_image[k])];
  return out;
}

}  // namespace

FusionSystem::FusionSystem(Subgroup sylow, const std::vector<RawMap>& generators)
    : sylow_(std::move(sylow)) {
  const DPGroup& g = sylow_.group();
  family_ = enumerate_subgroups(sylow_);
  for (std::size_t i = 0; i < family_.size(); ++i)
    family_by_elems_[family_[i].elems()] = static_cast<std::int32_t>(i);

  // Normalize the generating maps to (dom fid, cod fid, image) arrows.
  struct Arrow {
    std::int32_t dom, cod;
    std::vector<std::int32_t> image;
  };
  std::vector<Arrow> arrows;
  auto add_arrow = [&](std::int32_t dom, std::vector<std::int32_t> image) {
    std::vector<std::int32_t> img_sorted = image;
    std::sort(img_sorted.begin(), img_sorted.end());
    auto it = family_by_elems_.find(img_sorted);
    if (it == family_by_elems_.end())
      throw error("fusion generator image is not a subgroup of S");
    arrows.push_back(Arrow{dom, it->second, std::move(image)});
  };
  // conjugation maps c_x on S are always generators
  std::int32_t s_fid = family_by_elems_.at(sylow_.elems());
  for (std::int32_t x : sylow_.elems()) {
    std::vector<std::int32_t> image;
    image.reserve(sylow_.size());
    for (std::int32_t a : sylow_.elems()) image.push_back(g.conj(a, x));
    add_arrow(s_fid, std::move(image));
  }
  for (const auto& raw : generators) {
    if (raw.domain.size() != raw.image.size()) throw error("fusion generator: ragged map");
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
    for (std::size_t i = 0; i < raw.domain.size(); ++i) {
      std::int32_t d = g.index_of(raw.domain[i]);
      std::int32_t v = g.index_of(raw.image[i]);
      if (d < 0 || v < 0) throw error("fusion generator: element beyond truncation");
      pairs.emplace_back(d, v);
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<std::int32_t> dom_elems, image;
    for (auto& [d, v] : pairs) {
      dom_elems.push_back(d);
      image.push_back(v);
    }
    auto it = family_by_elems_.find(dom_elems);
    if (it == family_by_elems_.end())
      throw error("fusion generator domain is not a subgroup of S");
    // homomorphism + injectivity check
    const auto& delems = family_[static_cast<std::size_t>(it->second)].elems();
    std::set<std::int32_t> distinct(image.begin(), image.end());
    if (distinct.size() != image.size()) throw error("fusion generator is not injective");
    for (std::size_t i = 0; i < delems.size(); ++i)
      for (std::size_t j = 0; j < delems.size(); ++j) {
        std::int32_t prod = g.mul(delems[i], delems[j]);
        if (g.mul(image[i], image[j]) != image[position_of(delems, prod)])
          throw error("fusion generator is not a homomorphism");
      }
    add_arrow(it->second, std::move(image));
  }

  // Orbit-wise closure: BFS transversal from each unvisited vertex, then the
  // vertex group from Schreier loops, then materialize all isomorphisms.
  std::size_t nf = family_.size();
  std::vector<bool> visited(nf, false);
  std::map<FIso, bool> seen;
  std::vector<FIso> store;

  // arrows applicable from a vertex: generator restrictions
  auto arrows_from = [&](std::int32_t fid) {
    std::vector<std::pair<std::int32_t, std::vector<std::int32_t>>> out;  // (cod fid, image)
    const auto& p = family_[static_cast<std::size_t>(fid)];
    for (const auto& ar : arrows) {
      const auto& dom_sub = family_[static_cast<std::size_t>(ar.dom)];
      if (!dom_sub.contains_subgroup(p)) continue;
      std::vector<std::int32_t> img;
      img.reserve(p.size());
      for (std::int32_t a : p.elems()) img.push_back(ar.image[position_of(dom_sub.elems(), a)]);
      std::vector<std::int32_t> img_sorted = img;
      std::sort(img_sorted.begin(), img_sorted.end());
      auto it = family_by_elems_.find(img_sorted);
      if (it == family_by_elems_.end())
        throw error("fusion closure: image escapes the subgroup family");
      out.emplace_back(it->second, std::move(img));
    }
    return out;
  };

  for (std::size_t start = 0; start < nf; ++start) {
    if (visited[start]) continue;
    std::int32_t root = static_cast<std::int32_t>(start);
    // transversal[v] = iso root -> v
    std::map<std::int32_t, std::vector<std::int32_t>> transversal;
    std::vector<std::int32_t> ident;
    for (std::int32_t a : family_[start].elems()) ident.push_back(a);
    transversal[root] = ident;
    std::deque<std::int32_t> work{root};
    std::vector<std::vector<std::int32_t>> loops;  // vertex-group elements at root (images)
    while (!work.empty()) {
      std::int32_t v = work.front();
      work.pop_front();
      const auto& tv = transversal.at(v);
      for (auto& [w, edge_img] : arrows_from(v)) {
        // root -> v -> w
        std::vector<std::int32_t> tw =
            compose_images(family_[static_cast<std::size_t>(v)].elems(), tv, edge_img);
        auto it = transversal.find(w);
        if (it == transversal.end()) {
          transversal[w] = tw;
          visited[static_cast<std::size_t>(w)] = true;
          work.push_back(w);
        } else {
          // Schreier loop at root: tw followed by transversal[w]^-1
          const auto& t_old = it->second;
          std::vector<std::int32_t> inv(t_old.size());
          // positions: t_old maps root elems -> w elems
          const auto& welems = family_[static_cast<std::size_t>(w)].elems();
          const auto& relems = family_[start].elems();
          std::vector<std::int32_t> back(welems.size());
          for (std::size_t k = 0; k < t_old.size(); ++k)
            back[position_of(welems, t_old[k])] = relems[k];
          loops.push_back(compose_images(welems, tw, back));
          (void)inv;
        }
      }
    }
    visited[start] = true;
    // close the vertex group at root
    std::set<std::vector<std::int32_t>> vg(loops.begin(), loops.end());
    vg.insert(ident);
    bool grew = true;
    const auto& relems = family_[start].elems();
    while (grew) {
      grew = false;
      std::vector<std::vector<std::int32_t>> snap(vg.begin(), vg.end());
      for (const auto& a : snap)
        for (const auto& b : snap) {
          auto c = compose_images(relems, a, b);
          if (vg.insert(c).second) grew = true;
        }
    }
    // materialize all isos of the orbit: t_v^-1 . a . t_w for a in vertex group
    for (auto& [v, tv] : transversal) {
      const auto& velems = family_[static_cast<std::size_t>(v)].elems();
      // inverse of tv as image vector on v's elements
      std::vector<std::int32_t> tvi(velems.size());
      for (std::size_t k = 0; k < tv.size(); ++k) tvi[position_of(velems, tv[k])] = relems[k];
      for (auto& [w, tw] : transversal) {
        for (const auto& a : vg) {
          auto ra = compose_images(relems, tvi, a);       // v -> root -> root
          auto img = compose_images(relems, ra, tw);      // v -> root -> w
          FIso m{v, w, std::move(img)};
          if (!seen.count(m)) {
            seen[m] = true;
            store.push_back(std::move(m));
          }
        }
      }
    }
  }
  std::sort(store.begin(), store.end());
  isos_ = std::move(store);
  index_isos();
}

void FusionSystem::index_isos() {
  iso_index_.clear();
  std::size_t nf = family_.size();
  by_pair_.assign(nf, std::vector<std::vector<std::int32_t>>(nf));
  by_dom_.assign(nf, {});
  for (std::size_t i = 0; i < isos_.size(); ++i) {
    iso_index_[isos_[i]] = static_cast<std::int32_t>(i);
    by_pair_[static_cast<std::size_t>(isos_[i].dom)][static_cast<std::size_t>(isos_[i].cod)]
        .push_back(static_cast<std::int32_t>(i));
    by_dom_[static_cast<std::size_t>(isos_[i].dom)].push_back(static_cast<std::int32_t>(i));
  }
}

std::int32_t FusionSystem::family_index(const Subgroup& p) const {
  return family_index(p.elems());
}

std::int32_t FusionSystem::family_index(const std::vector<std::int32_t>& elems) const {
  auto it = family_by_elems_.find(elems);
  return it == family_by_elems_.end() ? -1 : it->second;
}

const std::vector<std::int32_t>& FusionSystem::isos_between(std::int32_t dom,
                                                            std::int32_t cod) const {
  return by_pair_.at(static_cast<std::size_t>(dom)).at(static_cast<std::size_t>(cod));
}

const std::vector<std::int32_t>& FusionSystem::isos_from(std::int32_t dom) const {
  return by_dom_.at(static_cast<std::size_t>(dom));
}

std::int32_t FusionSystem::find_iso(const FIso& m) const {
  auto it = iso_index_.find(m);
  return it == iso_index_.end() ? -1 : it->second;
}

std::vector<std::int32_t> FusionSystem::orbit(std::int32_t fid) const {
  std::set<std::int32_t> seen{fid};
  std::deque<std::int32_t> work{fid};
  while (!work.empty()) {
    std::int32_t v = work.front();
    work.pop_front();
    for (std::int32_t id : isos_from(v)) {
      std::int32_t w = iso(id).cod;
      if (seen.insert(w).second) work.push_back(w);
    }
    // also follow arrows into v (mutated systems may lack inverses)
    for (std::size_t d = 0; d < family_.size(); ++d)
      for (std::int32_t id : isos_between(static_cast<std::int32_t>(d), v))
        if (seen.insert(iso(id).dom).second) work.push_back(iso(id).dom);
  }
  return {seen.begin(), seen.end()};
}

std::vector<std::vector<std::int32_t>> FusionSystem::orbit_partition() const {
  std::vector<std::vector<std::int32_t>> out;
  std::vector<bool> done(family_.size(), false);
  for (std::size_t i = 0; i < family_.size(); ++i) {
    if (done[i]) continue;
    auto orb = orbit(static_cast<std::int32_t>(i));
    for (std::int32_t v : orb) done[static_cast<std::size_t>(v)] = true;
    out.push_back(std::move(orb));
  }
  return out;
}

std::int32_t FusionSystem::inverse_iso(std::int32_t id) const {
  const FIso& m = iso(id);
  const auto& delems = family_[static_cast<std::size_t>(m.dom)].elems();
  const auto& celems = family_[static_cast<std::size_t>(m.cod)].elems();
  std::vector<std::int32_t> image(celems.size());
  for (std::size_t k = 0; k < delems.size(); ++k)
    image[position_of(celems, m.image[k])] = delems[k];
  return find_iso(FIso{m.cod, m.dom, std::move(image)});
}

std::optional<std::int32_t> FusionSystem::compose_iso(std::int32_t a, std::int32_t b) const {
  const FIso& f = iso(a);
  const FIso& g = iso(b);
  if (f.cod != g.dom) return std::nullopt;
  auto img = compose_images(family_[static_cast<std::size_t>(g.dom)].elems(), f.image, g.image);
  std::int32_t id = find_iso(FIso{f.dom, g.cod, std::move(img)});
  if (id < 0) return std::nullopt;
  return id;
}

FIso FusionSystem::restrict_iso(const FIso& m, std::int32_t sub_fid) const {
  const auto& dom_elems = family_[static_cast<std::size_t>(m.dom)].elems();
  const auto& sub = family_[static_cast<std::size_t>(sub_fid)];
  std::vector<std::int32_t> img;
  img.reserve(sub.size());
  for (std::int32_t a : sub.elems()) img.push_back(m.image[position_of(dom_elems, a)]);
  std::vector<std::int32_t> img_sorted = img;
  std::sort(img_sorted.begin(), img_sorted.end());
  std::int32_t cod = family_index(img_sorted);
  if (cod < 0) throw error("restriction image is not in the family");
  return FIso{sub_fid, cod, std::move(img)};
}

FIso FusionSystem::identity_iso(std::int32_t fid) const {
  return FIso{fid, fid, family_[static_cast<std::size_t>(fid)].elems()};
}

FIso FusionSystem::conjugation_map(std::int32_t fid, std::int32_t x) const {
  const DPGroup& g = sylow_.group();
  const auto& p = family_[static_cast<std::size_t>(fid)];
  std::vector<std::int32_t> img;
  img.reserve(p.size());
  for (std::int32_t a : p.elems()) img.push_back(g.conj(a, x));
  std::vector<std::int32_t> img_sorted = img;
  std::sort(img_sorted.begin(), img_sorted.end());
  std::int32_t cod = family_index(img_sorted);
  if (cod < 0) throw error("conjugation image is not in the family");
  return FIso{fid, cod, std::move(img)};
}

bool FusionSystem::is_inner(const FIso& m) const {
  for (std::int32_t x : sylow_.elems())
    if (conjugation_map(m.dom, x) == m) return true;
  return false;
}

std::vector<std::int32_t> FusionSystem::aut_ids(std::int32_t fid) const {
  return isos_between(fid, fid);
}

std::vector<std::int32_t> FusionSystem::inn_ids(std::int32_t fid) const {
  std::set<std::int32_t> out;
  const auto& p = family_[static_cast<std::size_t>(fid)];
  for (std::int32_t x : p.elems()) {
    std::int32_t id = find_iso(conjugation_map(fid, x));
    if (id >= 0) out.insert(id);
  }
  return {out.begin(), out.end()};
}

std::vector<std::int32_t> FusionSystem::aut_s_ids(std::int32_t fid) const {
  std::set<std::int32_t> out;
  const auto& p = family_[static_cast<std::size_t>(fid)];
  Subgroup ns = normalizer(p, sylow_);
  for (std::int32_t x : ns.elems()) {
    std::int32_t id = find_iso(conjugation_map(fid, x));
    if (id >= 0) out.insert(id);
  }
  return {out.begin(), out.end()};
}

FusionSystem FusionSystem::with_iso_removed(std::int32_t id) const {
  FusionSystem copy = *this;
  copy.isos_.erase(copy.isos_.begin() + id);
  copy.index_isos();
  return copy;
}

std::string FusionSystem::iso_str(const FIso& m) const {
  const DPGroup& g = sylow_.group();
  const auto& delems = family_[static_cast<std::size_t>(m.dom)].elems();
  std::string s = "[";
  for (std::size_t k = 0; k < delems.size(); ++k) {
    if (k) s += ",";
    s += g.element_str(g.element(delems[k])) + "->" + g.element_str(g.element(m.image[k]));
  }
  return s + "]";
}

FusionSystem fusion_from_locality(const Locality& loc) {
  std::vector<RawMap> gens;
  const DPGroup& g = loc.ambient();
  for (std::int32_t h = 0; h < loc.size(); ++h) {
    Subgroup sg = loc.s_g(h);
    RawMap m;
    std::int32_t hi = g.inv(h);
    for (std::int32_t x : sg.elems()) {
      m.domain.push_back(g.element(x));
      std::int32_t w[3] = {hi, x, h};
      m.image.push_back(g.element(loc.product(w)));
    }
    gens.push_back(std::move(m));
  }
  return FusionSystem(loc.sylow(), gens);
}

}  // namespace ptloc
