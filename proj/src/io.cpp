#include "ptloc/io.hpp"

#include <fstream>

namespace ptloc {

json group_spec_to_json(const DPGroup::Spec& s) {
  json j;
  j["prime"] = s.prime;
  j["torus_rank"] = s.torus_rank;
  j["truncation"] = s.truncation;
  j["finite_labels"] = s.labels;
  json table = json::array();
  for (const auto& row : s.table) {
    json r = json::array();
    for (auto v : row) r.push_back(s.labels.at(static_cast<std::size_t>(v)));
    table.push_back(r);
  }
  j["finite_table"] = table;
  if (s.torus_rank > 0) {
    json act = json::object();
    for (std::size_t i = 0; i < s.labels.size(); ++i) act[s.labels[i]] = s.action[i];
    j["action"] = act;
  }
  return j;
}

DPGroup::Spec group_spec_from_json(const json& j) {
  DPGroup::Spec s;
  s.prime = j.at("prime").get<std::int64_t>();
  s.torus_rank = j.value("torus_rank", 0);
  s.truncation = j.value("truncation", 1);
  s.labels = j.at("finite_labels").get<std::vector<std::string>>();
  std::map<std::string, std::int32_t> idx;
  for (std::size_t i = 0; i < s.labels.size(); ++i) idx[s.labels[i]] = static_cast<std::int32_t>(i);
  for (const auto& row : j.at("finite_table")) {
    std::vector<std::int32_t> r;
    for (const auto& cell : row) {
      auto it = idx.find(cell.get<std::string>());
      if (it == idx.end()) throw error("finite_table entry is not a label: " + cell.dump());
      r.push_back(it->second);
    }
    s.table.push_back(std::move(r));
  }
  if (s.torus_rank > 0) {
    const auto& act = j.at("action");
    s.action.resize(s.labels.size());
    for (std::size_t i = 0; i < s.labels.size(); ++i) {
      if (!act.contains(s.labels[i])) throw error("action missing for label " + s.labels[i]);
      s.action[i] = act.at(s.labels[i]).get<IntMatrix>();
    }
  }
  return s;
}

json element_to_json(const DPGroup& g, const DPElement& e) {
  json j;
  if (g.torus_rank() > 0) {
    json t = json::array();
    for (const auto& c : e.torus) t.push_back(coord_str(g.prime(), c));
    j["torus"] = t;
  }
  j["finite"] = g.label(e.finite);
  return j;
}

DPElement element_from_json(const DPGroup& g, const json& j) {
  DPElement e;
  e.finite = g.label_index(j.at("finite").get<std::string>());
  if (g.torus_rank() > 0) {
    if (!j.contains("torus")) throw error("element is missing its torus coordinates");
    for (const auto& c : j.at("torus")) e.torus.push_back(coord_parse(g.prime(), c.get<std::string>()));
    if (static_cast<std::int32_t>(e.torus.size()) != g.torus_rank())
      throw error("element torus coordinates have the wrong rank");
  }
  return e;
}

json subgroup_to_json(const Subgroup& s) {
  json j;
  json elems = json::array();
  for (std::int32_t i : s.elems()) elems.push_back(element_to_json(s.group(), s.group().element(i)));
  j["elements"] = elems;
  if (s.full_torus() && s.group().torus_rank() > 0) j["full_torus"] = true;
  return j;
}

Subgroup subgroup_from_json(DPGroupPtr g, const json& j) {
  std::vector<DPElement> gens;
  bool full_torus = false;
  const json* elems = nullptr;
  if (j.is_array()) {
    elems = &j;
  } else {
    elems = &j.at("elements");
    full_torus = j.value("full_torus", false);
  }
  for (const auto& e : *elems) gens.push_back(element_from_json(*g, e));
  return Subgroup(std::move(g), std::move(gens), full_torus);
}

namespace {

Word word_from_json(const DPGroup& g, const json& j) {
  Word w;
  for (const auto& e : j) {
    std::int32_t idx = g.index_of(element_from_json(g, e));
    if (idx < 0) throw error("domain override element lies beyond the truncation");
    w.push_back(idx);
  }
  return w;
}

json word_to_json(const DPGroup& g, const Word& w) {
  json j = json::array();
  for (std::int32_t h : w) j.push_back(element_to_json(g, g.element(h)));
  return j;
}

}  // namespace

LocalityFile locality_file_from_json(const json& j, std::int32_t truncation_override) {
  LocalityFile f;
  DPGroup::Spec spec = group_spec_from_json(j.at("group"));
  if (truncation_override > 0) spec.truncation = truncation_override;
  f.group = std::make_shared<DPGroup>(std::move(spec));
  f.sylow = subgroup_from_json(f.group, j.at("sylow"));
  for (const auto& d : j.at("delta")) f.delta.push_back(subgroup_from_json(f.group, d));
  if (j.contains("domain")) {
    const auto& dom = j.at("domain");
    for (const auto& w : dom.value("remove", json::array()))
      f.overrides.removed.push_back(word_from_json(*f.group, w));
    for (const auto& w : dom.value("add", json::array()))
      f.overrides.added.push_back(word_from_json(*f.group, w));
  }
  return f;
}

json locality_file_to_json(const DPGroup::Spec& spec, const Subgroup& sylow,
                           const std::vector<Subgroup>& delta, const DomainOverride& overrides) {
  json j;
  j["group"] = group_spec_to_json(spec);
  j["sylow"] = subgroup_to_json(sylow);
  json d = json::array();
  for (const auto& s : delta) d.push_back(subgroup_to_json(s));
  j["delta"] = d;
  if (!overrides.empty()) {
    json dom;
    json rm = json::array(), ad = json::array();
    for (const auto& w : overrides.removed) rm.push_back(word_to_json(sylow.group(), w));
    for (const auto& w : overrides.added) ad.push_back(word_to_json(sylow.group(), w));
    dom["remove"] = rm;
    dom["add"] = ad;
    j["domain"] = dom;
  }
  return j;
}

FusionFile fusion_file_from_json(const json& j, std::int32_t truncation_override) {
  FusionFile f;
  DPGroup::Spec spec = group_spec_from_json(j.at("group"));
  if (truncation_override > 0) spec.truncation = truncation_override;
  f.group = std::make_shared<DPGroup>(std::move(spec));
  f.sylow = subgroup_from_json(f.group, j.at("sylow"));
  for (const auto& gen : j.at("generators")) {
    RawMap m;
    for (const auto& e : gen.at("domain")) m.domain.push_back(element_from_json(*f.group, e));
    for (const auto& e : gen.at("image")) m.image.push_back(element_from_json(*f.group, e));
    f.generators.push_back(std::move(m));
  }
  return f;
}

TransporterFile transporter_file_from_json(const json& j, std::int32_t truncation_override) {
  DPGroup::Spec spec = group_spec_from_json(j.at("group"));
  if (truncation_override > 0) spec.truncation = truncation_override;
  DPGroupPtr g = std::make_shared<DPGroup>(std::move(spec));
  Subgroup sylow = subgroup_from_json(g, j.at("sylow"));
  std::vector<Subgroup> objects;
  for (const auto& d : j.at("objects")) objects.push_back(subgroup_from_json(g, d));

  std::vector<TransporterSystem::Mor> mors;
  for (const auto& m : j.at("morphisms")) {
    TransporterSystem::Mor mm;
    mm.src = m.at("src").get<std::int32_t>();
    mm.dst = m.at("dst").get<std::int32_t>();
    mm.label = m.at("label").get<std::string>();
    for (const auto& e : m.at("rho")) {
      std::int32_t idx = g->index_of(element_from_json(*g, e));
      if (idx < 0) throw error("transporter rho element lies beyond the truncation");
      mm.rho.push_back(idx);
    }
    if (mm.src < 0 || static_cast<std::size_t>(mm.src) >= objects.size() || mm.dst < 0 ||
        static_cast<std::size_t>(mm.dst) >= objects.size())
      throw error("transporter morphism references a missing object");
    if (mm.rho.size() != objects[static_cast<std::size_t>(mm.src)].size())
      throw error("transporter rho has the wrong length");
    mors.push_back(std::move(mm));
  }
  std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> compose;
  for (const auto& c : j.at("compose"))
    compose[{c.at(0).get<std::int32_t>(), c.at(1).get<std::int32_t>()}] = c.at(2).get<std::int32_t>();
  std::map<std::pair<std::int32_t, std::int32_t>, std::map<std::int32_t, std::int32_t>> eps;
  for (const auto& e : j.at("epsilon")) {
    std::map<std::int32_t, std::int32_t> inner;
    for (const auto& pair : e.at("map")) {
      std::int32_t idx = g->index_of(element_from_json(*g, pair.at(0)));
      if (idx < 0) throw error("epsilon element lies beyond the truncation");
      inner[idx] = pair.at(1).get<std::int32_t>();
    }
    eps[{e.at("src").get<std::int32_t>(), e.at("dst").get<std::int32_t>()}] = std::move(inner);
  }
  TransporterFile out{TransporterSystem(g, sylow, std::move(objects), std::move(mors),
                                        std::move(compose), std::move(eps)),
                      std::nullopt};
  if (j.contains("bullet")) {
    BulletData b;
    b.object_image = j.at("bullet").at("objects").get<std::vector<std::int32_t>>();
    b.mor_image = j.at("bullet").at("morphisms").get<std::vector<std::int32_t>>();
    out.bullet = std::move(b);
  }
  return out;
}

json transporter_file_to_json(const TransporterSystem& t) {
  json j;
  const DPGroup& g = *t.owner();
  j["group"] = group_spec_to_json(g.spec());
  j["sylow"] = subgroup_to_json(t.sylow());
  json objs = json::array();
  for (const auto& o : t.objects()) objs.push_back(subgroup_to_json(o));
  j["objects"] = objs;
  json mors = json::array();
  for (std::int32_t i = 0; i < t.mor_count(); ++i) {
    const auto& m = t.mor(i);
    json mj;
    mj["src"] = m.src;
    mj["dst"] = m.dst;
    mj["label"] = m.label;
    json rho = json::array();
    for (std::int32_t e : m.rho) rho.push_back(element_to_json(g, g.element(e)));
    mj["rho"] = rho;
    mors.push_back(mj);
  }
  j["morphisms"] = mors;
  json comp = json::array();
  for (std::int32_t a = 0; a < t.mor_count(); ++a)
    for (std::int32_t b = 0; b < t.mor_count(); ++b) {
      auto c = t.compose(a, b);
      if (c) comp.push_back(json::array({a, b, *c}));
    }
  j["compose"] = comp;
  json eps = json::array();
  for (std::size_t p = 0; p < t.objects().size(); ++p)
    for (std::size_t q = 0; q < t.objects().size(); ++q) {
      json map = json::array();
      for (std::int32_t x : t.transporter_set(static_cast<std::int32_t>(p), static_cast<std::int32_t>(q))) {
        auto mid = t.epsilon(static_cast<std::int32_t>(p), static_cast<std::int32_t>(q), x);
        if (mid) map.push_back(json::array({element_to_json(g, g.element(x)), *mid}));
      }
      if (!map.empty()) {
        json e;
        e["src"] = static_cast<std::int32_t>(p);
        e["dst"] = static_cast<std::int32_t>(q);
        e["map"] = map;
        eps.push_back(e);
      }
    }
  j["epsilon"] = eps;
  return j;
}

json reconstructed_to_locality_json(const ReconstructedLocality& lp) {
  const TransporterSystem& t = lp.transporter();
  std::int32_t n = lp.size();
  // labels: maximal-member labels when globally unique, else indexed
  std::vector<std::string> labels;
  {
    std::map<std::string, int> count;
    for (std::int32_t c = 0; c < n; ++c)
      count[t.mor(lp.classes()[static_cast<std::size_t>(c)].maximal).label]++;
    for (std::int32_t c = 0; c < n; ++c) {
      std::string base = t.mor(lp.classes()[static_cast<std::size_t>(c)].maximal).label;
      labels.push_back(count[base] == 1 ? base : "c" + std::to_string(c) + ":" + base);
    }
  }
  DPGroup::Spec spec;
  spec.prime = t.owner()->prime();
  spec.torus_rank = 0;
  spec.truncation = 1;
  spec.labels = labels;
  spec.table.assign(static_cast<std::size_t>(n), std::vector<std::int32_t>(static_cast<std::size_t>(n)));
  for (std::int32_t a = 0; a < n; ++a)
    for (std::int32_t b = 0; b < n; ++b) {
      Word w{a, b};
      if (!lp.in_domain(w))
        throw error("rebuild: the product is not total on pairs; cannot emit a group table");
      spec.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = lp.product(w);
    }
  spec.action.assign(static_cast<std::size_t>(n), IntMatrix{});

  auto rebuilt = std::make_shared<DPGroup>(spec);
  auto relabel = [&](std::int32_t cls) {
    return rebuilt->index_of(DPElement{{}, cls});
  };
  // sylow and delta carried through the S-identification
  std::vector<std::int32_t> sylow_idx;
  for (std::int32_t x : t.sylow().elems()) sylow_idx.push_back(relabel(lp.embed_s(x)));
  Subgroup sylow = Subgroup::from_indices(rebuilt, sylow_idx, false);
  std::vector<Subgroup> delta;
  for (const auto& obj : t.objects()) {
    std::vector<std::int32_t> idx;
    for (std::int32_t x : obj.elems()) idx.push_back(relabel(lp.embed_s(x)));
    delta.push_back(Subgroup::from_indices(rebuilt, idx, false));
  }
  return locality_file_to_json(spec, sylow, delta, {});
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw error("parse error in " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw error("cannot write " + path);
  out << j.dump(1) << "\n";
}

}  // namespace ptloc
