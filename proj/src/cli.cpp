#include "ptloc/cli.hpp"

#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ptloc/builders.hpp"
#include "ptloc/checks.hpp"
#include "ptloc/io.hpp"

namespace ptloc {

namespace {

int exit_code_for(const std::vector<Report>& reports) {
  bool fail = false, inco = false;
  for (const auto& r : reports) {
    if (r.any_fail()) fail = true;
    if (r.any_inconclusive()) inco = true;
  }
  if (fail) return kExitFail;
  if (inco) return kExitInconclusive;
  return kExitPass;
}

void print_reports(const std::vector<Report>& reports, const RunConfig& cfg, std::ostream& os) {
  for (const auto& r : reports) {
    if (cfg.structured)
      r.print_structured(os);
    else
      r.print_text(os);
  }
}

void check_prime(const RunConfig& cfg, const DPGroup& g) {
  if (cfg.prime != 0 && cfg.prime != g.prime())
    throw error("--prime disagrees with the input file");
}

// A check that throws is a failed check with the exception as its witness,
// not a malformed input; keep the rest of the suite running.
template <typename Fn>
void run_guarded(std::vector<Report>& reports, const char* title, Fn&& fn) {
  try {
    reports.push_back(fn());
  } catch (const error& e) {
    Report rep;
    rep.title = title;
    rep.fail(title, e.what());
    reports.push_back(std::move(rep));
  }
}

std::string subgroup_brief(const Subgroup& s) {
  return s.str();
}

}  // namespace

int cmd_check(const std::string& path, const RunConfig& cfg, std::ostream& os) {
  std::vector<Report> reports;
  try {
    LocalityFile f = locality_file_from_json(load_json_file(path), cfg.truncation);
    check_prime(cfg, *f.group);
    Locality loc(f.group, f.sylow, f.delta, f.overrides);
    FusionSystem fus = fusion_from_locality(loc);
    run_guarded(reports, "partial-group axioms",
                [&] { return check_partial_group_axioms(loc, cfg.max_word_len); });
    run_guarded(reports, "objectivity", [&] {
      return check_objectivity(loc, fus, std::min<std::int32_t>(cfg.max_word_len, 3));
    });
    run_guarded(reports, "PL1", [&] { return check_pl1(fus, loc.delta()); });
    run_guarded(reports, "PL2", [&] { return check_pl2(loc); });
    run_guarded(reports, "PL3", [&] { return check_pl3(loc.sylow()); });
    run_guarded(reports, "compact locality", [&] { return check_compact(loc, fus, 2); });
  } catch (const error& e) {
    os << "error: " << e.what() << "\n";
    return kExitParse;
  }
  print_reports(reports, cfg, os);
  return exit_code_for(reports);
}

int cmd_fusion(const std::string& path, const RunConfig& cfg, std::ostream& os) {
  std::vector<Report> reports;
  try {
    json j = load_json_file(path);
    std::optional<FusionSystem> fus;
    if (j.contains("generators")) {
      FusionFile f = fusion_file_from_json(j, cfg.truncation);
      check_prime(cfg, *f.group);
      fus.emplace(f.sylow, f.generators);
    } else {
      LocalityFile f = locality_file_from_json(j, cfg.truncation);
      check_prime(cfg, *f.group);
      Locality loc(f.group, f.sylow, f.delta, f.overrides);
      fus.emplace(fusion_from_locality(loc));
    }
    const FusionSystem& f = *fus;

    Report structure;
    structure.title = "fusion data";
    for (const auto& orb : f.orbit_partition()) {
      std::string line = "orbit:";
      for (std::int32_t fid : orb)
        line += " " + subgroup_brief(f.family()[static_cast<std::size_t>(fid)]);
      structure.info.push_back(line);
    }
    {
      std::string line = "centric:";
      for (std::int32_t fid : centrics(f))
        line += " " + subgroup_brief(f.family()[static_cast<std::size_t>(fid)]);
      structure.info.push_back(line);
      line = "centric-radical:";
      for (std::int32_t fid : centric_radicals(f))
        line += " " + subgroup_brief(f.family()[static_cast<std::size_t>(fid)]);
      structure.info.push_back(line);
    }
    reports.push_back(std::move(structure));
    reports.push_back(verify_closure(f));
    reports.push_back(check_saturation_I(f));
    reports.push_back(check_saturation_II(f));

    // (III) on the constant chains of orbit representatives plus, with a
    // torus present, on the cyclic tower inside T
    Report three;
    three.title = "saturation (III)";
    const DPGroup& g = f.sylow().group();
    bool ok = true;
    for (const auto& orb : f.orbit_partition()) {
      const Subgroup& p = f.family()[static_cast<std::size_t>(orb[0])];
      RawMap ident;
      for (std::int32_t i : p.elems()) {
        ident.domain.push_back(g.element(i));
        ident.image.push_back(g.element(i));
      }
      auto res = check_saturation_III(f, {p, p}, {ident, ident});
      if (res.status != Status::Pass) {
        three.add({"constant chain at " + subgroup_brief(p), res.status, res.witness});
        ok = false;
      }
    }
    if (g.torus_rank() == 1) {
      std::vector<Subgroup> chain;
      std::vector<RawMap> maps;
      for (std::int32_t k = 1; k <= g.truncation(); ++k) {
        Subgroup ck(f.sylow().owner(), {DPElement{{make_coord(g.prime(), 1, k)}, g.finite_unit()}},
                    false);
        RawMap inv;
        for (std::int32_t i : ck.elems()) {
          inv.domain.push_back(g.element(i));
          inv.image.push_back(g.inverse(g.element(i)));
        }
        chain.push_back(ck);
        maps.push_back(inv);
      }
      auto res = check_saturation_III(f, chain, maps);
      three.add({"cyclic torus tower with inversion", res.status, res.witness});
      if (res.status == Status::Fail) ok = false;
    }
    if (ok && three.items.empty()) three.pass("stabilized chains are F-members");
    reports.push_back(std::move(three));

    if (g.torus_rank() > 0) reports.push_back(torus_extension_property(f));
    reports.push_back(check_lemma_A6(f));
  } catch (const error& e) {
    os << "error: " << e.what() << "\n";
    return kExitParse;
  }
  print_reports(reports, cfg, os);
  return exit_code_for(reports);
}

int cmd_roundtrip(const std::string& path, const RunConfig& cfg, std::ostream& os) {
  std::vector<Report> reports;
  try {
    LocalityFile f = locality_file_from_json(load_json_file(path), cfg.truncation);
    check_prime(cfg, *f.group);
    Locality loc(f.group, f.sylow, f.delta, f.overrides);
    FusionSystem fus = fusion_from_locality(loc);

    // precondition: Delta = F^c
    auto cents = centrics(fus);
    bool is_fc = cents.size() == loc.delta().size();
    for (std::int32_t fid : cents) {
      bool found = false;
      for (const auto& d : loc.delta())
        if (d.elems() == fus.family()[static_cast<std::size_t>(fid)].elems()) found = true;
      if (!found) is_fc = false;
    }
    if (!is_fc) {
      Report pre;
      pre.title = "roundtrip precondition";
      pre.inconclusive("Delta equals F^c", "the object set is not the centric family");
      reports.push_back(std::move(pre));
      print_reports(reports, cfg, os);
      return kExitInconclusive;
    }

    TransporterSystem t = TransporterSystem::from_locality(loc);
    reports.push_back(t.check_category());
    reports.push_back(t.check_axiom_A1_A2());
    reports.push_back(t.check_axiom_B_C());
    reports.push_back(t.check_axiom_I_II());
    reports.push_back(t.check_axiom_III_auto());
    reports.push_back(t.check_linking(fus));

    BulletData b = BulletData::identity(t);
    reports.push_back(validate_bullet(t, fus, b));
    ReconstructedLocality lp(t, b);
    reports.push_back(check_up_poset(t));
    reports.push_back(check_classes(t, lp, b));
    reports.push_back(check_a20_squares(t));
    reports.push_back(check_s_g_via_classes(lp));
    reports.push_back(check_partial_group_axioms(lp, std::min<std::int32_t>(cfg.max_word_len, 3)));
    reports.push_back(roundtrip_phi(loc, t, lp, 3));

    OrbitCategory o = orbit_category(fus, loc.delta());
    reports.push_back(check_orbit_category(fus, o));
    reports.push_back(check_sigma_functor(t, o));
    ZFunctorData z = z_functor(fus, o);
    reports.push_back(check_z_functor(fus, o, z));
  } catch (const error& e) {
    os << "error: " << e.what() << "\n";
    return kExitParse;
  }
  print_reports(reports, cfg, os);
  return exit_code_for(reports);
}

int cmd_rebuild(const std::string& path, const std::string& out_path, const RunConfig& cfg,
                std::ostream& os) {
  std::vector<Report> reports;
  try {
    TransporterFile f = transporter_file_from_json(load_json_file(path), cfg.truncation);
    check_prime(cfg, *f.system.owner());
    const TransporterSystem& t = f.system;
    reports.push_back(t.check_category());
    reports.push_back(t.check_axiom_A1_A2());
    reports.push_back(t.check_axiom_B_C());
    reports.push_back(t.check_axiom_I_II());
    BulletData b = f.bullet ? *f.bullet : BulletData::identity(t);
    // fusion for bullet validation: generated by the rho images
    {
      std::vector<RawMap> gens;
      const DPGroup& g = *t.owner();
      for (std::int32_t id = 0; id < t.mor_count(); ++id) {
        const auto& m = t.mor(id);
        RawMap raw;
        for (std::size_t k = 0; k < m.rho.size(); ++k) {
          raw.domain.push_back(
              g.element(t.objects()[static_cast<std::size_t>(m.src)].elems()[k]));
          raw.image.push_back(g.element(m.rho[k]));
        }
        gens.push_back(std::move(raw));
      }
      FusionSystem fus(t.sylow(), gens);
      reports.push_back(validate_bullet(t, fus, b));
    }
    bool clean = true;
    for (const auto& r : reports)
      if (!r.all_pass()) clean = false;
    if (clean) {
      ReconstructedLocality lp(t, b);
      reports.push_back(check_classes(t, lp, b));
      json out = reconstructed_to_locality_json(lp);
      if (!out_path.empty()) {
        save_json_file(out_path, out);
        Report emitted;
        emitted.title = "rebuild";
        emitted.info.push_back("wrote " + out_path);
        emitted.pass("reconstructed locality emitted");
        reports.push_back(std::move(emitted));
      }
    }
  } catch (const error& e) {
    os << "error: " << e.what() << "\n";
    return kExitParse;
  }
  print_reports(reports, cfg, os);
  return exit_code_for(reports);
}

namespace {

json s4_locality_json() {
  auto g = std::make_shared<DPGroup>(builders::symmetric_group(4, 2));
  Subgroup s = builders::sylow_d8_in_s4(g);
  return locality_file_to_json(g->spec(), s, builders::group_centric_delta(g, s), {});
}

json s3_locality_json() {
  auto g = std::make_shared<DPGroup>(builders::symmetric_group(3, 3));
  Subgroup s = builders::sylow_c3_in_s3(g);
  return locality_file_to_json(g->spec(), s, builders::group_centric_delta(g, s), {});
}

json a4_locality_json() {
  auto g = std::make_shared<DPGroup>(builders::alternating4(2));
  Subgroup s = builders::sylow_v4_in_a4(g);
  return locality_file_to_json(g->spec(), s, builders::group_centric_delta(g, s), {});
}

json tkc2_locality_json(std::int32_t m) {
  auto g = std::make_shared<DPGroup>(builders::torus_c2(m));
  Subgroup s = Subgroup::full(g);
  return locality_file_to_json(g->spec(), s, {s}, {});
}

json s4_broken_locality_json() {
  auto g = std::make_shared<DPGroup>(builders::symmetric_group(4, 2));
  Subgroup s = builders::sylow_d8_in_s4(g);
  DomainOverride ov;
  std::int32_t c3 = g->index_of(DPElement{{}, g->label_index("(123)")});
  std::int32_t c3i = g->index_of(DPElement{{}, g->label_index("(132)")});
  ov.removed.push_back(Word{c3, c3i});
  return locality_file_to_json(g->spec(), s, builders::group_centric_delta(g, s), ov);
}

json s4_transporter_json() {
  auto g = std::make_shared<DPGroup>(builders::symmetric_group(4, 2));
  Subgroup s = builders::sylow_d8_in_s4(g);
  Locality loc(g, s, builders::group_centric_delta(g, s));
  return transporter_file_to_json(TransporterSystem::from_locality(loc));
}

json s4_broken_transporter_json() {
  json j = s4_transporter_json();
  // corrupt one composition entry: swap its target with the next morphism
  auto& comp = j.at("compose");
  for (auto& entry : comp) {
    std::int32_t tgt = entry.at(2).get<std::int32_t>();
    std::int32_t other = (tgt + 1) % static_cast<std::int32_t>(j.at("morphisms").size());
    if (j.at("morphisms").at(static_cast<std::size_t>(other)).at("src") ==
            j.at("morphisms").at(static_cast<std::size_t>(tgt)).at("src") &&
        j.at("morphisms").at(static_cast<std::size_t>(other)).at("dst") ==
            j.at("morphisms").at(static_cast<std::size_t>(tgt)).at("dst") &&
        other != tgt) {
      entry[2] = other;
      break;
    }
  }
  return j;
}

json d8_fusion_json() {
  // standalone fusion description: D8 with its inner maps plus the
  // order-3 automorphism of the normal Klein subgroup
  auto g = std::make_shared<DPGroup>(builders::dihedral8(2));
  json j;
  j["group"] = group_spec_to_json(g->spec());
  Subgroup s = Subgroup::full(g);
  j["sylow"] = subgroup_to_json(s);
  json gens = json::array();
  // the normal Klein subgroup of D8 consists of the double transpositions
  std::vector<std::string> vn = {"e", "(12)(34)", "(13)(24)", "(14)(23)"};
  json dom = json::array(), img = json::array();
  // cycle the three involutions
  std::map<std::string, std::string> theta = {{"e", "e"},
                                              {"(12)(34)", "(13)(24)"},
                                              {"(13)(24)", "(14)(23)"},
                                              {"(14)(23)", "(12)(34)"}};
  for (const auto& v : vn) {
    dom.push_back(json{{"finite", v}});
    img.push_back(json{{"finite", theta.at(v)}});
  }
  gens.push_back(json{{"domain", dom}, {"image", img}});
  j["generators"] = gens;
  return j;
}

}  // namespace

int cmd_gen(const std::string& which, const std::string& out_dir, const RunConfig& cfg,
            std::ostream& os) {
  try {
    std::int32_t m = cfg.truncation > 0 ? cfg.truncation : 3;
    auto emit = [&](const std::string& name, const json& j) {
      std::string path = out_dir.empty() ? name : out_dir + "/" + name;
      save_json_file(path, j);
      os << "wrote " << path << "\n";
    };
    bool all = which == "all";
    if (all || which == "s4") emit("s4.locality.json", s4_locality_json());
    if (all || which == "s3") emit("s3.locality.json", s3_locality_json());
    if (all || which == "a4") emit("a4.locality.json", a4_locality_json());
    if (all || which == "tkc2")
      emit("tkc2_m" + std::to_string(m) + ".locality.json", tkc2_locality_json(m));
    if (all || which == "s4-broken") emit("s4_broken.locality.json", s4_broken_locality_json());
    if (all || which == "s4-transporter") emit("s4.transporter.json", s4_transporter_json());
    if (all || which == "s4-broken-transporter")
      emit("s4_broken.transporter.json", s4_broken_transporter_json());
    if (all || which == "d8-fusion") emit("d8.fusion.json", d8_fusion_json());
  } catch (const error& e) {
    os << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitPass;
}

int run_cli(int argc, const char* const* argv, std::ostream& os) {
  CLI::App app{"exact-arithmetic toolkit for compact localities and p-local compact groups"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--prime", cfg.prime, "expected prime (cross-checked against inputs)");
  app.add_option("--truncation", cfg.truncation, "torsion truncation override (p^m)");
  app.add_option("--max-word-len", cfg.max_word_len, "word length bound for axiom checks");
  app.add_option("--budget", cfg.budget, "search budget for backtracking searches");
  app.add_flag("--structured", cfg.structured, "machine-readable report output");

  std::string in_path, out_path, gen_case = "all", out_dir = ".";
  auto* check = app.add_subcommand("check", "run the locality check suite");
  check->add_option("file", in_path)->required();
  auto* fusion = app.add_subcommand("fusion", "fusion data and saturation reports");
  fusion->add_option("file", in_path)->required();
  auto* roundtrip = app.add_subcommand("roundtrip", "transporter build, reconstruction and Phi");
  roundtrip->add_option("file", in_path)->required();
  auto* rebuild = app.add_subcommand("rebuild", "reconstruct a locality from a transporter file");
  rebuild->add_option("file", in_path)->required();
  rebuild->add_option("-o,--out", out_path, "emitted locality file");
  auto* gen = app.add_subcommand("gen", "write canonical example inputs");
  gen->add_option("case", gen_case, "s4|s3|a4|tkc2|s4-broken|s4-transporter|s4-broken-transporter|d8-fusion|all");
  gen->add_option("-d,--dir", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::stringstream ss;
    int code = app.exit(e, ss, ss);
    os << ss.str();
    return code == 0 ? kExitPass : kExitParse;
  }
  if (check->parsed()) return cmd_check(in_path, cfg, os);
  if (fusion->parsed()) return cmd_fusion(in_path, cfg, os);
  if (roundtrip->parsed()) return cmd_roundtrip(in_path, cfg, os);
  if (rebuild->parsed()) return cmd_rebuild(in_path, out_path, cfg, os);
  if (gen->parsed()) return cmd_gen(gen_case, out_dir, cfg, os);
  return kExitParse;
}

}  // namespace ptloc
