#include <memory>
#include <set>

#include "doctest.h"
#include "ptloc/builders.hpp"
#include "ptloc/reconstruction.hpp"
#include "support.hpp"

using namespace ptloc;

namespace {

struct RFixture {
  DPGroupPtr g;
  Subgroup s;
  Locality loc;
  FusionSystem f;
  TransporterSystem t;
  BulletData b;
  ReconstructedLocality lp;

  static RFixture make(DPGroupPtr g, Subgroup s, std::vector<Subgroup> delta) {
    Locality loc(g, s, std::move(delta));
    FusionSystem f = fusion_from_locality(loc);
    TransporterSystem t = TransporterSystem::from_locality(loc);
    BulletData b = BulletData::identity(t);
    ReconstructedLocality lp(t, b);
    return RFixture{g, s, std::move(loc), std::move(f), std::move(t), std::move(b), std::move(lp)};
  }
  static RFixture s4() {
    auto g = std::make_shared<DPGroup>(builders::symmetric_group(4, 2));
    Subgroup s = builders::sylow_d8_in_s4(g);
    return make(g, s, builders::group_centric_delta(g, s));
  }
  static RFixture s3() {
    auto g = std::make_shared<DPGroup>(builders::symmetric_group(3, 3));
    Subgroup s = builders::sylow_c3_in_s3(g);
    return make(g, s, builders::group_centric_delta(g, s));
  }
};

}  // namespace

TEST_CASE("extends: identity cases, eps squares, unrelated pairs") {
  auto fx = RFixture::s4();
  const auto& t = fx.t;
  for (std::int32_t id : t.iso_ids()) CHECK(extends(t, id, id));

  std::int32_t s_obj = t.object_index(fx.s.elems());
  REQUIRE(s_obj >= 0);
  // (x)eps_{P,Q} ↑ (x)eps_S for every x and applicable P
  for (std::int32_t x : fx.s.elems()) {
    std::int32_t top = *t.epsilon(s_obj, s_obj, x);
    for (std::size_t p = 0; p < t.objects().size(); ++p) {
      Subgroup img = conjugate_subgroup(t.objects()[p], x);
      std::int32_t q = t.object_index(img.elems());
      if (q < 0) continue;
      auto e = t.epsilon(static_cast<std::int32_t>(p), q, x);
      REQUIRE(e);
      CHECK(extends(t, *e, top));
    }
  }
  // isomorphisms on incomparable objects do not extend one another
  std::int32_t c4_obj = -1, vs_obj = -1;
  for (std::size_t v = 0; v < t.objects().size(); ++v) {
    bool cyclic = false;
    for (std::int32_t e : t.objects()[v].elems())
      if (t.objects()[v].size() == 4 && fx.g->mul(e, e) != fx.g->unit_index() &&
          t.objects()[v].contains(fx.g->mul(e, e)))
        cyclic = true;
    if (t.objects()[v].size() == 4 && cyclic)
      c4_obj = static_cast<std::int32_t>(v);
  }
  for (std::size_t v = 0; v < t.objects().size(); ++v)
    if (t.objects()[v].size() == 4 && static_cast<std::int32_t>(v) != c4_obj && vs_obj < 0)
      vs_obj = static_cast<std::int32_t>(v);
  REQUIRE(c4_obj >= 0);
  REQUIRE(vs_obj >= 0);
  std::int32_t a = t.mors_between(c4_obj, c4_obj)[0];
  std::int32_t b = t.mors_between(vs_obj, vs_obj)[0];
  CHECK(!extends(t, a, b));
  CHECK(!extends(t, b, a));
}

TEST_CASE("up_maximal: inclusions go to iota_S, triples to (g, S_g, S_g-1)") {
  auto fx = RFixture::s4();
  const auto& t = fx.t;
  std::int32_t s_obj = t.object_index(fx.s.elems());
  for (std::size_t v = 0; v < t.objects().size(); ++v)
    CHECK(up_maximal(t, t.identity(static_cast<std::int32_t>(v))) == t.identity(s_obj));
  for (std::int32_t x : fx.s.elems())
    CHECK(up_maximal(t, *t.epsilon(s_obj, s_obj, x)) == *t.epsilon(s_obj, s_obj, x));
  // locality-built triples: the maximal member of [(g,P,Q)] is (g, S_g, S_{g^-1})
  for (std::int32_t id : t.iso_ids()) {
    const auto& m = t.mor(id);
    std::int32_t h = -1;
    for (std::int32_t cand = 0; cand < fx.loc.size(); ++cand)
      if (fx.g->element_str(fx.g->element(cand)) == m.label) h = cand;
    REQUIRE(h >= 0);
    Subgroup sg = fx.loc.s_g(h);
    Subgroup sgi = fx.loc.s_g(fx.loc.inverse(h));
    std::int32_t top = up_maximal(t, id);
    CHECK(t.objects()[static_cast<std::size_t>(t.mor(top).src)].elems() == sg.elems());
    CHECK(t.objects()[static_cast<std::size_t>(t.mor(top).dst)].elems() == sgi.elems());
    CHECK(t.mor(top).label == m.label);
  }
}

TEST_CASE("equivalence classes of the S4 transporter") {
  auto fx = RFixture::s4();
  // one class per carrier element of the source locality
  CHECK(fx.lp.classes().size() == static_cast<std::size_t>(fx.loc.size()));
  // the unit class is the set of identity morphisms
  const IsoClass& unit_cls = fx.lp.classes()[static_cast<std::size_t>(fx.lp.unit())];
  CHECK(unit_cls.members.size() == fx.t.objects().size());
  CHECK(check_classes(fx.t, fx.lp, fx.b).all_pass());
  CHECK(check_up_poset(fx.t).all_pass());
  CHECK(check_a20_squares(fx.t).all_pass());
  CHECK(check_s_g_via_classes(fx.lp).all_pass());
}

TEST_CASE("products in the reconstructed locality") {
  auto fx = RFixture::s4();
  const auto& lp = fx.lp;
  // Pi on length-1 words is the class itself
  for (std::int32_t c = 0; c < lp.size(); ++c) {
    Word w{c};
    REQUIRE(lp.in_domain(w));
    CHECK(lp.product(w) == c);
  }
  // Pi(f^-1, f) = [iota_S]
  for (std::int32_t c = 0; c < lp.size(); ++c) {
    Word w{lp.inverse(c), c};
    REQUIRE(lp.in_domain(w));
    CHECK(lp.product(w) == lp.unit());
  }
  CHECK(check_partial_group_axioms(lp, 3).all_pass());
}

TEST_CASE("bullet validation (identity bullet on finite input)") {
  auto fx = RFixture::s4();
  CHECK(validate_bullet(fx.t, fx.f, fx.b).all_pass());
}

TEST_CASE("roundtrip Phi on S4 and S3") {
  auto fx = RFixture::s4();
  Report rep = roundtrip_phi(fx.loc, fx.t, fx.lp, 3);
  CHECK(rep.all_pass());

  auto f3 = RFixture::s3();
  CHECK(f3.lp.classes().size() == 6);
  Report rep3 = roundtrip_phi(f3.loc, f3.t, f3.lp, 3);
  CHECK(rep3.all_pass());
}

TEST_CASE("orbit category and the center functor for F_{D8}(S4)") {
  auto fx = RFixture::s4();
  OrbitCategory o = orbit_category(fx.f, fx.loc.delta());
  CHECK(check_orbit_category(fx.f, o).all_pass());
  CHECK(check_sigma_functor(fx.t, o).all_pass());

  // Mor_O(S,S) = Out_F(D8) is trivial since Aut_F(D8) = Inn(D8)
  std::int32_t so = -1;
  for (std::size_t i = 0; i < o.objects.size(); ++i)
    if (o.objects[i].elems() == fx.s.elems()) so = static_cast<std::int32_t>(i);
  REQUIRE(so >= 0);
  CHECK(o.classes.at({so, so}).size() == 1);

  ZFunctorData z = z_functor(fx.f, o);
  CHECK(check_z_functor(fx.f, o, z).all_pass());
  // Z(D8) = Z(S) has order 2
  CHECK(z.centers[static_cast<std::size_t>(so)].size() == 2);
}

TEST_CASE("isomorphism search: identity, the rebuilt locality, a relabeled copy") {
  auto fx = RFixture::s4();
  std::vector<std::vector<std::int32_t>> objs;
  for (const auto& d : fx.loc.delta()) objs.push_back(d.elems());
  // identity
  auto res = locality_isomorphism_search(fx.loc, fx.loc, objs, objs, 2'000'000);
  REQUIRE(res.status == Status::Pass);
  for (std::int32_t h = 0; h < fx.loc.size(); ++h) CHECK(res.mapping[static_cast<std::size_t>(h)] == h);

  // the rebuilt locality: objects carried through the S-identification
  std::vector<std::vector<std::int32_t>> objs_lp;
  for (const auto& d : fx.loc.delta()) {
    std::vector<std::int32_t> handles;
    for (std::int32_t x : d.elems()) handles.push_back(fx.lp.embed_s(x));
    std::sort(handles.begin(), handles.end());
    objs_lp.push_back(handles);
  }
  auto res2 = locality_isomorphism_search(fx.loc, fx.lp, objs, objs_lp, 5'000'000);
  CHECK(res2.status == Status::Pass);

  // a relabeled isomorphic copy: permute the ambient table by an inner
  // automorphism fixing S and Delta setwise
  auto g2 = std::make_shared<DPGroup>(builders::symmetric_group(4, 2));
  Subgroup s2 = builders::sylow_d8_in_s4(g2);
  Locality loc2(g2, s2, builders::group_centric_delta(g2, s2));
  auto res3 = locality_isomorphism_search(fx.loc, loc2, objs, objs, 5'000'000);
  CHECK(res3.status == Status::Pass);

  // budget exhaustion is inconclusive, not failure
  auto res4 = locality_isomorphism_search(fx.loc, fx.lp, objs, objs_lp, 3);
  CHECK(res4.status == Status::Inconclusive);
}
