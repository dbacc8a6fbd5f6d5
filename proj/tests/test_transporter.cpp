#include <memory>
#include <set>

#include "doctest.h"
#include "ptloc/builders.hpp"
#include "ptloc/checks.hpp"
#include "ptloc/transporter.hpp"
#include "support.hpp"

using namespace ptloc;

namespace {

struct TFixture {
  DPGroupPtr g;
  Subgroup s;
  Locality loc;
  FusionSystem f;
  TransporterSystem t;

  static TFixture s4() {
    auto g = std::make_shared<DPGroup>(builders::symmetric_group(4, 2));
    Subgroup s = builders::sylow_d8_in_s4(g);
    Locality loc(g, s, builders::group_centric_delta(g, s));
    return TFixture{g, s, loc, fusion_from_locality(loc), TransporterSystem::from_locality(loc)};
  }
  static TFixture s3() {
    auto g = std::make_shared<DPGroup>(builders::symmetric_group(3, 3));
    Subgroup s = builders::sylow_c3_in_s3(g);
    Locality loc(g, s, builders::group_centric_delta(g, s));
    return TFixture{g, s, loc, fusion_from_locality(loc), TransporterSystem::from_locality(loc)};
  }
  static TFixture tkc2(std::int32_t m) {
    auto g = std::make_shared<DPGroup>(builders::torus_c2(m));
    Subgroup s = Subgroup::full(g);
    Locality loc(g, s, {s});
    return TFixture{g, s, loc, fusion_from_locality(loc), TransporterSystem::from_locality(loc)};
  }
  std::int32_t obj(const Subgroup& p) const { return t.object_index(p.elems()); }
};

}  // namespace

TEST_CASE("morphism counts from the locality") {
  auto fx = TFixture::s4();
  // |Mor(V,V)| = |N_{S4}(V)| = 24 for the normal Klein group
  std::int32_t c3 = fx.g->index_of(DPElement{{}, fx.g->label_index("(123)")});
  Subgroup vn = fx.loc.s_g(c3);
  std::int32_t v = fx.obj(vn);
  REQUIRE(v >= 0);
  CHECK(fx.t.mors_between(v, v).size() == 24);
  // group case: Mor(S,S) = N_{S4}(D8) = D8
  std::int32_t so = fx.obj(fx.s);
  CHECK(fx.t.mors_between(so, so).size() == 8);
  // no conjugator: Mor(D8, V) is empty
  CHECK(fx.t.mors_between(so, v).empty());
}

TEST_CASE("category laws and the axioms on S4, S3 and T⋊C2") {
  for (auto fx : {TFixture::s4(), TFixture::s3(), TFixture::tkc2(3)}) {
    CHECK(fx.t.check_category().all_pass());
    CHECK(fx.t.check_axiom_A1_A2().all_pass());
    CHECK(fx.t.check_axiom_B_C().all_pass());
    CHECK(fx.t.check_axiom_I_II().all_pass());
    CHECK(fx.t.check_axiom_III_auto().all_pass());
  }
}

TEST_CASE("(A2) orbit counts: |Mor(V,V)| / |Ker| = |Aut_F(V)|") {
  auto fx = TFixture::s4();
  std::int32_t c3 = fx.g->index_of(DPElement{{}, fx.g->label_index("(123)")});
  Subgroup vn = fx.loc.s_g(c3);
  std::int32_t v = fx.obj(vn);
  std::int64_t ker = 0;
  for (std::int32_t id : fx.t.mors_between(v, v))
    if (fx.t.mor(id).rho == vn.elems()) ++ker;
  CHECK(ker == 4);  // C_{S4}(V) = V
  std::set<std::vector<std::int32_t>> images;
  for (std::int32_t id : fx.t.mors_between(v, v)) images.insert(fx.t.mor(id).rho);
  CHECK(images.size() == 6);  // Aut_F(V) ≅ S3
  CHECK(static_cast<std::int64_t>(fx.t.mors_between(v, v).size()) / ker == 6);
}

TEST_CASE("axiom (I) frozen count for the Klein object") {
  auto fx = TFixture::s4();
  std::int32_t c3 = fx.g->index_of(DPElement{{}, fx.g->label_index("(123)")});
  Subgroup vn = fx.loc.s_g(c3);
  std::int32_t v = fx.obj(vn);
  // Aut_T(V) has 24 morphisms; eps(N_S(V)) has |N_{D8}(V)| = 8; index 3 is odd
  CHECK(fx.t.mors_between(v, v).size() == 24);
  CHECK(normalizer(vn, fx.s).size() == 8);
}

TEST_CASE("mutations trip the axioms") {
  auto fx = TFixture::s4();
  // duplicated morphism: the orbit-map condition in (A2) fails
  std::int32_t c3 = fx.g->index_of(DPElement{{}, fx.g->label_index("(123)")});
  Subgroup vn = fx.loc.s_g(c3);
  std::int32_t v = fx.obj(vn);
  std::int32_t some = fx.t.mors_between(v, v)[0];
  TransporterSystem dup = fx.t.with_duplicated_morphism(some);
  bool tripped = !dup.check_axiom_A1_A2().all_pass() || !dup.check_category().all_pass();
  CHECK(tripped);

  // mutated rho: (B) fails
  const auto& m = fx.t.mor(some);
  std::vector<std::int32_t> rho = m.rho;
  std::rotate(rho.begin(), rho.begin() + 1, rho.end());
  std::int32_t eps_mor = *fx.t.epsilon(v, v, vn.elems()[1]);
  TransporterSystem bad = fx.t.with_rho_overridden(eps_mor, rho);
  CHECK(!bad.check_axiom_B_C().all_pass());
}

TEST_CASE("linking system checklist and the kernel-center identity") {
  auto fx = TFixture::s4();
  Report rep = fx.t.check_linking(fx.f);
  CHECK(rep.all_pass());
  bool says_fc = false;
  for (const auto& line : rep.info)
    if (line.find("F^c: yes") != std::string::npos) says_fc = true;
  CHECK(says_fc);
  // kernel = center, object by object
  for (std::size_t v = 0; v < fx.t.objects().size(); ++v) {
    std::int64_t ker = 0;
    for (std::int32_t id : fx.t.mors_between(static_cast<std::int32_t>(v), static_cast<std::int32_t>(v)))
      if (fx.t.mor(id).rho == fx.t.objects()[v].elems()) ++ker;
    CHECK(ker == static_cast<std::int64_t>(center(fx.t.objects()[v]).size()));
  }

  // removing the qualifying centric V trips condition (2)
  std::int32_t c3 = fx.g->index_of(DPElement{{}, fx.g->label_index("(123)")});
  Subgroup vn = fx.loc.s_g(c3);
  TransporterSystem smaller = fx.t.without_object(fx.obj(vn));
  Report rep2 = smaller.check_linking(fx.f);
  CHECK(rep2.any_fail());
  bool two_failed = false;
  for (const auto& it : rep2.items)
    if (it.status == Status::Fail && it.name.find("(2)") != std::string::npos) two_failed = true;
  CHECK(two_failed);

  // S3 at p=3: kernel of rho at C3 is Z(C3) = C3
  auto f3 = TFixture::s3();
  CHECK(f3.t.check_linking(f3.f).all_pass());
  CHECK(f3.t.mors_between(0, 0).size() == 6);  // Aut_T(C3) = S3
}

TEST_CASE("restriction and factorization of morphisms") {
  auto fx = TFixture::s4();
  std::int32_t c3 = fx.g->index_of(DPElement{{}, fx.g->label_index("(123)")});
  Subgroup vn = fx.loc.s_g(c3);
  std::int32_t v = fx.obj(vn);
  std::int32_t so = fx.obj(fx.s);

  // restriction of the identity composes to the inclusion
  std::int32_t iota = fx.t.inclusion(v, so);
  std::int32_t restr = fx.t.restrict_morphism(fx.t.identity(so), v, so);
  CHECK(restr == iota);

  // in a locality-built system, restriction of (g,P,Q) is (g,P0,Q0)
  for (std::int32_t id : fx.t.mors_between(v, so)) {
    const auto& m = fx.t.mor(id);
    std::vector<std::int32_t> image = m.rho;
    std::sort(image.begin(), image.end());
    std::int32_t q0 = fx.t.object_index(image);
    if (q0 < 0) continue;
    std::int32_t r = fx.t.restrict_morphism(id, v, q0);
    CHECK(fx.t.mor(r).label == m.label);
    // factorization: psi = iso then inclusion
    auto [iso, inc] = fx.t.factor_morphism(id);
    CHECK(fx.t.mor(iso).label == m.label);
    CHECK(*fx.t.compose(iso, inc) == id);
    CHECK(fx.t.is_iso(iso));
  }

  // cancellation (A.13(d)): equal composites with one equal factor match
  for (std::int32_t a : fx.t.mors_between(v, v))
    for (std::int32_t b : fx.t.mors_between(v, v)) {
      if (a == b) continue;
      for (std::int32_t c : fx.t.mors_between(v, so)) {
        auto ac = fx.t.compose(a, c);
        auto bc = fx.t.compose(b, c);
        REQUIRE(ac);
        REQUIRE(bc);
        CHECK(*ac != *bc);
      }
      break;  // one right factor suffices per pair
    }
}

TEST_CASE("epsilon-rho compatibility is exhaustive") {
  for (auto fx : {TFixture::s4(), TFixture::tkc2(2)}) {
    const DPGroup& g = *fx.g;
    for (std::size_t p = 0; p < fx.t.objects().size(); ++p)
      for (std::size_t q = 0; q < fx.t.objects().size(); ++q)
        for (std::int32_t x : fx.t.transporter_set(static_cast<std::int32_t>(p),
                                                   static_cast<std::int32_t>(q))) {
          auto mid = fx.t.epsilon(static_cast<std::int32_t>(p), static_cast<std::int32_t>(q), x);
          REQUIRE(mid);
          const auto& pelems = fx.t.objects()[p].elems();
          for (std::size_t k = 0; k < pelems.size(); ++k)
            CHECK(fx.t.mor(*mid).rho[k] == g.conj(pelems[k], x));
        }
  }
}
