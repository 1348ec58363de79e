#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "sammy/canon.hpp"
#include "sammy/construct.hpp"
#include "test_helpers.hpp"

using namespace sammy;
namespace tst = sammy::testing;

TEST_CASE("coproduct") {
  auto d2 = coproduct(make_one(), make_one());
  CHECK(d2.cat == make_discrete(2));
  auto zc = coproduct(make_zero(), make_chain(3));
  CHECK(isomorphic(zc.cat, make_chain(3)).has_value());
  CHECK(zc.inr.obj_map == std::vector<ObjId>{0, 1, 2});
  auto tt = coproduct(make_two(), make_two());
  CHECK(tt.cat.n_objects == 4);
  CHECK(tt.cat.n_morphisms() == 6);
  CHECK(check_functor(tt.inl));
  CHECK(check_functor(tt.inr));

  SUBCASE("couniversal property on small instances") {
    // functors out of the coproduct correspond to pairs of functors out of
    // the parts
    for (const FinCat& x : {make_two(), make_chain(3)}) {
      auto fs = enumerate_functors(make_two(), x);
      auto total = enumerate_functors(tt.cat, x);
      CHECK(total.size() == fs.size() * fs.size());
    }
  }
}

TEST_CASE("product") {
  auto oc = product(make_one(), make_chain(3));
  CHECK(isomorphic(oc.cat, make_chain(3)).has_value());
  auto zc = product(make_zero(), make_iso_two());
  CHECK(zc.cat == make_zero());
  auto tt = product(make_two(), make_two());
  CHECK(tt.cat.n_objects == 4);
  CHECK(tt.cat.n_morphisms() == 9);
  CHECK(check_functor(tt.proj_l));
  CHECK(check_functor(tt.proj_r));

  SUBCASE("universal property against pair enumeration") {
    for (const FinCat& x : {make_one(), make_two()}) {
      long into_product = static_cast<long>(enumerate_functors(x, tt.cat).size());
      long pairs = static_cast<long>(enumerate_functors(x, make_two()).size());
      CHECK(into_product == pairs * pairs);
    }
  }
}

TEST_CASE("functor enumeration matches the brute-force oracle") {
  auto pool = tst::small_pool(11, false);
  for (const FinCat& a : pool) {
    if (a.n_objects > 3 || a.n_morphisms() > 9) continue;
    for (const FinCat& b : pool) {
      if (b.n_objects > 3 || b.n_morphisms() > 9) continue;
      CHECK(static_cast<long>(enumerate_functors(a, b).size()) ==
            tst::count_functors_brute(a, b));
    }
  }
}

TEST_CASE("pow") {
  SUBCASE("pow(Two, Two) is the 3-chain") {
    FinCat p = pow(make_two(), make_two());
    CHECK(p.n_objects == 3);
    CHECK(p.n_morphisms() == 6);
    CHECK(isomorphic(p, make_chain(3)).has_value());
  }
  SUBCASE("degenerate exponents") {
    CHECK(pow(make_zero(), make_iso_two()) == make_one());
    CHECK(pow(make_one(), make_iso_two()) == make_iso_two());
    CHECK(pow(make_chain(3), make_zero()) == make_zero());
  }
  SUBCASE("object and morphism counts match the oracles") {
    auto pool = tst::small_pool(5, false);
    for (const FinCat& a : pool) {
      if (a.n_objects > 2 || a.n_morphisms() > 4) continue;
      for (const FinCat& b : pool) {
        if (b.n_objects > 3 || b.n_morphisms() > 6) continue;
        PowModel m = build_pow_model(a, b, {64, 4096});
        CHECK(static_cast<long>(m.cat.n_objects) == tst::count_functors_brute(a, b));
        CHECK(static_cast<long>(m.cat.n_morphisms()) == tst::count_nat_trans_brute(a, b));
        CHECK(validate_category(m.cat).empty());
      }
    }
  }
  SUBCASE("size bound") {
    CHECK_THROWS_AS(pow(make_discrete(3), make_discrete(3), SizeLimits{8, 100}), Error);
  }
}

TEST_CASE("pow on functors gives evaluation maps") {
  FinCat c = make_chain(3);
  FunctorData cs = pow_on_functor(constant_functor(ConstantFun::S), c);
  FunctorData ct = pow_on_functor(constant_functor(ConstantFun::T), c);
  PowModel arrows = build_pow_model(make_two(), c);
  CHECK(cs.cod == c);
  CHECK(ct.cod == c);
  for (ObjId o = 0; o < arrows.cat.n_objects; ++o) {
    MorId m = arrows.objects[o].mor_map[2];
    CHECK(cs.obj_map[o] == c.src[m]);
    CHECK(ct.obj_map[o] == c.tgt[m]);
  }
}

TEST_CASE("pullback") {
  FinCat c = make_chain(3);
  auto pb = pullback(identity_functor(c), identity_functor(c));
  CHECK(isomorphic(pb.cat, c).has_value());
  auto st = pullback(constant_functor(ConstantFun::S), constant_functor(ConstantFun::T));
  CHECK(st.cat == make_zero());
}

TEST_CASE("comma categories agree with the textbook oracle") {
  SUBCASE("arrow category of Two") {
    auto cr = comma(identity_functor(make_two()), identity_functor(make_two()));
    CHECK(cr.cat.n_objects == 3);
    FinCat oracle = tst::comma_textbook(identity_functor(make_two()), identity_functor(make_two()));
    CHECK(isomorphic(cr.cat, oracle).has_value());
  }
  SUBCASE("slices and small instances") {
    std::vector<std::pair<FunctorData, FunctorData>> instances;
    FinCat ch = make_chain(3);
    for (ObjId o = 0; o < 3; ++o)
      instances.push_back({identity_functor(ch), determine_obj(ch, o)});
    instances.push_back({constant_functor(ConstantFun::S), constant_functor(ConstantFun::T)});
    instances.push_back({constant_functor(ConstantFun::S), identity_functor(make_two())});
    instances.push_back(
        {identity_functor(make_iso_two()), determine_obj(make_iso_two(), 1)});
    instances.push_back({bang(make_zero(), make_two()), identity_functor(make_two())});
    for (auto& [l, r] : instances) {
      auto cr = comma(l, r);
      FinCat oracle = tst::comma_textbook(l, r);
      CHECK(validate_category(cr.cat).empty());
      CHECK(isomorphic(cr.cat, oracle).has_value());
      CHECK(check_functor(cr.to_l));
      CHECK(check_functor(cr.to_r));
    }
  }
  SUBCASE("comma over the empty category") {
    auto cr = comma(identity_functor(make_zero()), identity_functor(make_zero()));
    CHECK(cr.cat == make_zero());
  }
}

TEST_CASE("coequalizers") {
  SUBCASE("the span gluing") {
    auto cp = coproduct(make_two(), make_two());
    FunctorData s = constant_functor(ConstantFun::S);
    FunctorData f = compose_functors(cp.inl, s);
    FunctorData g = compose_functors(cp.inr, s);
    auto ce = coequalizer_cat(f, g);
    CHECK(ce.cat.n_objects == 3);
    CHECK(ce.cat.n_morphisms() == 5);
    CHECK(isomorphic(ce.cat, tst::span_category()).has_value());
    for (const FinCat& x : {make_two(), make_chain(3), make_discrete(2)}) {
      std::string why;
      CHECK_MESSAGE(verify_coequalizer_against(f, g, ce, x, &why), why);
    }
  }
  SUBCASE("an infinite quotient hits the bound") {
    FunctorData s = constant_functor(ConstantFun::S);
    FunctorData t = constant_functor(ConstantFun::T);
    CHECK_THROWS_AS(coequalizer_cat(s, t, 64), Error);
    try {
      coequalizer_cat(s, t, 64);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrKind::SizeBound);
    }
  }
  SUBCASE("equal functors: quotient is the codomain") {
    for (const FinCat& c : {make_two(), make_chain(3), make_iso_two()}) {
      FunctorData id = identity_functor(c);
      auto ce = coequalizer_cat(id, id);
      CHECK(isomorphic(ce.cat, c).has_value());
      CHECK(check_functor(ce.proj));
    }
  }
  SUBCASE("gluing chains end to start adds lengths") {
    FinCat n3 = make_chain(3), n4 = make_chain(4);
    auto cp = coproduct(n3, n4);
    FunctorData f = compose_functors(cp.inl, determine_obj(n3, 2));
    FunctorData g = compose_functors(cp.inr, determine_obj(n4, 0));
    auto ce = coequalizer_cat(f, g);
    CHECK(ce.cat.n_objects == 6);
    CHECK(isomorphic(ce.cat, make_chain(6)).has_value());
  }
}

TEST_CASE("limits and colimits") {
  FinCat two = make_two();
  SUBCASE("empty diagram") {
    FunctorData empty = bang(make_zero(), two);
    DiagramBound lim = limit(empty);
    CHECK(lim.apex == 1);  // terminal object
    DiagramBound colim = colimit(empty);
    CHECK(colim.apex == 0);  // initial object
  }
  SUBCASE("binary products in a chain are minima") {
    FinCat ch = make_chain(3);
    FinCat d2 = make_discrete(2);
    for (ObjId x = 0; x < 3; ++x)
      for (ObjId y = 0; y < 3; ++y) {
        FunctorData d;
        d.dom = d2;
        d.cod = ch;
        d.obj_map = {x, y};
        d.mor_map = {ch.identity[x], ch.identity[y]};
        DiagramBound b = limit(d);
        CHECK(b.apex == std::min(x, y));
        DiagramBound cb = colimit(d);
        CHECK(cb.apex == std::max(x, y));
      }
  }
  SUBCASE("no universal bound") {
    FinCat d2 = make_discrete(2);
    FunctorData d;
    d.dom = d2;
    d.cod = d2;
    d.obj_map = {0, 1};
    d.mor_map = {0, 1};
    CHECK_THROWS_AS(limit(d), Error);
  }
}

TEST_CASE("Kan extensions") {
  SUBCASE("extension along the identity returns the functor") {
    FunctorData s = constant_functor(ConstantFun::S);
    for (KanSide side : {KanSide::Right, KanSide::Left}) {
      KanResult kr = kan_extension(side, identity_functor(make_one()), s);
      CHECK(kr.extension == s);
      CHECK(kr.transform == identity_nat(s));
    }
  }
  SUBCASE("products via the extension along One ⊔ One -> One") {
    FinCat ch = make_chain(3);
    auto cp = coproduct(make_one(), make_one());
    FunctorData g = bang(cp.cat, make_one());
    for (ObjId x = 0; x < 3; ++x)
      for (ObjId y = 0; y < 3; ++y) {
        FunctorData pair;
        pair.dom = cp.cat;
        pair.cod = ch;
        pair.obj_map = {x, y};
        pair.mor_map = {ch.identity[x], ch.identity[y]};
        KanResult kr = kan_extension(KanSide::Right, g, pair);
        CHECK(kr.extension.obj_map[0] == std::min(x, y));
      }
  }
  SUBCASE("extension along a rigid isomorphism inverts it on the nose") {
    auto [two2, wit] = relabel(make_two(), {1, 0}, {2, 1, 0});
    REQUIRE(check_functor(wit));
    KanResult kr = kan_extension(KanSide::Right, wit, identity_functor(make_two()));
    CHECK(compose_functors(kr.extension, wit) == identity_functor(make_two()));
    CHECK(compose_functors(wit, kr.extension) == identity_functor(two2));
  }
  SUBCASE("extension along a floppy isomorphism inverts it up to natural isomorphism") {
    FinCat i2 = make_iso_two();
    FunctorData g;  // the swap automorphism of the two-object isomorphism pair
    g.dom = i2;
    g.cod = i2;
    g.obj_map = {1, 0};
    g.mor_map = {1, 0, 3, 2};
    REQUIRE(check_functor(g));
    KanResult kr = kan_extension(KanSide::Right, g, identity_functor(i2));
    CHECK(tst::naturally_isomorphic(compose_functors(kr.extension, g), identity_functor(i2)));
  }
  SUBCASE("universal property holds on a suite of instances") {
    FunctorData s = constant_functor(ConstantFun::S);
    FunctorData t = constant_functor(ConstantFun::T);
    FinCat ch3 = make_chain(3);
    std::vector<std::pair<FunctorData, FunctorData>> gs = {
        {s, identity_functor(make_one())},
        {t, identity_functor(make_one())},
        {s, determine_obj(ch3, 1)},
        {t, determine_obj(ch3, 2)},
        {bang(make_two(), make_one()), identity_functor(make_two())},
    };
    for (auto& [g, f] : gs)
      for (KanSide side : {KanSide::Right, KanSide::Left}) {
        KanResult kr = kan_extension(side, g, f);  // verification runs inside
        std::string why;
        CHECK_MESSAGE(verify_kan_universal(side, g, f, kr, 100000, &why), why);
      }
  }
  SUBCASE("kan_induced returns the identity against the extension itself") {
    FunctorData g = constant_functor(ConstantFun::S);
    FunctorData f = determine_obj(make_chain(3), 1);
    KanResult kr = kan_extension(KanSide::Right, g, f);
    NatTransData gamma = kan_induced(g, f, kr, kr.extension, kr.transform);
    CHECK(gamma == identity_nat(kr.extension));
  }
  SUBCASE("no pointwise extension when a limit is missing") {
    FinCat d2 = make_discrete(2);
    auto cp = coproduct(make_one(), make_one());
    FunctorData g = bang(cp.cat, make_one());
    FunctorData pair;
    pair.dom = cp.cat;
    pair.cod = d2;
    pair.obj_map = {0, 1};
    pair.mor_map = {0, 1};
    CHECK_THROWS_AS(kan_extension(KanSide::Right, g, pair), Error);
  }
}

TEST_CASE("Kan liftings") {
  SUBCASE("lifting along an isomorphism composes with the inverse") {
    auto [two2, wit] = relabel(make_two(), {1, 0}, {2, 1, 0});
    for (ObjId x = 0; x < 2; ++x) {
      FunctorData f = determine_obj(two2, x);
      KanResult kr = kan_lifting(wit, f);
      CHECK(compose_functors(wit, kr.extension) == f);
    }
  }
  SUBCASE("lifting a functor along itself") {
    FunctorData s = constant_functor(ConstantFun::S);
    KanResult kr = kan_lifting(s, s);
    CHECK(kr.extension == identity_functor(make_one()));
  }
  SUBCASE("no lifting exists") {
    FunctorData t = constant_functor(ConstantFun::T);
    CHECK_THROWS_AS(kan_lifting(t, identity_functor(make_two())), Error);
    try {
      kan_lifting(t, identity_functor(make_two()));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrKind::NoUniversal);
    }
  }
}

TEST_CASE("composability functor") {
  SUBCASE("trivial on One") {
    auto cr = composable_functor(make_one());
    CHECK(cr.pairs.cat.n_objects == 1);
  }
  SUBCASE("composable pairs of Two") {
    auto cr = composable_functor(make_two());
    CHECK(cr.pairs.cat.n_objects == 4);
    // the (u, id0) pair lands on u
    int hits = 0;
    for (ObjId o = 0; o < cr.pairs.cat.n_objects; ++o) {
      MorId gm = cr.arrow_model.objects[cr.pairs.to_l.obj_map[o]].mor_map[2];
      MorId fm = cr.arrow_model.objects[cr.pairs.to_r.obj_map[o]].mor_map[2];
      if (gm == 2 && fm == 0) {
        hits++;
        CHECK(cr.arrow_model.objects[cr.functor.obj_map[o]].mor_map[2] == 2);
      }
    }
    CHECK(hits == 1);
  }
  SUBCASE("object action equals the composition table") {
    for (const FinCat& c : tst::small_pool(17, false)) {
      if (c.n_morphisms() == 0 || c.n_morphisms() > 6) continue;
      auto cr = composable_functor(c, {512, 4096});
      for (ObjId o = 0; o < cr.pairs.cat.n_objects; ++o) {
        MorId gm = cr.arrow_model.objects[cr.pairs.to_l.obj_map[o]].mor_map[2];
        MorId fm = cr.arrow_model.objects[cr.pairs.to_r.obj_map[o]].mor_map[2];
        CHECK(cr.arrow_model.objects[cr.functor.obj_map[o]].mor_map[2] == c.compose(gm, fm));
      }
    }
  }
}

TEST_CASE("skeleton") {
  auto [sk1, q1] = skeleton(make_iso_two());
  CHECK(sk1 == make_one());
  CHECK(check_functor(q1));
  auto [sk2, q2] = skeleton(make_two());
  CHECK(sk2 == make_two());
  auto [sk3, q3] = skeleton(make_discrete(3));
  CHECK(sk3 == make_discrete(3));

  SUBCASE("the retraction is full, faithful and surjective on objects") {
    for (const FinCat& c : tst::small_pool(23)) {
      auto [sk, q] = skeleton(c);
      std::vector<bool> hit(sk.n_objects, false);
      for (ObjId x : q.obj_map) hit[x] = true;
      for (bool h : hit) CHECK(h);
      for (ObjId x = 0; x < c.n_objects; ++x)
        for (ObjId y = 0; y < c.n_objects; ++y) {
          auto dom_hom = hom_set(c, x, y);
          auto cod_hom = hom_set(sk, q.obj_map[x], q.obj_map[y]);
          std::set<MorId> image;
          for (MorId m : dom_hom) image.insert(q.mor_map[m]);
          CHECK(image.size() == dom_hom.size());  // faithful
          CHECK(image.size() == cod_hom.size());  // full
        }
      CHECK(skeleton(sk).first == sk);  // already skeletal
    }
  }
}

TEST_CASE("transformation algebra") {
  PowModel m = build_pow_model(make_two(), make_two());
  // name the three functors: const0, id, const1 in enumeration order
  const FunctorData& c0 = m.objects[0];
  const FunctorData& id2 = m.objects[1];
  const FunctorData& c1 = m.objects[2];
  auto a = enumerate_nat_trans(c0, id2).front();
  auto b = enumerate_nat_trans(id2, c1).front();

  SUBCASE("vertical identity laws") {
    CHECK(vcomp(b, identity_nat(id2)) == b);
    CHECK(vcomp(identity_nat(id2), a) == a);
  }
  SUBCASE("horizontal composition of identities is the identity of the composite") {
    NatTransData h = hcomp(identity_nat(id2), identity_nat(c0));
    CHECK(h == identity_nat(compose_functors(id2, c0)));
  }
  SUBCASE("interchange law") {
    // two composable vertical pairs horizontally composed both ways
    auto lift = [&](const NatTransData& t) { return t; };
    NatTransData v1 = vcomp(b, a);  // c0 -> c1
    NatTransData left = hcomp(lift(v1), lift(v1));
    NatTransData right = vcomp(hcomp(b, b), hcomp(a, a));
    CHECK(left == right);
  }
  SUBCASE("shape mismatch is rejected") {
    auto s = identity_nat(constant_functor(ConstantFun::S));
    CHECK_THROWS_AS(vcomp(a, b), Error);
    CHECK_THROWS_AS(hcomp(s, s), Error);
  }
}
