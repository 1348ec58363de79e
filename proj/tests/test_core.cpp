#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sammy/core.hpp"
#include "test_helpers.hpp"

using namespace sammy;

TEST_CASE("constants satisfy their defining tables") {
  CHECK(make_zero().n_objects == 0);
  CHECK(make_zero().n_morphisms() == 0);
  CHECK(make_one().n_morphisms() == 1);
  CHECK(make_two().n_morphisms() == 3);
  FinCat i2 = make_iso_two();
  CHECK(i2.n_morphisms() == 4);
  // f and g are mutually inverse
  CHECK(i2.compose(3, 2) == i2.identity[0]);
  CHECK(i2.compose(2, 3) == i2.identity[1]);
  for (auto name : {ConstantCat::Zero, ConstantCat::One, ConstantCat::Two, ConstantCat::IsoTwo})
    CHECK(validate_category(constant(name)).empty());
}

TEST_CASE("validator flags broken tables and passes built ones") {
  for (const FinCat& c : testing::small_pool()) CHECK(validate_category(c).empty());

  SUBCASE("identity law broken by redirecting a composite with an identity") {
    FinCat c = make_two();
    c.comp[1 * 3 + 2] = 0;  // id1 ∘ u := id0
    auto v = validate_category(c);
    REQUIRE(!v.empty());
  }
  SUBCASE("associativity broken with endpoints and identities intact") {
    // objects 0,1; morphisms id0, id1, e:0->0, f,g:0->1; e∘e=e, f∘e=g, g∘e=f
    FinCat c;
    c.n_objects = 2;
    c.src = {0, 1, 0, 0, 0};
    c.tgt = {0, 1, 0, 1, 1};
    c.identity = {0, 1};
    c.comp.assign(25, kNoMor);
    auto at = [&](MorId g, MorId f) -> MorId& { return c.comp[g * 5 + f]; };
    at(0, 0) = 0;
    at(1, 1) = 1;
    at(2, 0) = 2;
    at(0, 2) = 2;
    at(2, 2) = 2;
    at(3, 0) = 3;
    at(1, 3) = 3;
    at(4, 0) = 4;
    at(1, 4) = 4;
    at(3, 2) = 4;  // f ∘ e = g
    at(4, 2) = 3;  // g ∘ e = f
    auto v = validate_category(c);
    REQUIRE(!v.empty());
    for (const auto& violation : v) CHECK(violation.law == "associativity");
  }
}

TEST_CASE("constant functors") {
  FunctorData s = constant_functor(ConstantFun::S);
  FunctorData t = constant_functor(ConstantFun::T);
  CHECK(s.obj_map[0] == 0);
  CHECK(t.obj_map[0] == 1);
  CHECK(source(s) == make_one());
  CHECK(target(s) == make_two());
  FunctorData b21 = constant_functor(ConstantFun::Bang21);
  CHECK(b21.obj_map == std::vector<ObjId>{0, 0});
  CHECK(check_functor(constant_functor(ConstantFun::Bang01)));
  CHECK(check_functor(constant_functor(ConstantFun::Bang02)));
  FunctorData so = constant_functor(ConstantFun::SrcOf);
  FunctorData to = constant_functor(ConstantFun::TgtOf);
  CHECK(so.cod == make_iso_two());
  CHECK(so.obj_map[0] == 0);
  CHECK(to.obj_map[0] == 1);
  CHECK_THROWS_AS(bang(make_two(), make_two()), Error);
}

TEST_CASE("identity functor and source/target") {
  for (const FinCat& c : testing::small_pool()) {
    FunctorData id = identity_functor(c);
    CHECK(check_functor(id));
    CHECK(source(id) == c);
    CHECK(target(id) == c);
  }
  CHECK(identity_functor(make_zero()).obj_map.empty());
}

TEST_CASE("opposite is an involution and reverses arrows") {
  FinCat two_op = opposite(make_two());
  CHECK(two_op.src[2] == 1);
  CHECK(two_op.tgt[2] == 0);
  for (const FinCat& c : testing::small_pool()) {
    CHECK(validate_category(opposite(c)).empty());
    CHECK(opposite(opposite(c)) == c);
  }
  FunctorData s = constant_functor(ConstantFun::S);
  FunctorData s_op = opposite(s);
  CHECK(s_op.dom == make_one());
  CHECK(s_op.cod == opposite(make_two()));
  CHECK(s_op.obj_map[0] == 0);
  CHECK(check_functor(s_op));
  CHECK(opposite(s_op) == s);
}

TEST_CASE("pick and determine are mutually inverse") {
  // picks of the named constants
  Value p = pick(constant_functor(ConstantFun::S));
  CHECK(std::get<ObjRef>(p).id == 0);
  FunctorData det_u = determine_mor(make_two(), 2);
  CHECK(det_u.mor_map[2] == 2);
  CHECK(pick(identity_functor(make_one())).index() == 3);  // an object reference
  CHECK_THROWS_AS(pick(identity_functor(make_iso_two())), Error);

  for (const FinCat& c : testing::small_pool()) {
    if (c.n_morphisms() > 6) continue;
    for (ObjId o = 0; o < c.n_objects; ++o) {
      FunctorData f = determine_obj(c, o);
      CHECK(check_functor(f));
      Value back = pick(f);
      CHECK(std::get<ObjRef>(back).id == o);
      CHECK(determine(c, back) == f);
    }
    for (MorId m = 0; m < c.n_morphisms(); ++m) {
      FunctorData f = determine_mor(c, m);
      CHECK(check_functor(f));
      Value back = pick(f);
      CHECK(std::get<MorRef>(back).id == m);
      CHECK(determine(c, back) == f);
    }
  }
}

TEST_CASE("hom sets") {
  CHECK(hom_set(make_two(), 0, 1) == std::vector<MorId>{2});
  CHECK(hom_set(make_iso_two(), 0, 0) == std::vector<MorId>{0});
  CHECK_THROWS_AS(hom_set(make_zero(), 0, 0), Error);
  CHECK_THROWS_AS(hom_set(make_two(), 0, 5), Error);
}

TEST_CASE("relabeling produces isomorphic valid tables") {
  std::mt19937 rng(7);
  for (const FinCat& c : testing::small_pool(1, false)) {
    auto [shuffled, wit] = shuffle(c, rng);
    CHECK(validate_category(shuffled).empty());
    CHECK(check_functor(wit));
    CHECK(shuffled.n_objects == c.n_objects);
    CHECK(shuffled.n_morphisms() == c.n_morphisms());
  }
}

TEST_CASE("exact keys separate distinct tables") {
  auto pool = testing::small_pool(3, false);
  for (size_t i = 0; i < pool.size(); ++i)
    for (size_t j = 0; j < pool.size(); ++j)
      CHECK((exact_key(pool[i]) == exact_key(pool[j])) == (pool[i] == pool[j]));
}
