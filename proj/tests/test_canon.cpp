#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "sammy/canon.hpp"
#include "sammy/construct.hpp"
#include "test_helpers.hpp"

using namespace sammy;
namespace tst = sammy::testing;

TEST_CASE("canonical forms are relabeling invariants") {
  std::mt19937 rng(99);
  for (const FinCat& c : tst::small_pool(31, false)) {
    CanonicalForm base = canonical(c);
    CHECK(validate_category(base.table).empty());
    for (int i = 0; i < 5; ++i) {
      auto [s, wit] = shuffle(c, rng);
      CHECK(canonical(s).key == base.key);
    }
  }
  CHECK(canonical(make_zero()).table == make_zero());
}

TEST_CASE("canonical forms separate non-isomorphic categories") {
  // the distinct two-object categories with at most three morphisms:
  // discrete, the single arrow, and one object collapsed away entirely
  FinCat d2 = make_discrete(2);
  FinCat two = make_two();
  FinCat two_op = opposite(make_two());
  CHECK(canonical(d2).key != canonical(two).key);
  CHECK(canonical(two).key == canonical(two_op).key);  // self-dual
  CHECK(canonical(two).key != canonical(make_iso_two()).key);
  std::set<std::string> keys;
  for (const FinCat& c : tst::small_pool(37, false)) keys.insert(canonical(c).key);
  CHECK(keys.size() >= 8);
}

TEST_CASE("isomorphism search agrees with canonical equality") {
  auto pool = tst::small_pool(41);
  for (size_t i = 0; i < pool.size(); ++i)
    for (size_t j = 0; j < pool.size(); ++j) {
      bool canon_equal = canonical(pool[i]).key == canonical(pool[j]).key;
      auto wit = isomorphic(pool[i], pool[j]);
      CHECK(wit.has_value() == canon_equal);
      if (wit) {
        CHECK(check_functor(*wit));
        // the witness is invertible: bijective on objects and morphisms
        std::set<ObjId> objs(wit->obj_map.begin(), wit->obj_map.end());
        std::set<MorId> mors(wit->mor_map.begin(), wit->mor_map.end());
        CHECK(objs.size() == wit->obj_map.size());
        CHECK(mors.size() == wit->mor_map.size());
      }
    }
}

TEST_CASE("named isomorphism facts") {
  CHECK(isomorphic(make_two(), opposite(make_two())).has_value());
  CHECK(!isomorphic(make_two(), make_iso_two()).has_value());
  CHECK(isomorphic(pow(make_two(), make_two()), make_chain(3)).has_value());
}

TEST_CASE("automorphism counts and entropy") {
  CHECK(automorphisms(make_one()) == 1);
  CHECK(automorphisms(make_two()) == 1);
  CHECK(automorphisms(make_iso_two()) == 2);
  CHECK(automorphisms(make_discrete(3)) == 6);
  CHECK(entropy(make_one()) == doctest::Approx(0.0));
  CHECK(entropy(make_two()) == doctest::Approx(0.0));
  CHECK(entropy(make_discrete(3)) == doctest::Approx(std::log2(6.0)).epsilon(1e-12));

  std::mt19937 rng(5);
  for (const FinCat& c : {make_discrete(3), make_chain(3), make_iso_two()}) {
    double h = entropy(c);
    for (int i = 0; i < 10; ++i) CHECK(entropy(shuffle(c, rng).first) == h);
  }
}

TEST_CASE("equivalence of categories") {
  CHECK(equivalent(make_iso_two(), make_one()));
  CHECK(!equivalent(make_two(), make_one()));
  for (const FinCat& c : tst::small_pool(47)) CHECK(equivalent(c, skeleton(c).first));

  SUBCASE("equivalence relation laws on the pool") {
    auto pool = tst::small_pool(53, false);
    pool.push_back(make_iso_two());
    for (size_t i = 0; i < pool.size(); ++i) {
      CHECK(equivalent(pool[i], pool[i]));
      for (size_t j = 0; j < pool.size(); ++j) {
        CHECK(equivalent(pool[i], pool[j]) == equivalent(pool[j], pool[i]));
        for (size_t k = 0; k < pool.size(); ++k)
          if (equivalent(pool[i], pool[j]) && equivalent(pool[j], pool[k]))
            CHECK(equivalent(pool[i], pool[k]));
      }
    }
  }
}

TEST_CASE("canonical keys of non-category values") {
  std::mt19937 rng(61);
  FunctorData s = constant_functor(ConstantFun::S);
  CHECK(canonical_key(Value{s}) == canonical_key(Value{s}));
  // a shuffled copy of a functor transports to the same key
  auto [shuffled_cod, wit] = shuffle(make_two(), rng);
  FunctorData moved = compose_functors(wit, s);
  CHECK(canonical_key(Value{moved}) == canonical_key(Value{s}));
  CHECK(canonical_key(Value{constant_functor(ConstantFun::T)}) != canonical_key(Value{s}));
  CHECK(canonical_key(Value{ObjRef{make_two(), 0}}) != canonical_key(Value{ObjRef{make_two(), 1}}));
}
