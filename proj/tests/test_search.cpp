#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "sammy/canon.hpp"
#include "sammy/search.hpp"
#include "sammy/stdlib.hpp"
#include "test_helpers.hpp"

using namespace sammy;
namespace tst = sammy::testing;

namespace {

// independent oracle: enumerate raw straight-line programs over a reduced
// operation alphabet and run them through the interpreter
long oracle_min_length(const Value& target, int max_len) {
  std::vector<std::string> op_texts = {"Zero()", "One()", "Two()", "IsoTwo()", "S()", "T()"};
  // grow programs one statement at a time; every statement may also apply a
  // one- or two-argument operation to earlier variables
  std::vector<std::string> unary = {"Ident", "Op", "Source", "Target"};
  std::vector<std::string> binary = {"Coprod", "Pow"};
  long best = -1;
  std::vector<std::string> lines;
  auto attempt = [&](int len) {
    std::string text;
    for (int i = 0; i < len; ++i) text += "V" + std::to_string(i) + " = " + lines[i] + "\n";
    text += "Return V" + std::to_string(len - 1) + "\n";
    SammyProgram p;
    try {
      p = parse_program(text);
    } catch (const Error&) {
      return false;
    }
    try {
      RunLimits lim;
      lim.max_objects = 16;
      lim.max_morphisms = 64;
      Value v = run_program(p, {}, lim);
      return canonical_key(v) == canonical_key(target);
    } catch (const Error&) {
      return false;
    }
  };
  std::function<void(int, int)> rec = [&](int len, int depth) {
    if (best >= 0 && depth >= best) return;
    std::vector<std::string> cands = op_texts;
    for (int i = 0; i < depth; ++i) {
      for (const auto& u : unary) cands.push_back(u + "(V" + std::to_string(i) + ")");
      for (int j = 0; j < depth; ++j)
        for (const auto& b : binary)
          cands.push_back(b + "(V" + std::to_string(i) + ", V" + std::to_string(j) + ")");
    }
    for (const auto& c : cands) {
      lines.push_back(c);
      if (attempt(depth + 1)) {
        if (best < 0 || depth + 1 < best) best = depth + 1;
      } else if (depth + 1 < max_len) {
        rec(len, depth + 1);
      }
      lines.pop_back();
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_CASE("known complexities of the constants") {
  SearchBudget b;
  for (auto& [v, k] : std::vector<std::pair<Value, int>>{{Value{make_zero()}, 1},
                                                         {Value{make_one()}, 1},
                                                         {Value{make_two()}, 1},
                                                         {Value{make_iso_two()}, 1}}) {
    ComplexityReport r = k_search(v, {}, SearchMode::UpToIso, b);
    CHECK(r.found);
    CHECK(r.k == k);
    CHECK(r.exact);
  }
}

TEST_CASE("a given target costs nothing") {
  ComplexityReport r =
      k_search(Value{make_iso_two()}, {{"G", Value{make_iso_two()}}}, SearchMode::UpToIso, {});
  CHECK(r.found);
  CHECK(r.k == 0);
  CHECK(r.witness == "Input G : Cat\nReturn G\n");
}

TEST_CASE("two-step targets") {
  SearchBudget b;
  b.max_len = 3;
  ComplexityReport r =
      k_search(Value{coproduct(make_one(), make_one()).cat}, {}, SearchMode::UpToIso, b);
  CHECK(r.found);
  CHECK(r.k == 2);

  ComplexityReport r2 = k_search(Value{make_chain(3)}, {}, SearchMode::UpToIso, b);
  CHECK(r2.found);
  CHECK(r2.k == 2);  // an exponent of the arrow category reaches the 3-chain
}

TEST_CASE("witness replay reproduces the target") {
  SearchBudget b;
  b.max_len = 4;
  std::vector<Value> targets = {Value{make_discrete(3)}, Value{product(make_two(), make_two()).cat},
                                Value{constant_functor(ConstantFun::Bang21)}};
  for (const Value& t : targets) {
    ComplexityReport r = k_search(t, {}, SearchMode::UpToIso, b);
    REQUIRE(r.found);
    SammyProgram p = parse_program(r.witness);
    CHECK(p.length() == r.k);
    RunLimits lim;
    lim.max_objects = b.max_objects;
    lim.max_morphisms = b.max_morphisms;
    Value v = run_program(p, {}, lim);
    CHECK(canonical_key(v) == canonical_key(t));
  }
}

TEST_CASE("minimality against the brute-force program oracle") {
  std::vector<Value> targets = {Value{make_two()}, Value{make_discrete(2)},
                                Value{constant_functor(ConstantFun::T)},
                                Value{opposite(make_two())}};
  SearchBudget b;
  b.max_len = 3;
  for (const Value& t : targets) {
    long want = oracle_min_length(t, 3);
    REQUIRE(want >= 1);
    ComplexityReport r = k_search(t, {}, SearchMode::UpToIso, b);
    CHECK(r.found);
    CHECK(r.k == want);
  }
}

TEST_CASE("modes: shuffles collapse only up to isomorphism") {
  std::mt19937 rng(2024);
  auto [shuffled, wit] = shuffle(make_chain(3), rng);
  ComplexityReport iso = k_search(Value{shuffled}, {}, SearchMode::UpToIso, {});
  ComplexityReport orig = k_search(Value{make_chain(3)}, {}, SearchMode::UpToIso, {});
  CHECK(iso.found);
  CHECK(orig.found);
  CHECK(iso.k == orig.k);

  SearchBudget b;
  b.max_len = 2;
  ComplexityReport exact = k_search(Value{shuffled}, {}, SearchMode::Exact, b);
  ComplexityReport exact_orig = k_search(Value{pow(make_two(), make_two())}, {}, SearchMode::Exact, b);
  CHECK(exact_orig.found);  // the literal table of the exponent is reachable
  CHECK(!exact.found);      // the shuffled table is not, within this budget
}

TEST_CASE("monotonicity in the given environment") {
  Value target{product(make_two(), make_two()).cat};
  SearchBudget b;
  b.max_len = 5;
  ComplexityReport plain = k_search(target, {}, SearchMode::UpToIso, b);
  ComplexityReport given_two =
      k_search(target, {{"C", Value{make_two()}}}, SearchMode::UpToIso, b);
  ComplexityReport given_more =
      k_search(target, {{"C", Value{make_two()}}, {"O", Value{make_one()}}}, SearchMode::UpToIso,
               b);
  REQUIRE(plain.found);
  REQUIRE(given_two.found);
  REQUIRE(given_more.found);
  CHECK(given_two.k <= plain.k);
  CHECK(given_more.k <= given_two.k);
}

TEST_CASE("budget exhaustion reports honestly") {
  SearchBudget tiny;
  tiny.max_len = 0;
  ComplexityReport r = k_search(Value{make_two()}, {}, SearchMode::UpToIso, tiny);
  CHECK(!r.found);
  CHECK(r.status == "budget-exhausted");
  CHECK(r.exact);  // the whole (empty) program space was covered

  SearchBudget capped;
  capped.max_len = 6;
  capped.max_states = 3;
  ComplexityReport r2 =
      k_search(Value{make_chain(6)}, {}, SearchMode::UpToIso, capped);
  CHECK(!r2.found);
  CHECK(r2.status == "budget-exhausted");
  CHECK(!r2.exact);
}

TEST_CASE("serial and parallel application evaluation agree") {
  // a representative batch: every operation over a small mixed value pool
  std::vector<Value> pool = {Value{make_one()},
                             Value{make_two()},
                             Value{make_iso_two()},
                             Value{constant_functor(ConstantFun::S)},
                             Value{constant_functor(ConstantFun::T)},
                             Value{identity_nat(constant_functor(ConstantFun::S))},
                             Value{ObjRef{make_two(), 1}}};
  std::vector<OpApplication> apps;
  for (size_t oi = 0; oi < op_registry().size(); ++oi) {
    const OpSpec& op = op_registry()[oi];
    if (op.max_args == 0) {
      apps.push_back({static_cast<int>(oi), {}});
    } else if (op.max_args == 1) {
      for (const Value& v : pool) apps.push_back({static_cast<int>(oi), {v}});
    } else if (op.min_args == 2) {
      for (const Value& a : pool)
        for (const Value& b : pool) apps.push_back({static_cast<int>(oi), {a, b}});
    }
  }
  RunLimits lim;
  lim.max_objects = 12;
  lim.max_morphisms = 40;
  auto serial = eval_applications_serial(apps, lim);
  long nonempty = 0;
  for (const auto& outs : serial) nonempty += outs.empty() ? 0 : 1;
  CHECK(nonempty > 20);  // the batch genuinely exercises the kernel
  for (int workers : {2, 4}) {
    auto parallel = eval_applications_parallel(apps, lim, workers);
    REQUIRE(serial.size() == parallel.size());
    for (size_t i = 0; i < serial.size(); ++i) {
      REQUIRE(serial[i].size() == parallel[i].size());
      for (size_t o = 0; o < serial[i].size(); ++o)
        CHECK(exact_key(serial[i][o]) == exact_key(parallel[i][o]));
    }
  }
}

TEST_CASE("search results are worker-count independent") {
  for (SearchMode mode : {SearchMode::UpToIso, SearchMode::Exact}) {
    SearchBudget b1;
    b1.max_len = 3;
    b1.workers = 1;
    SearchBudget b4 = b1;
    b4.workers = 4;
    Value target{product(make_two(), make_two()).cat};
    ComplexityReport r1 = k_search(target, {}, mode, b1);
    ComplexityReport r4 = k_search(target, {}, mode, b4);
    CHECK(r1.found == r4.found);
    CHECK(r1.k == r4.k);
    CHECK(r1.witness == r4.witness);
    CHECK(r1.states_per_depth == r4.states_per_depth);
    CHECK(report_to_json(r1).dump() == report_to_json(r4).dump());
  }
}

TEST_CASE("theorem rows hold with the measured constants") {
  SearchBudget b;
  TheoremReport rep = theorem_constants(b);
  CHECK(rep.constants.at("product_pair") == 4);
  CHECK(rep.constants.at("double_self") == 3);
  CHECK(rep.constants.at("target_of") == 1);
  CHECK(rep.constants.at("compose_tri") == 1);
  CHECK(rep.constants.at("kan_pair") == 1);
  CHECK(!rep.rows.empty());
  for (const TheoremRow& row : rep.rows) {
    CAPTURE(row.theorem);
    CAPTURE(row.instance);
    CAPTURE(row.detail);
    CHECK(row.conclusive);
    CHECK(row.holds);
  }
}

TEST_CASE("equivalence classes have bounded complexity spread") {
  std::mt19937 rng(31337);
  std::vector<std::pair<std::string, FinCat>> pool = {
      {"One", make_one()},
      {"IsoTwo", make_iso_two()},
      {"Two", make_two()},
      {"Two-shuffled", shuffle(make_two(), rng).first},
      {"chain3", make_chain(3)},
      {"discrete2", make_discrete(2)},
  };
  EquivalenceReport rep = equivalence_invariance_experiment(pool, {});
  CHECK(rep.conversion_constant == 6);
  CHECK(rep.holds);
  // One and IsoTwo fall in the same class; the arrow sits elsewhere
  bool found_one_iso = false;
  for (const auto& row : rep.classes)
    if (row.members.size() == 2 &&
        ((row.members[0] == "One" && row.members[1] == "IsoTwo") ||
         (row.members[0] == "IsoTwo" && row.members[1] == "One"))) {
      found_one_iso = true;
      CHECK(row.spread == 0);
    }
  CHECK(found_one_iso);
}
