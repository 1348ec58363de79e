// Command-line front end: runs programs over finite categories, validates and
// compares tables, and drives the shortest-program experiments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sammy/canon.hpp"
#include "sammy/json_io.hpp"
#include "sammy/lang.hpp"
#include "sammy/search.hpp"
#include "sammy/stdlib.hpp"

using namespace sammy;

namespace {

struct CommonLimits {
  long max_steps = 10000;
  int max_objects = -1;
  int max_morphisms = -1;
  long max_states = 200000;
  int max_len = 6;
  int workers = 0;
  std::string mode = "iso";
  bool json = false;
};

void add_limit_flags(CLI::App* cmd, CommonLimits& lim) {
  cmd->add_option("--max-steps", lim.max_steps, "statement execution budget");
  cmd->add_option("--max-objects", lim.max_objects, "largest object count a value may have");
  cmd->add_option("--max-morphisms", lim.max_morphisms,
                  "largest morphism count; also bounds quotient closures");
  cmd->add_option("--max-states", lim.max_states, "search state budget");
  cmd->add_option("--max-len", lim.max_len, "longest program the search considers");
  cmd->add_option("--workers", lim.workers, "worker threads (0 = all, 1 = serial reference)");
}

Env load_env(const std::vector<std::string>& bindings) {
  Env env;
  for (const std::string& b : bindings) {
    auto eq = b.find('=');
    if (eq == std::string::npos)
      fail(ErrKind::Io, "input binding '" + b + "' is not NAME=path.json");
    env[b.substr(0, eq)] = parse_value_file(b.substr(eq + 1));
  }
  return env;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrKind::Io, "cannot open " + path);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

FinCat load_cat(const std::string& path) {
  Value v = parse_value_file(path);
  if (kind_of(v) != ValueKind::Cat) fail(ErrKind::Type, path + " does not hold a category");
  return std::get<FinCat>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-category calculator and shortest-program search"};
  app.require_subcommand(1);

  CommonLimits lim;

  auto* run = app.add_subcommand("run", "run a program file");
  std::string program_path;
  std::vector<std::string> inputs;
  run->add_option("program", program_path, "program file")->required();
  run->add_option("-i,--input", inputs, "program input as NAME=path.json");
  add_limit_flags(run, lim);

  auto* check = app.add_subcommand("check", "validate a category table");
  std::string check_path;
  check->add_option("category", check_path, "category JSON file")->required();

  auto* iso = app.add_subcommand("iso", "search for an isomorphism between two categories");
  std::string iso_a, iso_b;
  iso->add_option("a", iso_a)->required();
  iso->add_option("b", iso_b)->required();

  auto* equiv = app.add_subcommand("equiv", "decide equivalence of two categories");
  std::string eq_a, eq_b;
  equiv->add_option("a", eq_a)->required();
  equiv->add_option("b", eq_b)->required();

  auto* skel = app.add_subcommand("skeleton", "skeleton and its retraction");
  std::string skel_path;
  skel->add_option("category", skel_path)->required();

  auto* ent = app.add_subcommand("entropy", "automorphism count and its log2");
  std::string ent_path;
  ent->add_option("category", ent_path)->required();

  auto* search = app.add_subcommand("search", "shortest straight-line program for a target");
  std::string target_path;
  std::vector<std::string> given;
  search->add_option("target", target_path, "target value JSON")->required();
  search->add_option("-g,--given", given, "given value as NAME=path.json");
  search->add_option("--mode", lim.mode, "iso (up to isomorphism) or eq (table equality)")
      ->check(CLI::IsMember({"iso", "eq"}));
  search->add_flag("--json", lim.json, "emit the report as JSON");
  add_limit_flags(search, lim);

  auto* theorems = app.add_subcommand("theorems", "inequality suite with measured constants");
  theorems->add_flag("--json", lim.json, "emit the table as JSON");
  add_limit_flags(theorems, lim);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) {
      SammyProgram p = parse_program(read_file(program_path));
      RunLimits rl{lim.max_steps, lim.max_objects < 0 ? 4096 : lim.max_objects,
                   lim.max_morphisms < 0 ? 512 : lim.max_morphisms};
      Value v = run_program(p, load_env(inputs), rl);
      emit(value_to_json(v));
      return 0;
    }
    if (*check) {
      FinCat c = cat_from_json(load_json_file(check_path));
      auto violations = validate_category(c);
      Json j = Json::array();
      for (const Violation& v : violations) j.push_back({{"law", v.law}, {"detail", v.detail}});
      emit(j);
      return violations.empty() ? 0 : 9;
    }
    if (*iso) {
      auto wit = isomorphic(load_cat(iso_a), load_cat(iso_b));
      Json j;
      j["isomorphic"] = wit.has_value();
      j["witness"] = wit ? to_json(*wit) : Json(nullptr);
      emit(j);
      return 0;
    }
    if (*equiv) {
      Json j;
      j["equivalent"] = equivalent(load_cat(eq_a), load_cat(eq_b));
      emit(j);
      return 0;
    }
    if (*skel) {
      auto [sk, q] = skeleton(load_cat(skel_path));
      Json j;
      j["skeleton"] = to_json(sk);
      j["retraction"] = to_json(q);
      emit(j);
      return 0;
    }
    if (*ent) {
      FinCat c = load_cat(ent_path);
      Json j;
      j["automorphisms"] = automorphisms(c);
      j["entropy"] = entropy(c);
      emit(j);
      return 0;
    }
    if (*search) {
      Value target = parse_value_file(target_path);
      std::vector<std::pair<std::string, Value>> env;
      for (auto& [name, v] : load_env(given)) env.push_back({name, v});
      SearchBudget budget;
      budget.max_len = lim.max_len;
      if (lim.max_objects > 0) budget.max_objects = lim.max_objects;
      if (lim.max_morphisms > 0) budget.max_morphisms = lim.max_morphisms;
      budget.max_states = lim.max_states;
      budget.workers = lim.workers;
      SearchMode mode = lim.mode == "eq" ? SearchMode::Exact : SearchMode::UpToIso;
      ComplexityReport r = k_search(target, env, mode, budget);
      if (lim.json)
        emit(report_to_json(r));
      else
        std::cout << report_to_text(r);
      return r.found ? 0 : static_cast<int>(ErrKind::Budget);
    }
    if (*theorems) {
      SearchBudget budget;
      budget.max_len = lim.max_len;
      budget.max_states = lim.max_states;
      budget.workers = lim.workers;
      if (lim.max_objects > 0) budget.max_objects = lim.max_objects;
      if (lim.max_morphisms > 0) budget.max_morphisms = lim.max_morphisms;
      TheoremReport r = theorem_constants(budget);
      if (lim.json)
        emit(theorem_report_to_json(r));
      else
        std::cout << theorem_report_to_text(r);
      for (const TheoremRow& row : r.rows)
        if (!row.holds) return 9;
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ErrKind::Internal);
  }
  return 0;
}
