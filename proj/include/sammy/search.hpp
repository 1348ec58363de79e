#pragma once

#include <map>
#include <string>
#include <vector>

#include "sammy/json_io.hpp"
#include "sammy/lang.hpp"

namespace sammy {

struct SearchBudget {
  int max_len = 6;
  int max_objects = 12;
  int max_morphisms = 40;
  long max_states = 200000;
  int workers = 0;  // 0 = all available; 1 = the serial reference path

  RunLimits run_limits() const { return {1000000, max_objects, max_morphisms}; }
};

enum class SearchMode { UpToIso, Exact };

/// Result of a shortest-program search. Lengths are exact for the
/// straight-line fragment whenever `exact` is set; with branching allowed
/// they are upper bounds, which `note` spells out.
struct ComplexityReport {
  std::string target_key;  // canonical (or exact-mode) key of the target
  bool found = false;
  int k = -1;
  bool exact = false;
  std::string witness;
  std::string status;  // "found" or "budget-exhausted"; exact marks a full exhaust
  SearchMode mode = SearchMode::UpToIso;
  SearchBudget budget;
  std::vector<long> states_per_depth;
  std::vector<long> categories_per_depth;  // distinct canonical categories first reached
  long distinct_values = 0;
  std::string note;
};

ComplexityReport k_search(const Value& target,
                          const std::vector<std::pair<std::string, Value>>& given,
                          SearchMode mode, const SearchBudget& budget);

/// One breadth-first pass answering many targets over the same inputs.
std::vector<ComplexityReport> k_search_many(const std::vector<Value>& targets,
                                            const std::vector<std::pair<std::string, Value>>& given,
                                            SearchMode mode, const SearchBudget& budget);

Json report_to_json(const ComplexityReport& r);
std::string report_to_text(const ComplexityReport& r);

// ---------------------------------------------------------------------------
// Evaluation kernel. Each depth gathers the distinct operation applications
// the frontier can make; only the ones not seen before are evaluated, the
// serial path being the reference the OpenMP path must match entry for entry.
// An empty output list records an application that does not go through
// (type mismatch, size bound, missing universal).

struct OpApplication {
  int op_index;
  std::vector<Value> args;
};

std::vector<Value> eval_application(const OpApplication& app, const RunLimits& limits);
std::vector<std::vector<Value>> eval_applications_serial(const std::vector<OpApplication>& apps,
                                                         const RunLimits& limits);
std::vector<std::vector<Value>> eval_applications_parallel(const std::vector<OpApplication>& apps,
                                                           const RunLimits& limits, int workers);

// ---------------------------------------------------------------------------
// Inequality experiments

struct TheoremRow {
  std::string theorem;
  std::string instance;
  long lhs = 0;         // measured complexity of the composite target
  long rhs = 0;         // sum of the parts plus the macro constant
  bool holds = false;
  bool conclusive = false;
  std::string detail;
};

struct TheoremReport {
  std::map<std::string, int> constants;  // macro name -> statement count
  std::vector<TheoremRow> rows;
};

TheoremReport theorem_constants(const SearchBudget& budget);
Json theorem_report_to_json(const TheoremReport& r);
std::string theorem_report_to_text(const TheoremReport& r);

struct EquivalenceClassRow {
  std::vector<std::string> members;
  std::vector<long> ks;
  long spread = 0;
};

struct EquivalenceReport {
  int conversion_constant = 0;  // statement count of the skeleton macro
  std::vector<EquivalenceClassRow> classes;
  bool holds = false;
};

EquivalenceReport equivalence_invariance_experiment(
    const std::vector<std::pair<std::string, FinCat>>& pool, const SearchBudget& budget);
Json equivalence_report_to_json(const EquivalenceReport& r);
std::string equivalence_report_to_text(const EquivalenceReport& r);

}  // namespace sammy
