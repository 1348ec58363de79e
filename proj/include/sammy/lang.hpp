#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sammy/construct.hpp"
#include "sammy/core.hpp"

namespace sammy {

/// Bounds applied while a program runs. max_morphisms doubles as the
/// coequalizer closure bound.
struct RunLimits {
  long max_steps = 10000;
  int max_objects = 4096;
  int max_morphisms = 512;

  SizeLimits size() const { return {max_objects, max_morphisms}; }
};

struct OpCall {
  std::string op;
  std::vector<std::string> args;
};

struct Statement {
  enum class Kind { Assign, If, Goto, Return, Input };
  Kind kind = Kind::Assign;
  std::optional<std::string> label;
  std::vector<std::string> targets;  // Assign
  OpCall call;                       // Assign
  std::string lhs, rhs;              // If
  std::string target_label;          // If / Goto
  std::string var;                   // Return / Input
  ValueKind input_kind = ValueKind::Cat;
  int line = 0;
};

struct SammyProgram {
  std::vector<Statement> statements;
  std::vector<std::pair<std::string, ValueKind>> inputs;

  /// The operation-count metric: every Assign/If/Goto statement counts one;
  /// Return and Input lines are free.
  int length() const;
  std::string to_text() const;
};

SammyProgram parse_program(const std::string& text);

using Env = std::map<std::string, Value>;

Value run_program(const SammyProgram& p, const Env& env, const RunLimits& limits = {});

// ---------------------------------------------------------------------------
// The operation registry, shared by the interpreter and the program search.

struct OpSpec {
  std::string name;
  int min_args = 0;
  int max_args = 0;
  int n_outputs = 1;
  /// Cheap structural precheck; evaluation on passing arguments may still
  /// raise SizeBound or NoUniversal, but not a type error.
  std::function<bool(const std::vector<const Value*>&)> applicable;
  std::function<std::vector<Value>(const std::vector<const Value*>&, const RunLimits&)> eval;
};

const std::vector<OpSpec>& op_registry();
const OpSpec* find_op(const std::string& name);

/// Everything compares as a transformation: categories and functors promote
/// to their identity transformations, references promote through determine.
NatTransData promote_to_nat(const Value& v);
bool values_equal_promoted(const Value& a, const Value& b);

}  // namespace sammy
