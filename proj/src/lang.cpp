#include "sammy/lang.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace sammy {

int SammyProgram::length() const {
  int n = 0;
  for (const Statement& s : statements)
    if (s.kind == Statement::Kind::Assign || s.kind == Statement::Kind::If ||
        s.kind == Statement::Kind::Goto)
      n++;
  return n;
}

std::string SammyProgram::to_text() const {
  std::string out;
  for (const Statement& s : statements) {
    if (s.label) out += *s.label + ": ";
    switch (s.kind) {
      case Statement::Kind::Assign: {
        for (size_t i = 0; i < s.targets.size(); ++i) {
          if (i) out += ", ";
          out += s.targets[i];
        }
        out += " = " + s.call.op + "(";
        for (size_t i = 0; i < s.call.args.size(); ++i) {
          if (i) out += ", ";
          out += s.call.args[i];
        }
        out += ")";
        break;
      }
      case Statement::Kind::If:
        out += "If " + s.lhs + " == " + s.rhs + " Goto " + s.target_label;
        break;
      case Statement::Kind::Goto: out += "Goto " + s.target_label; break;
      case Statement::Kind::Return: out += "Return " + s.var; break;
      case Statement::Kind::Input:
        out += "Input " + s.var + " : " + kind_name(s.input_kind);
        break;
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct LineTokens {
  std::vector<std::string> toks;
  int line;
};

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  fail(ErrKind::Parse, "line " + std::to_string(line) + ": " + msg);
}

std::vector<LineTokens> tokenize(const std::string& text) {
  std::vector<LineTokens> lines;
  int line_no = 1;
  std::vector<std::string> cur;
  for (size_t i = 0; i <= text.size(); ++i) {
    char c = i < text.size() ? text[i] : '\n';
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') i++;
      c = '\n';
    }
    if (c == '\n') {
      if (!cur.empty()) lines.push_back({cur, line_no});
      cur.clear();
      line_no++;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (ident_start(c)) {
      std::string tok(1, c);
      while (i + 1 < text.size() && ident_char(text[i + 1])) tok += text[++i];
      cur.push_back(tok);
      continue;
    }
    if (c == '=' && i + 1 < text.size() && text[i + 1] == '=') {
      cur.push_back("==");
      i++;
      continue;
    }
    if (c == '=' || c == ',' || c == ':' || c == '(' || c == ')') {
      cur.push_back(std::string(1, c));
      continue;
    }
    parse_fail(line_no, std::string("unexpected character '") + c + "'");
  }
  return lines;
}

ValueKind parse_kind(const std::string& s, int line) {
  if (s == "Cat") return ValueKind::Cat;
  if (s == "Functor") return ValueKind::Functor;
  if (s == "NatTrans") return ValueKind::NatTrans;
  if (s == "Obj") return ValueKind::Obj;
  if (s == "Mor") return ValueKind::Mor;
  parse_fail(line, "unknown input kind '" + s + "'");
}

bool is_keyword(const std::string& s) {
  return s == "If" || s == "Goto" || s == "Return" || s == "Input";
}

}  // namespace

SammyProgram parse_program(const std::string& text) {
  SammyProgram prog;
  auto lines = tokenize(text);

  for (const LineTokens& lt : lines) {
    const auto& t = lt.toks;
    Statement s;
    s.line = lt.line;
    size_t i = 0;
    auto expect = [&](const std::string& what) -> const std::string& {
      if (i >= t.size()) parse_fail(lt.line, "expected " + what);
      return t[i++];
    };
    auto expect_tok = [&](const std::string& tok) {
      if (i >= t.size() || t[i] != tok) parse_fail(lt.line, "expected '" + tok + "'");
      i++;
    };
    auto expect_ident = [&](const char* what) -> std::string {
      const std::string& tok = expect(what);
      if (!ident_start(tok[0]) || is_keyword(tok))
        parse_fail(lt.line, std::string("expected ") + what + ", got '" + tok + "'");
      return tok;
    };

    if (t[0] == "Input") {
      i = 1;
      s.kind = Statement::Kind::Input;
      s.var = expect_ident("input name");
      expect_tok(":");
      s.input_kind = parse_kind(expect("input kind"), lt.line);
      if (i != t.size()) parse_fail(lt.line, "trailing tokens after input declaration");
      prog.statements.push_back(s);
      continue;
    }

    if (t.size() >= 2 && t[1] == ":" && ident_start(t[0][0]) && !is_keyword(t[0])) {
      s.label = t[0];
      i = 2;
    }

    const std::string head = expect("a statement");
    if (head == "Goto") {
      s.kind = Statement::Kind::Goto;
      s.target_label = expect_ident("label");
    } else if (head == "Return") {
      s.kind = Statement::Kind::Return;
      s.var = expect_ident("variable");
    } else if (head == "If") {
      s.kind = Statement::Kind::If;
      s.lhs = expect_ident("variable");
      expect_tok("==");
      s.rhs = expect_ident("variable");
      expect_tok("Goto");
      s.target_label = expect_ident("label");
    } else {
      s.kind = Statement::Kind::Assign;
      i--;  // head is the first target
      s.targets.push_back(expect_ident("variable"));
      while (i < t.size() && t[i] == ",") {
        i++;
        s.targets.push_back(expect_ident("variable"));
      }
      expect_tok("=");
      s.call.op = expect_ident("operation name");
      expect_tok("(");
      if (i < t.size() && t[i] != ")") {
        s.call.args.push_back(expect_ident("argument"));
        while (i < t.size() && t[i] == ",") {
          i++;
          s.call.args.push_back(expect_ident("argument"));
        }
      }
      expect_tok(")");
    }
    if (i != t.size()) parse_fail(lt.line, "trailing tokens");
    prog.statements.push_back(s);
  }

  // static checks: labels, operations, arities, definitions
  std::set<std::string> labels;
  for (const Statement& s : prog.statements)
    if (s.label && !labels.insert(*s.label).second)
      parse_fail(s.line, "duplicate label '" + *s.label + "'");
  std::set<std::string> defined;
  for (const Statement& s : prog.statements) {
    auto need = [&](const std::string& v) {
      if (!defined.count(v))
        parse_fail(s.line, "variable '" + v +
                               "' is used before it is defined and is not declared as an input");
    };
    switch (s.kind) {
      case Statement::Kind::Input:
        prog.inputs.push_back({s.var, s.input_kind});
        defined.insert(s.var);
        break;
      case Statement::Kind::Assign: {
        if (s.call.op == "Cat")
          parse_fail(s.line, "the category of all categories has no finite table representation");
        const OpSpec* op = find_op(s.call.op);
        if (!op) parse_fail(s.line, "unknown operation '" + s.call.op + "'");
        int n = static_cast<int>(s.call.args.size());
        if (n < op->min_args || n > op->max_args)
          parse_fail(s.line,
                     s.call.op + " takes " + std::to_string(op->min_args) +
                         (op->min_args == op->max_args ? "" : ".." + std::to_string(op->max_args)) +
                         " arguments, got " + std::to_string(n));
        if (static_cast<int>(s.targets.size()) > op->n_outputs)
          parse_fail(s.line, s.call.op + " yields " + std::to_string(op->n_outputs) +
                                 " results, cannot bind " + std::to_string(s.targets.size()));
        for (const std::string& a : s.call.args) need(a);
        for (const std::string& v : s.targets) defined.insert(v);
        break;
      }
      case Statement::Kind::If:
        need(s.lhs);
        need(s.rhs);
        if (!labels.count(s.target_label))
          parse_fail(s.line, "unknown label '" + s.target_label + "'");
        break;
      case Statement::Kind::Goto:
        if (!labels.count(s.target_label))
          parse_fail(s.line, "unknown label '" + s.target_label + "'");
        break;
      case Statement::Kind::Return: need(s.var); break;
    }
  }
  return prog;
}

// ---------------------------------------------------------------------------
// Operation registry

namespace {

const FinCat& cat_two() {
  static const FinCat c = make_two();
  return c;
}
const FinCat& cat_iso_two() {
  static const FinCat c = make_iso_two();
  return c;
}
const FinCat& cat_one() {
  static const FinCat c = make_one();
  return c;
}

bool is_cat(const Value& v) { return kind_of(v) == ValueKind::Cat; }
bool is_fun(const Value& v) { return kind_of(v) == ValueKind::Functor; }
bool is_nat(const Value& v) { return kind_of(v) == ValueKind::NatTrans; }

const FinCat& as_cat(const Value& v) { return std::get<FinCat>(v); }
const FunctorData& as_fun(const Value& v) { return std::get<FunctorData>(v); }
const NatTransData& as_nat(const Value& v) { return std::get<NatTransData>(v); }

void check_output_size(const std::vector<Value>& out, const RunLimits& lim) {
  auto check = [&](const FinCat& c) {
    if (c.n_objects > lim.max_objects)
      fail(ErrKind::SizeBound, "result exceeds max_objects=" + std::to_string(lim.max_objects));
    if (c.n_morphisms() > lim.max_morphisms)
      fail(ErrKind::SizeBound, "result exceeds max_morphisms=" + std::to_string(lim.max_morphisms));
  };
  for (const Value& v : out) {
    if (const FinCat* c = std::get_if<FinCat>(&v)) check(*c);
    if (const FunctorData* f = std::get_if<FunctorData>(&v)) {
      check(f->dom);
      check(f->cod);
    }
    if (const NatTransData* t = std::get_if<NatTransData>(&v)) {
      check(t->src_fun.dom);
      check(t->src_fun.cod);
    }
  }
}

using Args = std::vector<const Value*>;

std::vector<OpSpec> make_registry() {
  std::vector<OpSpec> ops;
  auto add = [&](OpSpec spec) { ops.push_back(std::move(spec)); };

  auto constant_op = [&](const char* name, ConstantCat which) {
    add({name, 0, 0, 1, [](const Args&) { return true; },
         [which](const Args&, const RunLimits&) {
           return std::vector<Value>{constant(which)};
         }});
  };
  constant_op("Zero", ConstantCat::Zero);
  constant_op("One", ConstantCat::One);
  constant_op("Two", ConstantCat::Two);
  constant_op("IsoTwo", ConstantCat::IsoTwo);

  auto pointer_op = [&](const char* name, ConstantFun plain, ConstantFun fancy) {
    add({name, 0, 1, 1,
         [](const Args& a) {
           return a.empty() || (is_cat(*a[0]) && (as_cat(*a[0]) == cat_two() ||
                                                  as_cat(*a[0]) == cat_iso_two()));
         },
         [plain, fancy, name](const Args& a, const RunLimits&) -> std::vector<Value> {
           if (a.empty() || as_cat(*a[0]) == cat_two()) return {constant_functor(plain)};
           if (as_cat(*a[0]) == cat_iso_two()) return {constant_functor(fancy)};
           fail(ErrKind::Type,
                std::string(name) + " knows only the arrow and the isomorphism pair");
         }});
  };
  pointer_op("S", ConstantFun::S, ConstantFun::SrcOf);
  pointer_op("T", ConstantFun::T, ConstantFun::TgtOf);

  add({"Bang", 2, 2, 1,
       [](const Args& a) {
         if (!is_cat(*a[0]) || !is_cat(*a[1])) return false;
         const FinCat& dom = as_cat(*a[0]);
         const FinCat& cod = as_cat(*a[1]);
         return dom.n_objects == 0 || (cod.n_objects == 1 && cod.n_morphisms() == 1);
       },
       [](const Args& a, const RunLimits&) {
         return std::vector<Value>{bang(as_cat(*a[0]), as_cat(*a[1]))};
       }});

  add({"Ident", 1, 1, 1, [](const Args& a) { return is_cat(*a[0]) || is_fun(*a[0]); },
       [](const Args& a, const RunLimits&) -> std::vector<Value> {
         if (is_cat(*a[0])) return {identity_functor(as_cat(*a[0]))};
         return {identity_nat(as_fun(*a[0]))};
       }});

  add({"Source", 1, 1, 1, [](const Args& a) { return is_fun(*a[0]) || is_nat(*a[0]); },
       [](const Args& a, const RunLimits&) -> std::vector<Value> {
         if (is_fun(*a[0])) return {source(as_fun(*a[0]))};
         return {as_nat(*a[0]).src_fun};
       }});
  add({"Target", 1, 1, 1, [](const Args& a) { return is_fun(*a[0]) || is_nat(*a[0]); },
       [](const Args& a, const RunLimits&) -> std::vector<Value> {
         if (is_fun(*a[0])) return {target(as_fun(*a[0]))};
         return {as_nat(*a[0]).tgt_fun};
       }});

  add({"Op", 1, 1, 1, [](const Args& a) { return is_cat(*a[0]) || is_fun(*a[0]); },
       [](const Args& a, const RunLimits&) -> std::vector<Value> {
         if (is_cat(*a[0])) return {opposite(as_cat(*a[0]))};
         return {opposite(as_fun(*a[0]))};
       }});

  add({"Pick", 1, 1, 1,
       [](const Args& a) {
         if (!is_fun(*a[0])) return false;
         const FinCat& d = as_fun(*a[0]).dom;
         return d == cat_one() || d == cat_two();
       },
       [](const Args& a, const RunLimits&) { return std::vector<Value>{pick(as_fun(*a[0]))}; }});

  add({"Determine", 1, 1, 1,
       [](const Args& a) {
         return kind_of(*a[0]) == ValueKind::Obj || kind_of(*a[0]) == ValueKind::Mor;
       },
       [](const Args& a, const RunLimits&) -> std::vector<Value> {
         if (const auto* o = std::get_if<ObjRef>(a[0])) return {determine_obj(o->home, o->id)};
         const auto& m = std::get<MorRef>(*a[0]);
         return {determine_mor(m.home, m.id)};
       }});

  add({"Hcomp", 2, 2, 1,
       [](const Args& a) {
         auto dom_of = [](const Value& v) -> const FinCat* {
           if (is_fun(v)) return &as_fun(v).dom;
           if (is_nat(v)) return &as_nat(v).src_fun.dom;
           return nullptr;
         };
         auto cod_of = [](const Value& v) -> const FinCat* {
           if (is_fun(v)) return &as_fun(v).cod;
           if (is_nat(v)) return &as_nat(v).src_fun.cod;
           return nullptr;
         };
         const FinCat* inner_cod = cod_of(*a[1]);
         const FinCat* outer_dom = dom_of(*a[0]);
         return inner_cod && outer_dom && *inner_cod == *outer_dom;
       },
       [](const Args& a, const RunLimits&) -> std::vector<Value> {
         if (is_fun(*a[0]) && is_fun(*a[1]))
           return {compose_functors(as_fun(*a[0]), as_fun(*a[1]))};
         NatTransData outer = is_fun(*a[0]) ? identity_nat(as_fun(*a[0])) : as_nat(*a[0]);
         NatTransData inner = is_fun(*a[1]) ? identity_nat(as_fun(*a[1])) : as_nat(*a[1]);
         return {hcomp(outer, inner)};
       }});

  add({"Vcomp", 2, 2, 1,
       [](const Args& a) {
         return is_nat(*a[0]) && is_nat(*a[1]) && as_nat(*a[1]).tgt_fun == as_nat(*a[0]).src_fun;
       },
       [](const Args& a, const RunLimits&) {
         return std::vector<Value>{vcomp(as_nat(*a[0]), as_nat(*a[1]))};
       }});

  add({"Pow", 2, 2, 1,
       [](const Args& a) { return (is_cat(*a[0]) || is_fun(*a[0])) && is_cat(*a[1]); },
       [](const Args& a, const RunLimits& lim) -> std::vector<Value> {
         if (is_cat(*a[0])) return {pow(as_cat(*a[0]), as_cat(*a[1]), lim.size())};
         return {pow_on_functor(as_fun(*a[0]), as_cat(*a[1]), lim.size())};
       }});

  auto kan_op = [&](const char* name, KanSide side) {
    add({name, 2, 2, 2,
         [](const Args& a) {
           return is_fun(*a[0]) && is_fun(*a[1]) && as_fun(*a[0]).dom == as_fun(*a[1]).dom;
         },
         [side](const Args& a, const RunLimits& lim) {
           KanResult kr =
               kan_extension(side, as_fun(*a[0]), as_fun(*a[1]), lim.size(), /*verify_cap=*/-1);
           return std::vector<Value>{kr.extension, kr.transform};
         }});
  };
  kan_op("KanExR", KanSide::Right);
  kan_op("KanExL", KanSide::Left);

  add({"KanInd", 5, 5, 1,
       [](const Args& a) {
         return is_fun(*a[0]) && is_fun(*a[1]) && is_nat(*a[2]) && is_fun(*a[3]) && is_nat(*a[4]);
       },
       [](const Args& a, const RunLimits&) -> std::vector<Value> {
         const FunctorData& g = as_fun(*a[0]);
         const FunctorData& r = as_fun(*a[1]);
         const NatTransData& alpha = as_nat(*a[2]);
         FunctorData rg = compose_functors(r, g);
         FunctorData f;
         if (alpha.src_fun == rg)
           f = alpha.tgt_fun;
         else if (alpha.tgt_fun == rg)
           f = alpha.src_fun;
         else
           fail(ErrKind::Type, "KanInd: the transformation does not involve R∘G");
         try {
           return {kan_induced(g, f, {r, alpha}, as_fun(*a[3]), as_nat(*a[4]))};
         } catch (const Error& e) {
           // a non-unique comparison means the pair was not a Kan extension,
           // which at the language level is a misuse of the operation
           if (e.kind() == ErrKind::Internal) fail(ErrKind::Type, e.message());
           throw;
         }
       }});

  add({"KanLif", 2, 2, 2,
       [](const Args& a) {
         return is_fun(*a[0]) && is_fun(*a[1]) && as_fun(*a[0]).cod == as_fun(*a[1]).cod;
       },
       [](const Args& a, const RunLimits& lim) {
         KanResult kr = kan_lifting(as_fun(*a[0]), as_fun(*a[1]), lim.size());
         return std::vector<Value>{kr.extension, kr.transform};
       }});

  add({"Coprod", 2, 2, 3, [](const Args& a) { return is_cat(*a[0]) && is_cat(*a[1]); },
       [](const Args& a, const RunLimits&) {
         auto r = coproduct(as_cat(*a[0]), as_cat(*a[1]));
         return std::vector<Value>{r.cat, r.inl, r.inr};
       }});

  add({"Coeq", 2, 2, 2,
       [](const Args& a) {
         return is_fun(*a[0]) && is_fun(*a[1]) && as_fun(*a[0]).dom == as_fun(*a[1]).dom &&
                as_fun(*a[0]).cod == as_fun(*a[1]).cod;
       },
       [](const Args& a, const RunLimits& lim) {
         auto r = coequalizer_cat(as_fun(*a[0]), as_fun(*a[1]), lim.max_morphisms);
         return std::vector<Value>{r.cat, r.proj};
       }});

  add({"Pullback", 2, 2, 3,
       [](const Args& a) {
         return is_fun(*a[0]) && is_fun(*a[1]) && as_fun(*a[0]).cod == as_fun(*a[1]).cod;
       },
       [](const Args& a, const RunLimits&) {
         auto r = pullback(as_fun(*a[0]), as_fun(*a[1]));
         return std::vector<Value>{r.cat, r.to_l, r.to_r};
       }});

  add({"Composable", 1, 1, 1, [](const Args& a) { return is_cat(*a[0]); },
       [](const Args& a, const RunLimits& lim) {
         return std::vector<Value>{composable_functor(as_cat(*a[0]), lim.size()).functor};
       }});

  return ops;
}

}  // namespace

const std::vector<OpSpec>& op_registry() {
  static const std::vector<OpSpec> ops = make_registry();
  return ops;
}

const OpSpec* find_op(const std::string& name) {
  for (const OpSpec& op : op_registry())
    if (op.name == name) return &op;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Interpreter

NatTransData promote_to_nat(const Value& v) {
  switch (kind_of(v)) {
    case ValueKind::Cat: return identity_nat(identity_functor(std::get<FinCat>(v)));
    case ValueKind::Functor: return identity_nat(std::get<FunctorData>(v));
    case ValueKind::NatTrans: return std::get<NatTransData>(v);
    case ValueKind::Obj: {
      const auto& o = std::get<ObjRef>(v);
      return identity_nat(determine_obj(o.home, o.id));
    }
    case ValueKind::Mor: {
      const auto& m = std::get<MorRef>(v);
      return identity_nat(determine_mor(m.home, m.id));
    }
  }
  fail(ErrKind::Internal, "unreachable");
}

bool values_equal_promoted(const Value& a, const Value& b) {
  return promote_to_nat(a) == promote_to_nat(b);
}

Value run_program(const SammyProgram& p, const Env& env, const RunLimits& limits) {
  Env vars;
  for (const auto& [name, kind] : p.inputs) {
    auto it = env.find(name);
    if (it == env.end()) fail(ErrKind::Type, "missing input '" + name + "'");
    if (kind_of(it->second) != kind)
      fail(ErrKind::Type, "input '" + name + "' should be a " + kind_name(kind) + ", got " +
                              kind_name(kind_of(it->second)));
    vars[name] = it->second;
  }

  std::map<std::string, size_t> label_pc;
  for (size_t i = 0; i < p.statements.size(); ++i)
    if (p.statements[i].label) label_pc[*p.statements[i].label] = i;

  long steps = 0;
  size_t pc = 0;
  while (pc < p.statements.size()) {
    const Statement& s = p.statements[pc];
    auto here = [&]() {
      return "line " + std::to_string(s.line) + (s.label ? " (" + *s.label + ")" : "");
    };
    if (s.kind != Statement::Kind::Input && ++steps > limits.max_steps)
      fail(ErrKind::StepLimit,
           "no Return after " + std::to_string(limits.max_steps) + " steps at " + here());
    switch (s.kind) {
      case Statement::Kind::Input: pc++; break;
      case Statement::Kind::Assign: {
        const OpSpec* op = find_op(s.call.op);
        std::vector<const Value*> args;
        for (const std::string& a : s.call.args) args.push_back(&vars.at(a));
        std::vector<Value> out;
        try {
          if (!op->applicable(args)) fail(ErrKind::Type, "arguments do not fit " + s.call.op);
          out = op->eval(args, limits);
          check_output_size(out, limits);
        } catch (const Error& e) {
          throw Error(e.kind(), e.message() + " [at " + here() + ": " + s.call.op + "]");
        }
        for (size_t i = 0; i < s.targets.size(); ++i) vars[s.targets[i]] = out[i];
        pc++;
        break;
      }
      case Statement::Kind::If:
        if (values_equal_promoted(vars.at(s.lhs), vars.at(s.rhs)))
          pc = label_pc.at(s.target_label);
        else
          pc++;
        break;
      case Statement::Kind::Goto: pc = label_pc.at(s.target_label); break;
      case Statement::Kind::Return: return vars.at(s.var);
    }
  }
  fail(ErrKind::Type, "program ended without Return");
}

}  // namespace sammy
