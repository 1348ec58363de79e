#include "sammy/search.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#ifdef SAMMY_HAVE_OPENMP
#include <omp.h>
#endif

#include "sammy/canon.hpp"
#include "sammy/stdlib.hpp"

namespace sammy {

// ---------------------------------------------------------------------------
// Evaluation kernel

std::vector<Value> eval_application(const OpApplication& app, const RunLimits& limits) {
  const OpSpec& op = op_registry()[app.op_index];
  std::vector<const Value*> args;
  args.reserve(app.args.size());
  for (const Value& v : app.args) args.push_back(&v);
  if (!op.applicable(args)) return {};
  auto big = [&](const FinCat& c) {
    return c.n_objects > limits.max_objects || c.n_morphisms() > limits.max_morphisms;
  };
  try {
    std::vector<Value> out = op.eval(args, limits);
    for (const Value& v : out) {
      if (const FinCat* c = std::get_if<FinCat>(&v))
        if (big(*c)) return {};
      if (const FunctorData* f = std::get_if<FunctorData>(&v))
        if (big(f->dom) || big(f->cod)) return {};
      if (const NatTransData* t = std::get_if<NatTransData>(&v))
        if (big(t->src_fun.dom) || big(t->src_fun.cod)) return {};
    }
    return out;
  } catch (const Error& e) {
    if (e.kind() == ErrKind::Internal) throw;
    return {};  // type error, size bound or missing universal prunes the edge
  }
}

std::vector<std::vector<Value>> eval_applications_serial(const std::vector<OpApplication>& apps,
                                                         const RunLimits& limits) {
  std::vector<std::vector<Value>> out(apps.size());
  for (size_t i = 0; i < apps.size(); ++i) out[i] = eval_application(apps[i], limits);
  return out;
}

std::vector<std::vector<Value>> eval_applications_parallel(const std::vector<OpApplication>& apps,
                                                           const RunLimits& limits, int workers) {
  std::vector<std::vector<Value>> out(apps.size());
#ifdef SAMMY_HAVE_OPENMP
  if (workers > 0) omp_set_num_threads(workers);
#pragma omp parallel for schedule(dynamic)
  for (size_t i = 0; i < apps.size(); ++i) out[i] = eval_application(apps[i], limits);
#else
  (void)workers;
  for (size_t i = 0; i < apps.size(); ++i) out[i] = eval_application(apps[i], limits);
#endif
  return out;
}

// ---------------------------------------------------------------------------
// Search

namespace {

struct StateRec {
  std::vector<int> vids;  // sorted set of value ids
  int parent = -1;        // -2 marks the root
  int op_index = -1;
  std::vector<int> arg_vids;
  std::vector<int> out_vids;
  int depth = 0;
  std::string program;  // cached text for tie-breaking
};

struct Interner {
  SearchMode mode;
  std::unordered_map<std::string, int> by_key;
  std::vector<Value> values;
  std::vector<ValueKind> kinds;
  std::unordered_map<std::string, std::string> canon_memo;

  std::string key_of(const Value& v) {
    if (mode == SearchMode::Exact) return exact_key(v);
    std::string ek = exact_key(v);
    auto it = canon_memo.find(ek);
    if (it != canon_memo.end()) return it->second;
    std::string ck = canonical_key(v);
    canon_memo.emplace(std::move(ek), ck);
    return ck;
  }

  std::pair<int, bool> intern(const Value& v) {
    std::string k = key_of(v);
    auto it = by_key.find(k);
    if (it != by_key.end()) return {it->second, false};
    int id = static_cast<int>(values.size());
    by_key.emplace(std::move(k), id);
    values.push_back(v);
    kinds.push_back(kind_of(v));
    return {id, true};
  }
};

std::string state_key(const std::vector<int>& vids) {
  std::string s;
  for (int v : vids) {
    s += std::to_string(v);
    s += ',';
  }
  return s;
}

// Enumerates the operation applications available to a state, in a fixed
// order. The comparison inducer gets relational prefilters; everything else
// walks kind buckets.
template <typename Visit>
void enumerate_sites(const std::vector<int>& vids, const Interner& interner, Visit&& visit) {
  std::array<std::vector<int>, 5> by_kind;
  for (int vid : vids) by_kind[static_cast<int>(interner.kinds[vid])].push_back(vid);
  const auto& cats = by_kind[0];
  const auto& funs = by_kind[1];
  const auto& nats = by_kind[2];
  const auto& objs = by_kind[3];
  const auto& mors = by_kind[4];
  const auto& ops = op_registry();

  auto fun_of = [&](int vid) -> const FunctorData& {
    return std::get<FunctorData>(interner.values[vid]);
  };

  for (size_t oi = 0; oi < ops.size(); ++oi) {
    const std::string& name = ops[oi].name;
    int o = static_cast<int>(oi);
    if (name == "Zero" || name == "One" || name == "Two" || name == "IsoTwo") {
      visit(o, {});
    } else if (name == "S" || name == "T") {
      visit(o, {});
      for (int c : cats) visit(o, {c});
    } else if (name == "Bang" || name == "Coprod") {
      for (int a : cats)
        for (int b : cats) visit(o, {a, b});
    } else if (name == "Ident" || name == "Op") {
      for (int c : cats) visit(o, {c});
      for (int f : funs) visit(o, {f});
    } else if (name == "Source" || name == "Target") {
      for (int f : funs) visit(o, {f});
      for (int n : nats) visit(o, {n});
    } else if (name == "Pick") {
      for (int f : funs) visit(o, {f});
    } else if (name == "Determine") {
      for (int x : objs) visit(o, {x});
      for (int x : mors) visit(o, {x});
    } else if (name == "Hcomp") {
      for (int a : funs) {
        for (int b : funs) visit(o, {a, b});
        for (int b : nats) visit(o, {a, b});
      }
      for (int a : nats) {
        for (int b : funs) visit(o, {a, b});
        for (int b : nats) visit(o, {a, b});
      }
    } else if (name == "Vcomp") {
      for (int a : nats)
        for (int b : nats) visit(o, {a, b});
    } else if (name == "Pow") {
      for (int a : cats)
        for (int b : cats) visit(o, {a, b});
      for (int f : funs)
        for (int b : cats) visit(o, {f, b});
    } else if (name == "KanExR" || name == "KanExL" || name == "KanLif" || name == "Coeq" ||
               name == "Pullback") {
      for (int a : funs)
        for (int b : funs) visit(o, {a, b});
    } else if (name == "KanInd") {
      // γ = KanInd(G, R, α, H, β): α must relate R∘G, H must be parallel to R
      for (int g : funs)
        for (int r : funs) {
          if (fun_of(g).cod != fun_of(r).dom) continue;
          FunctorData rg = compose_functors(fun_of(r), fun_of(g));
          for (int al : nats) {
            const NatTransData& alpha = std::get<NatTransData>(interner.values[al]);
            if (alpha.src_fun != rg && alpha.tgt_fun != rg) continue;
            for (int h : funs) {
              if (fun_of(h).dom != fun_of(r).dom || fun_of(h).cod != fun_of(r).cod) continue;
              for (int be : nats) visit(o, {g, r, al, h, be});
            }
          }
        }
    } else if (name == "Composable") {
      for (int c : cats) visit(o, {c});
    }
  }
}

std::string render_program(const std::vector<StateRec>& states, int idx,
                           const std::vector<std::pair<std::string, Value>>& given,
                           Interner& interner, int return_vid = -1) {
  std::vector<int> chain;
  for (int i = idx; i >= 0 && states[i].parent != -2; i = states[i].parent) {
    if (states[i].op_index < 0) break;
    chain.push_back(i);
  }
  std::reverse(chain.begin(), chain.end());
  std::map<int, std::string> names;
  std::string out;
  for (const auto& [name, v] : given) {
    auto [vid, fresh] = interner.intern(v);
    (void)fresh;
    names[vid] = name;
    out += "Input " + name + " : " + std::string(kind_name(kind_of(v))) + "\n";
  }
  int counter = 0;
  const auto& ops = op_registry();
  for (int i : chain) {
    const StateRec& s = states[i];
    std::string line;
    for (size_t o = 0; o < s.out_vids.size(); ++o) {
      if (o) line += ", ";
      int vid = s.out_vids[o];
      if (!names.count(vid)) names[vid] = "V" + std::to_string(++counter);
      line += names[vid];
    }
    line += " = " + ops[s.op_index].name + "(";
    for (size_t a = 0; a < s.arg_vids.size(); ++a) {
      if (a) line += ", ";
      line += names.at(s.arg_vids[a]);
    }
    line += ")";
    out += line + "\n";
  }
  if (return_vid >= 0) out += "Return " + names.at(return_vid) + "\n";
  return out;
}

}  // namespace

std::vector<ComplexityReport> k_search_many(
    const std::vector<Value>& targets, const std::vector<std::pair<std::string, Value>>& given,
    SearchMode mode, const SearchBudget& budget) {
  std::vector<ComplexityReport> reports(targets.size());
  for (auto& r : reports) {
    r.mode = mode;
    r.budget = budget;
    r.note =
        "lengths are exact for straight-line programs within the stated budget; with branching "
        "they are upper bounds";
  }
  if (targets.empty()) return reports;

  Interner interner{mode, {}, {}, {}, {}};
  std::unordered_map<std::string, std::vector<size_t>> wanted;  // target key -> report indices
  for (size_t t = 0; t < targets.size(); ++t) {
    reports[t].target_key = interner.key_of(targets[t]);
    wanted[reports[t].target_key].push_back(t);
  }
  size_t unfound = targets.size();

  std::vector<StateRec> states;
  std::unordered_map<std::string, int> state_by_key;
  std::unordered_map<std::string, std::vector<Value>> app_cache;
  // interned output ids per application, so outputs are keyed exactly once
  std::unordered_map<std::string, std::vector<int>> app_vids;

  StateRec root;
  root.parent = -2;
  for (const auto& [name, v] : given) {
    auto [vid, fresh] = interner.intern(v);
    (void)fresh;
    root.vids.push_back(vid);
  }
  std::sort(root.vids.begin(), root.vids.end());
  root.vids.erase(std::unique(root.vids.begin(), root.vids.end()), root.vids.end());
  states.push_back(root);
  state_by_key[state_key(root.vids)] = 0;

  long root_cats = 0;
  for (int vid : root.vids)
    if (interner.kinds[vid] == ValueKind::Cat) root_cats++;
  for (auto& r : reports) {
    r.states_per_depth.push_back(1);
    r.categories_per_depth.push_back(root_cats);
  }

  for (int vid : states[0].vids) {
    auto it = wanted.find(interner.key_of(interner.values[vid]));
    if (it == wanted.end()) continue;
    for (size_t t : it->second) {
      ComplexityReport& r = reports[t];
      if (r.found) continue;
      r.found = true;
      r.k = 0;
      r.exact = true;
      r.status = "found";
      r.witness = render_program(states, 0, given, interner, vid);
      unfound--;
    }
  }

  RunLimits limits = budget.run_limits();
  std::vector<int> frontier = {0};
  bool truncated = false;
  int depth = 0;

  auto app_key = [](int op, const std::vector<int>& arg_vids) {
    std::string k = std::to_string(op);
    k += '(';
    for (int v : arg_vids) {
      k += std::to_string(v);
      k += ',';
    }
    return k;
  };

  while (depth < budget.max_len && !frontier.empty() && !truncated && unfound > 0) {
    depth++;

    // gather the applications this frontier can make that were never
    // evaluated before
    std::vector<OpApplication> pending;
    std::vector<std::string> pending_keys;
    std::unordered_set<std::string> pending_seen;
    for (int si : frontier) {
      enumerate_sites(states[si].vids, interner, [&](int op, std::vector<int> arg_vids) {
        std::string key = app_key(op, arg_vids);
        if (app_cache.count(key) || !pending_seen.insert(key).second) return;
        OpApplication app;
        app.op_index = op;
        for (int vid : arg_vids) app.args.push_back(interner.values[vid]);
        pending.push_back(std::move(app));
        pending_keys.push_back(std::move(key));
      });
    }
    auto results = budget.workers == 1 ? eval_applications_serial(pending, limits)
                                       : eval_applications_parallel(pending, limits, budget.workers);
    for (size_t i = 0; i < pending.size(); ++i)
      app_cache.emplace(std::move(pending_keys[i]), std::move(results[i]));

    // merge, in deterministic order
    std::vector<int> next;
    long new_categories = 0;
    std::set<int> target_vids;
    for (size_t fi = 0; fi < frontier.size() && !truncated; ++fi) {
      int parent = frontier[fi];
      enumerate_sites(states[parent].vids, interner, [&](int op, std::vector<int> arg_vids) {
        if (truncated) return;
        std::string akey = app_key(op, arg_vids);
        auto vit = app_vids.find(akey);
        if (vit == app_vids.end()) {
          const std::vector<Value>& outputs = app_cache.at(akey);
          std::vector<int> fresh_vids;
          for (const Value& v : outputs) {
            auto [vid, fresh] = interner.intern(v);
            fresh_vids.push_back(vid);
            if (fresh) {
              if (interner.kinds[vid] == ValueKind::Cat) new_categories++;
              if (wanted.count(interner.key_of(v))) target_vids.insert(vid);
            }
          }
          vit = app_vids.emplace(std::move(akey), std::move(fresh_vids)).first;
        }
        const std::vector<int>& out_vids = vit->second;
        if (out_vids.empty()) return;
        std::vector<int> vids = states[parent].vids;
        vids.insert(vids.end(), out_vids.begin(), out_vids.end());
        std::sort(vids.begin(), vids.end());
        vids.erase(std::unique(vids.begin(), vids.end()), vids.end());
        if (vids.size() == states[parent].vids.size()) return;  // nothing new

        StateRec cand;
        cand.vids = std::move(vids);
        cand.parent = parent;
        cand.op_index = op;
        cand.arg_vids = std::move(arg_vids);
        cand.out_vids = out_vids;
        cand.depth = depth;

        std::string key = state_key(cand.vids);
        auto it = state_by_key.find(key);
        if (it != state_by_key.end()) {
          int old_idx = it->second;
          if (states[old_idx].depth < depth) return;
          // same depth: keep the lexicographically least program text
          if (states[old_idx].program.empty())
            states[old_idx].program = render_program(states, old_idx, given, interner);
          states.push_back(cand);
          std::string cand_text =
              render_program(states, static_cast<int>(states.size()) - 1, given, interner);
          states.pop_back();
          if (cand_text < states[old_idx].program) {
            cand.program = std::move(cand_text);
            states[old_idx] = std::move(cand);
          }
          return;
        }
        if (static_cast<long>(states.size()) >= budget.max_states) {
          truncated = true;
          return;
        }
        int idx = static_cast<int>(states.size());
        states.push_back(std::move(cand));
        state_by_key.emplace(std::move(key), idx);
        next.push_back(idx);
      });
    }

    for (auto& r : reports) {
      r.states_per_depth.push_back(static_cast<long>(next.size()));
      r.categories_per_depth.push_back(new_categories);
    }

    for (int target_vid : target_vids) {
      std::string best;
      for (int si : next) {
        const StateRec& s = states[si];
        if (std::find(s.out_vids.begin(), s.out_vids.end(), target_vid) == s.out_vids.end())
          continue;
        std::string text = render_program(states, si, given, interner, target_vid);
        if (best.empty() || text < best) best = text;
      }
      if (best.empty()) continue;
      const std::string& tk = interner.key_of(interner.values[target_vid]);
      for (size_t t : wanted.at(tk)) {
        ComplexityReport& r = reports[t];
        if (r.found) continue;
        r.found = true;
        r.k = depth;
        r.exact = true;  // every shorter frontier was fully expanded
        r.status = "found";
        r.witness = best;
        unfound--;
      }
    }
    frontier = std::move(next);
  }

  for (auto& r : reports) {
    if (r.found) continue;
    r.exact = !truncated;
    r.status = "budget-exhausted";  // nothing found within the budget
  }
  for (auto& r : reports) r.distinct_values = static_cast<long>(interner.values.size());
  return reports;
}

ComplexityReport k_search(const Value& target,
                          const std::vector<std::pair<std::string, Value>>& given,
                          SearchMode mode, const SearchBudget& budget) {
  return k_search_many({target}, given, mode, budget).front();
}

Json report_to_json(const ComplexityReport& r) {
  Json j;
  j["target"] = r.target_key;
  j["status"] = r.status;
  j["found"] = r.found;
  if (r.found) j["k"] = r.k;
  j["exact"] = r.exact;
  j["mode"] = r.mode == SearchMode::UpToIso ? "iso" : "eq";
  if (r.found) j["witness"] = r.witness;
  j["budget"] = {{"max_len", r.budget.max_len},
                 {"max_objects", r.budget.max_objects},
                 {"max_morphisms", r.budget.max_morphisms},
                 {"max_states", r.budget.max_states}};
  j["states_per_depth"] = r.states_per_depth;
  j["categories_per_depth"] = r.categories_per_depth;
  j["distinct_values"] = r.distinct_values;
  j["note"] = r.note;
  return j;
}

std::string report_to_text(const ComplexityReport& r) {
  std::ostringstream out;
  out << "status: " << r.status << "\n";
  if (r.found) out << "k: " << r.k << (r.exact ? " (exact)" : " (upper bound)") << "\n";
  out << "mode: " << (r.mode == SearchMode::UpToIso ? "iso" : "eq") << "\n";
  out << "depth  states  new-categories\n";
  for (size_t d = 0; d < r.states_per_depth.size(); ++d) {
    std::string ds = std::to_string(d), ss = std::to_string(r.states_per_depth[d]);
    out << ds << std::string(7 - ds.size(), ' ') << ss << std::string(8 - std::min<size_t>(7, ss.size()), ' ')
        << r.categories_per_depth[d] << "\n";
  }
  out << "distinct values: " << r.distinct_values << "\n";
  if (r.found) out << "witness:\n" << r.witness;
  out << "note: " << r.note << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Theorem experiments

TheoremReport theorem_constants(const SearchBudget& budget) {
  TheoremReport rep;
  for (const char* m : {"product_pair", "double_self", "target_of", "compose_tri", "kan_pair"})
    rep.constants[m] = stdlib_program(m).length();
  const int c_pair = rep.constants["product_pair"];
  const int c_double = rep.constants["double_self"];
  const int c_target = rep.constants["target_of"];
  const int c_compos = rep.constants["compose_tri"];
  const int c_kan = rep.constants["kan_pair"];

  FinCat zero = make_zero(), one = make_one(), two = make_two(), iso2 = make_iso_two();

  std::vector<std::pair<std::pair<std::string, FinCat>, std::pair<std::string, FinCat>>> pairs = {
      {{"One", one}, {"One", one}},     {{"One", one}, {"Two", two}},
      {{"Two", two}, {"Two", two}},     {{"Zero", zero}, {"IsoTwo", iso2}},
      {{"Two", two}, {"IsoTwo", iso2}}, {{"IsoTwo", iso2}, {"One", one}}};
  std::vector<std::pair<std::string, FinCat>> doubles = {
      {"One", one}, {"Two", two}, {"IsoTwo", iso2}};
  std::vector<std::pair<std::string, FunctorData>> target_fs = {
      {"s", constant_functor(ConstantFun::S)},
      {"t", constant_functor(ConstantFun::T)},
      {"!:2->1", constant_functor(ConstantFun::Bang21)},
      {"src-of", constant_functor(ConstantFun::SrcOf)}};

  PowModel m22 = build_pow_model(two, two);
  NatTransData alpha = enumerate_nat_trans(m22.objects[0], m22.objects[1]).front();
  NatTransData gamma = enumerate_nat_trans(m22.objects[1], m22.objects[2]).front();
  NatTransData beta = vcomp(gamma, alpha);

  std::vector<std::pair<std::string, std::pair<FunctorData, FunctorData>>> kans = {
      {"(s, id_1)", {constant_functor(ConstantFun::S), identity_functor(one)}},
      {"(t, s)", {constant_functor(ConstantFun::T), constant_functor(ConstantFun::S)}},
  };

  // one shared pass answers every zero-input measurement
  std::vector<Value> base_targets;
  auto base_id = [&](const Value& v) {
    base_targets.push_back(v);
    return base_targets.size() - 1;
  };
  std::map<std::string, size_t> cat_k = {{"Zero", base_id(Value{zero})},
                                         {"One", base_id(Value{one})},
                                         {"Two", base_id(Value{two})},
                                         {"IsoTwo", base_id(Value{iso2})}};
  std::vector<size_t> pair_prods, double_prods, zero_prods;
  for (auto& [cn, dn] : pairs) pair_prods.push_back(base_id(Value{product(cn.second, dn.second).cat}));
  for (auto& [cn, c] : doubles) double_prods.push_back(base_id(Value{product(c, c).cat}));
  for (const FinCat& d : {two, iso2}) zero_prods.push_back(base_id(Value{product(zero, d).cat}));
  std::vector<size_t> target_bs, target_fs_ids;
  for (auto& [fn, f] : target_fs) {
    target_bs.push_back(base_id(Value{f.cod}));
    target_fs_ids.push_back(base_id(Value{f}));
  }
  size_t beta_id = base_id(Value{beta});
  size_t alpha_id = base_id(Value{alpha});
  std::vector<size_t> kan_rs, kan_fs;
  for (auto& [name, gf] : kans) {
    KanResult kr = kan_extension(KanSide::Left, gf.first, gf.second, {64, 512}, -1);
    kan_rs.push_back(base_id(Value{kr.extension}));
    kan_fs.push_back(base_id(Value{gf.second}));
  }

  auto base = k_search_many(base_targets, {}, SearchMode::UpToIso, budget);
  auto k_base = [&](size_t id, bool* conclusive) -> long {
    if (!base[id].found || !base[id].exact) *conclusive = false;
    return base[id].found ? base[id].k : -1;
  };
  auto k_rel = [&](const Value& v, const std::vector<std::pair<std::string, Value>>& given,
                   bool* conclusive) -> long {
    ComplexityReport r = k_search(v, given, SearchMode::UpToIso, budget);
    if (!r.found || !r.exact) *conclusive = false;
    return r.found ? r.k : -1;
  };

  for (size_t i = 0; i < pairs.size(); ++i) {
    auto& [cn, dn] = pairs[i];
    bool conclusive = true;
    long k_prod = k_base(pair_prods[i], &conclusive);
    long k_c = k_base(cat_k.at(cn.first), &conclusive);
    long k_d_given_c = k_rel(Value{dn.second}, {{"C", Value{cn.second}}}, &conclusive);
    TheoremRow row;
    row.theorem = "product-pair";
    row.instance = cn.first + " x " + dn.first;
    row.lhs = k_prod;
    row.rhs = k_c + k_d_given_c + c_pair;
    row.conclusive = conclusive;
    row.holds = conclusive && k_prod >= 0 && k_prod <= row.rhs;
    row.detail = "K(CxD)=" + std::to_string(k_prod) + " K(C)=" + std::to_string(k_c) +
                 " K(D|C)=" + std::to_string(k_d_given_c) + " c=" + std::to_string(c_pair);
    rep.rows.push_back(std::move(row));
  }
  {
    bool conclusive = true;
    long k_zero = k_base(cat_k.at("Zero"), &conclusive);
    const char* names[] = {"Two", "IsoTwo"};
    for (size_t i = 0; i < zero_prods.size(); ++i) {
      bool row_conclusive = conclusive;
      long k_prod = k_base(zero_prods[i], &row_conclusive);
      TheoremRow row;
      row.theorem = "product-empty";
      row.instance = std::string("Zero x ") + names[i];
      row.lhs = k_prod;
      row.rhs = k_zero;
      row.conclusive = row_conclusive;
      row.holds = row_conclusive && k_prod == k_zero;
      row.detail = "K(0xD)=" + std::to_string(k_prod) + " K(0)=" + std::to_string(k_zero);
      rep.rows.push_back(std::move(row));
    }
  }
  for (size_t i = 0; i < doubles.size(); ++i) {
    bool conclusive = true;
    long k_prod = k_base(double_prods[i], &conclusive);
    long k_c = k_base(cat_k.at(doubles[i].first), &conclusive);
    TheoremRow row;
    row.theorem = "double";
    row.instance = doubles[i].first + " x " + doubles[i].first;
    row.lhs = k_prod;
    row.rhs = k_c + c_double;
    row.conclusive = conclusive;
    row.holds = conclusive && k_prod >= 0 && k_prod <= row.rhs;
    row.detail = "K(CxC)=" + std::to_string(k_prod) + " K(C)=" + std::to_string(k_c) +
                 " c=" + std::to_string(c_double);
    rep.rows.push_back(std::move(row));
  }
  for (size_t i = 0; i < target_fs.size(); ++i) {
    bool conclusive = true;
    long k_b = k_base(target_bs[i], &conclusive);
    long k_f = k_base(target_fs_ids[i], &conclusive);
    TheoremRow row;
    row.theorem = "target";
    row.instance = target_fs[i].first;
    row.lhs = k_b;
    row.rhs = k_f + c_target;
    row.conclusive = conclusive;
    row.holds = conclusive && k_b >= 0 && k_b <= row.rhs;
    row.detail = "K(B)=" + std::to_string(k_b) + " K(F)=" + std::to_string(k_f) +
                 " c=" + std::to_string(c_target);
    rep.rows.push_back(std::move(row));
  }
  {
    bool conclusive = true;
    long k_beta = k_base(beta_id, &conclusive);
    long k_alpha = k_base(alpha_id, &conclusive);
    long k_gamma_given = k_rel(Value{gamma}, {{"AL", Value{alpha}}}, &conclusive);
    TheoremRow row;
    row.theorem = "compose";
    row.instance = "triangle in [2,2]";
    row.lhs = k_beta;
    row.rhs = k_alpha + k_gamma_given + c_compos;
    row.conclusive = conclusive;
    row.holds = conclusive && k_beta >= 0 && k_beta <= row.rhs;
    row.detail = "K(b)=" + std::to_string(k_beta) + " K(a)=" + std::to_string(k_alpha) +
                 " K(g|a)=" + std::to_string(k_gamma_given) + " c=" + std::to_string(c_compos);
    rep.rows.push_back(std::move(row));
  }
  for (size_t i = 0; i < kans.size(); ++i) {
    bool conclusive = true;
    long k_r = k_base(kan_rs[i], &conclusive);
    long k_f = k_base(kan_fs[i], &conclusive);
    long k_g_given_f = k_rel(Value{kans[i].second.first}, {{"F", Value{kans[i].second.second}}},
                             &conclusive);
    TheoremRow row;
    row.theorem = "kan";
    row.instance = kans[i].first;
    row.lhs = k_r;
    row.rhs = k_f + k_g_given_f + c_kan;
    row.conclusive = conclusive;
    row.holds = conclusive && k_r >= 0 && k_r <= row.rhs;
    row.detail = "K(Lan)=" + std::to_string(k_r) + " K(F)=" + std::to_string(k_f) +
                 " K(G|F)=" + std::to_string(k_g_given_f) + " c=" + std::to_string(c_kan) +
                 " (measures the extension functor of the pair)";
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

Json theorem_report_to_json(const TheoremReport& r) {
  Json j;
  j["constants"] = r.constants;
  Json rows = Json::array();
  for (const TheoremRow& row : r.rows)
    rows.push_back({{"theorem", row.theorem},
                    {"instance", row.instance},
                    {"lhs", row.lhs},
                    {"rhs", row.rhs},
                    {"holds", row.holds},
                    {"conclusive", row.conclusive},
                    {"detail", row.detail}});
  j["rows"] = std::move(rows);
  return j;
}

std::string theorem_report_to_text(const TheoremReport& r) {
  std::ostringstream out;
  out << "macro constants:";
  for (const auto& [name, len] : r.constants) out << " " << name << "=" << len;
  out << "\n";
  size_t w_theorem = 8, w_instance = 8;
  for (const TheoremRow& row : r.rows) {
    w_theorem = std::max(w_theorem, row.theorem.size());
    w_instance = std::max(w_instance, row.instance.size());
  }
  for (const TheoremRow& row : r.rows) {
    out << row.theorem << std::string(w_theorem - row.theorem.size() + 2, ' ') << row.instance
        << std::string(w_instance - row.instance.size() + 2, ' ')
        << (row.holds ? "holds " : (row.conclusive ? "FAILS " : "inconclusive ")) << "("
        << row.detail << ")\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Equivalence invariance

EquivalenceReport equivalence_invariance_experiment(
    const std::vector<std::pair<std::string, FinCat>>& pool, const SearchBudget& budget) {
  EquivalenceReport rep;
  rep.conversion_constant = stdlib_program("skeleton_via_coeq").length();

  std::vector<Value> targets;
  for (const auto& [name, c] : pool) targets.push_back(Value{c});
  auto results = k_search_many(targets, {}, SearchMode::UpToIso, budget);

  std::vector<int> cls(pool.size(), -1);
  int n_cls = 0;
  for (size_t i = 0; i < pool.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = n_cls++;
    for (size_t j = i + 1; j < pool.size(); ++j)
      if (cls[j] < 0 && equivalent(pool[i].second, pool[j].second)) cls[j] = cls[i];
  }
  rep.holds = true;
  for (int c = 0; c < n_cls; ++c) {
    EquivalenceClassRow row;
    long lo = -1, hi = -1;
    for (size_t i = 0; i < pool.size(); ++i) {
      if (cls[i] != c) continue;
      row.members.push_back(pool[i].first);
      long k = results[i].found ? results[i].k : -1;
      row.ks.push_back(k);
      if (k >= 0) {
        lo = lo < 0 ? k : std::min(lo, k);
        hi = std::max(hi, k);
      } else {
        rep.holds = false;
      }
    }
    row.spread = (lo >= 0) ? hi - lo : -1;
    if (row.spread > rep.conversion_constant) rep.holds = false;
    rep.classes.push_back(std::move(row));
  }
  return rep;
}

Json equivalence_report_to_json(const EquivalenceReport& r) {
  Json j;
  j["conversion_constant"] = r.conversion_constant;
  j["holds"] = r.holds;
  Json classes = Json::array();
  for (const auto& row : r.classes)
    classes.push_back({{"members", row.members}, {"ks", row.ks}, {"spread", row.spread}});
  j["classes"] = std::move(classes);
  return j;
}

std::string equivalence_report_to_text(const EquivalenceReport& r) {
  std::ostringstream out;
  out << "conversion constant (skeleton macro length): " << r.conversion_constant << "\n";
  for (const auto& row : r.classes) {
    out << "class {";
    for (size_t i = 0; i < row.members.size(); ++i) {
      if (i) out << ", ";
      out << row.members[i] << ":K=" << row.ks[i];
    }
    out << "} spread=" << row.spread << "\n";
  }
  out << (r.holds ? "all spreads within the conversion constant\n"
                  : "a spread exceeds the conversion constant\n");
  return out.str();
}

}  // namespace sammy
