#include "sammy/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sammy {

ValueKind kind_of(const Value& v) {
  switch (v.index()) {
    case 0: return ValueKind::Cat;
    case 1: return ValueKind::Functor;
    case 2: return ValueKind::NatTrans;
    case 3: return ValueKind::Obj;
    default: return ValueKind::Mor;
  }
}

const char* kind_name(ValueKind k) {
  switch (k) {
    case ValueKind::Cat: return "Cat";
    case ValueKind::Functor: return "Functor";
    case ValueKind::NatTrans: return "NatTrans";
    case ValueKind::Obj: return "Obj";
    case ValueKind::Mor: return "Mor";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Validation

std::vector<Violation> validate_category(const FinCat& c) {
  std::vector<Violation> out;
  auto flag = [&](const char* law, const std::string& detail) {
    out.push_back({law, detail});
  };
  const int n = c.n_objects;
  const int m = c.n_morphisms();

  if (c.tgt.size() != c.src.size())
    flag("shape", "src/tgt length mismatch");
  if (static_cast<int>(c.identity.size()) != n)
    flag("shape", "identity table length != object count");
  if (c.comp.size() != static_cast<size_t>(m) * m)
    flag("shape", "comp table is not n_mor x n_mor");
  if (!out.empty()) return out;  // the law checks below index into the tables

  for (MorId f = 0; f < m; ++f) {
    if (c.src[f] < 0 || c.src[f] >= n) flag("src-range", "morphism " + std::to_string(f));
    if (c.tgt[f] < 0 || c.tgt[f] >= n) flag("tgt-range", "morphism " + std::to_string(f));
  }
  for (ObjId x = 0; x < n; ++x) {
    MorId i = c.identity[x];
    if (i < 0 || i >= m) {
      flag("identity-range", "object " + std::to_string(x));
    } else if (c.src[i] != x || c.tgt[i] != x) {
      flag("identity-endpoints", "identity of object " + std::to_string(x) + " is morphism " +
                                     std::to_string(i) + " : " + std::to_string(c.src[i]) + " -> " +
                                     std::to_string(c.tgt[i]));
    }
  }
  if (!out.empty()) return out;

  // comp defined exactly on composable pairs, with the right endpoints
  for (MorId g = 0; g < m; ++g) {
    for (MorId f = 0; f < m; ++f) {
      MorId gf = c.compose(g, f);
      if (c.src[g] != c.tgt[f]) {
        if (gf != kNoMor)
          flag("comp-domain", "comp(" + std::to_string(g) + "," + std::to_string(f) +
                                  ") defined on a non-composable pair");
        continue;
      }
      if (gf == kNoMor) {
        flag("comp-domain",
             "comp(" + std::to_string(g) + "," + std::to_string(f) + ") undefined");
      } else if (gf < 0 || gf >= m) {
        flag("comp-range", "comp(" + std::to_string(g) + "," + std::to_string(f) + ")");
      } else if (c.src[gf] != c.src[f] || c.tgt[gf] != c.tgt[g]) {
        flag("comp-endpoints", "comp(" + std::to_string(g) + "," + std::to_string(f) + ") = " +
                                   std::to_string(gf) + " has wrong endpoints");
      }
    }
  }
  if (!out.empty()) return out;

  for (MorId f = 0; f < m; ++f) {
    MorId li = c.compose(c.identity[c.tgt[f]], f);
    if (li != f)
      flag("left-identity", "comp(id" + std::to_string(c.tgt[f]) + ", " + std::to_string(f) +
                                ") = " + std::to_string(li));
    MorId ri = c.compose(f, c.identity[c.src[f]]);
    if (ri != f)
      flag("right-identity", "comp(" + std::to_string(f) + ", id" + std::to_string(c.src[f]) +
                                 ") = " + std::to_string(ri));
  }

  for (MorId h = 0; h < m; ++h)
    for (MorId g = 0; g < m; ++g) {
      if (c.src[h] != c.tgt[g]) continue;
      MorId hg = c.compose(h, g);
      for (MorId f = 0; f < m; ++f) {
        if (c.src[g] != c.tgt[f]) continue;
        MorId gf = c.compose(g, f);
        if (c.compose(hg, f) != c.compose(h, gf))
          flag("associativity", "triple (" + std::to_string(h) + "," + std::to_string(g) + "," +
                                    std::to_string(f) + ")");
      }
    }
  return out;
}

bool check_functor(const FunctorData& f, std::string* why) {
  auto no = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  const FinCat& a = f.dom;
  const FinCat& b = f.cod;
  if (static_cast<int>(f.obj_map.size()) != a.n_objects) return no("obj_map length");
  if (static_cast<int>(f.mor_map.size()) != a.n_morphisms()) return no("mor_map length");
  for (ObjId x = 0; x < a.n_objects; ++x)
    if (f.obj_map[x] < 0 || f.obj_map[x] >= b.n_objects) return no("obj_map range");
  for (MorId m = 0; m < a.n_morphisms(); ++m) {
    MorId fm = f.mor_map[m];
    if (fm < 0 || fm >= b.n_morphisms()) return no("mor_map range");
    if (b.src[fm] != f.obj_map[a.src[m]] || b.tgt[fm] != f.obj_map[a.tgt[m]])
      return no("src/tgt not preserved at morphism " + std::to_string(m));
  }
  for (ObjId x = 0; x < a.n_objects; ++x)
    if (f.mor_map[a.identity[x]] != b.identity[f.obj_map[x]])
      return no("identity not preserved at object " + std::to_string(x));
  for (MorId g = 0; g < a.n_morphisms(); ++g)
    for (MorId m = 0; m < a.n_morphisms(); ++m) {
      if (a.src[g] != a.tgt[m]) continue;
      if (f.mor_map[a.compose(g, m)] != b.compose(f.mor_map[g], f.mor_map[m]))
        return no("composition not preserved at (" + std::to_string(g) + "," + std::to_string(m) +
                  ")");
    }
  return true;
}

bool check_nat_trans(const NatTransData& t, std::string* why) {
  auto no = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  if (t.src_fun.dom != t.tgt_fun.dom || t.src_fun.cod != t.tgt_fun.cod)
    return no("functors not parallel");
  const FinCat& a = t.src_fun.dom;
  const FinCat& b = t.src_fun.cod;
  if (static_cast<int>(t.components.size()) != a.n_objects) return no("component count");
  for (ObjId x = 0; x < a.n_objects; ++x) {
    MorId cx = t.components[x];
    if (cx < 0 || cx >= b.n_morphisms()) return no("component range");
    if (b.src[cx] != t.src_fun.obj_map[x] || b.tgt[cx] != t.tgt_fun.obj_map[x])
      return no("component endpoints at object " + std::to_string(x));
  }
  for (MorId m = 0; m < a.n_morphisms(); ++m) {
    ObjId x = a.src[m], y = a.tgt[m];
    if (b.compose(t.tgt_fun.mor_map[m], t.components[x]) !=
        b.compose(t.components[y], t.src_fun.mor_map[m]))
      return no("naturality square at morphism " + std::to_string(m));
  }
  return true;
}

void require_valid(const FinCat& c, const char* where) {
  auto v = validate_category(c);
  if (!v.empty())
    fail(ErrKind::Internal,
         std::string(where) + " produced an invalid category: " + v.front().law + " (" +
             v.front().detail + ")");
}

void require_valid(const FunctorData& f, const char* where) {
  std::string why;
  if (!check_functor(f, &why))
    fail(ErrKind::Internal, std::string(where) + " produced an invalid functor: " + why);
}

void require_valid(const NatTransData& t, const char* where) {
  std::string why;
  if (!check_nat_trans(t, &why))
    fail(ErrKind::Internal, std::string(where) + " produced an invalid transformation: " + why);
}

// ---------------------------------------------------------------------------
// Constants

FinCat make_zero() { return FinCat{}; }

FinCat make_one() {
  FinCat c;
  c.n_objects = 1;
  c.src = {0};
  c.tgt = {0};
  c.identity = {0};
  c.comp = {0};
  return c;
}

FinCat make_two() {
  // morphisms: id0, id1, u : 0 -> 1
  FinCat c;
  c.n_objects = 2;
  c.src = {0, 1, 0};
  c.tgt = {0, 1, 1};
  c.identity = {0, 1};
  c.comp = std::vector<MorId>(9, kNoMor);
  auto at = [&](MorId g, MorId f) -> MorId& { return c.comp[g * 3 + f]; };
  at(0, 0) = 0;
  at(1, 1) = 1;
  at(2, 0) = 2;  // u ∘ id0
  at(1, 2) = 2;  // id1 ∘ u
  return c;
}

FinCat make_iso_two() {
  // morphisms: id0, id1, f : 0 -> 1, g : 1 -> 0 with g∘f = id0, f∘g = id1
  FinCat c;
  c.n_objects = 2;
  c.src = {0, 1, 0, 1};
  c.tgt = {0, 1, 1, 0};
  c.identity = {0, 1};
  c.comp = std::vector<MorId>(16, kNoMor);
  auto at = [&](MorId g, MorId f) -> MorId& { return c.comp[g * 4 + f]; };
  at(0, 0) = 0;
  at(1, 1) = 1;
  at(2, 0) = 2;
  at(1, 2) = 2;
  at(3, 1) = 3;
  at(0, 3) = 3;
  at(3, 2) = 0;  // g ∘ f = id0
  at(2, 3) = 1;  // f ∘ g = id1
  return c;
}

FinCat make_chain(int n) {
  if (n < 0) fail(ErrKind::Type, "chain length must be nonnegative");
  FinCat c;
  c.n_objects = n;
  // identities first, then the arrows i -> j (i < j) ordered by (i, j)
  for (ObjId i = 0; i < n; ++i) {
    c.src.push_back(i);
    c.tgt.push_back(i);
    c.identity.push_back(i);
  }
  for (ObjId i = 0; i < n; ++i)
    for (ObjId j = i + 1; j < n; ++j) {
      c.src.push_back(i);
      c.tgt.push_back(j);
    }
  int m = c.n_morphisms();
  c.comp.assign(static_cast<size_t>(m) * m, kNoMor);
  auto find = [&](ObjId i, ObjId j) -> MorId {
    for (MorId k = 0; k < m; ++k)
      if (c.src[k] == i && c.tgt[k] == j) return k;
    return kNoMor;
  };
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f)
      if (c.src[g] == c.tgt[f]) c.comp[g * m + f] = find(c.src[f], c.tgt[g]);
  return c;
}

FinCat make_discrete(int n) {
  FinCat c;
  c.n_objects = n;
  for (ObjId i = 0; i < n; ++i) {
    c.src.push_back(i);
    c.tgt.push_back(i);
    c.identity.push_back(i);
  }
  c.comp.assign(static_cast<size_t>(n) * n, kNoMor);
  for (MorId i = 0; i < n; ++i) c.comp[i * n + i] = i;
  return c;
}

FinCat constant(ConstantCat name) {
  switch (name) {
    case ConstantCat::Zero: return make_zero();
    case ConstantCat::One: return make_one();
    case ConstantCat::Two: return make_two();
    case ConstantCat::IsoTwo: return make_iso_two();
  }
  fail(ErrKind::Internal, "unknown constant");
}

FunctorData constant_functor(ConstantFun name) {
  switch (name) {
    case ConstantFun::S: return determine_obj(make_two(), 0);
    case ConstantFun::T: return determine_obj(make_two(), 1);
    case ConstantFun::Bang01: return bang(make_zero(), make_one());
    case ConstantFun::Bang02: return bang(make_zero(), make_two());
    case ConstantFun::Bang21: return bang(make_two(), make_one());
    case ConstantFun::SrcOf: return determine_obj(make_iso_two(), 0);
    case ConstantFun::TgtOf: return determine_obj(make_iso_two(), 1);
  }
  fail(ErrKind::Internal, "unknown constant functor");
}

// ---------------------------------------------------------------------------
// Elementary operations

FunctorData identity_functor(const FinCat& c) {
  FunctorData f;
  f.dom = c;
  f.cod = c;
  f.obj_map.resize(c.n_objects);
  std::iota(f.obj_map.begin(), f.obj_map.end(), 0);
  f.mor_map.resize(c.n_morphisms());
  std::iota(f.mor_map.begin(), f.mor_map.end(), 0);
  return f;
}

FinCat source(const FunctorData& f) { return f.dom; }
FinCat target(const FunctorData& f) { return f.cod; }

FinCat opposite(const FinCat& c) {
  FinCat o = c;
  std::swap(o.src, o.tgt);
  int m = c.n_morphisms();
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f) o.comp[g * m + f] = c.comp[static_cast<size_t>(f) * m + g];
  return o;
}

FunctorData opposite(const FunctorData& f) {
  FunctorData o = f;
  o.dom = opposite(f.dom);
  o.cod = opposite(f.cod);
  return o;
}

FunctorData bang(const FinCat& a, const FinCat& b) {
  FunctorData f;
  f.dom = a;
  f.cod = b;
  if (a.n_objects == 0) return f;
  if (b.n_objects == 1 && b.n_morphisms() == 1) {
    f.obj_map.assign(a.n_objects, 0);
    f.mor_map.assign(a.n_morphisms(), 0);
    return f;
  }
  fail(ErrKind::Type, "no unique functor: domain is not empty and codomain is not terminal");
}

Value pick(const FunctorData& f) {
  if (f.dom == make_one()) return ObjRef{f.cod, f.obj_map[0]};
  if (f.dom == make_two()) return MorRef{f.cod, f.mor_map[2]};
  fail(ErrKind::Type, "pick needs a functor whose source is One or Two");
}

FunctorData determine_obj(const FinCat& c, ObjId o) {
  if (o < 0 || o >= c.n_objects) fail(ErrKind::Type, "determine: unknown object");
  FunctorData f;
  f.dom = make_one();
  f.cod = c;
  f.obj_map = {o};
  f.mor_map = {c.identity[o]};
  return f;
}

FunctorData determine_mor(const FinCat& c, MorId m) {
  if (m < 0 || m >= c.n_morphisms()) fail(ErrKind::Type, "determine: unknown morphism");
  FunctorData f;
  f.dom = make_two();
  f.cod = c;
  f.obj_map = {c.src[m], c.tgt[m]};
  f.mor_map = {c.identity[c.src[m]], c.identity[c.tgt[m]], m};
  return f;
}

FunctorData determine(const FinCat& c, const Value& x) {
  if (const auto* o = std::get_if<ObjRef>(&x)) {
    if (o->home != c) fail(ErrKind::Type, "determine: object does not belong to the category");
    return determine_obj(c, o->id);
  }
  if (const auto* m = std::get_if<MorRef>(&x)) {
    if (m->home != c) fail(ErrKind::Type, "determine: morphism does not belong to the category");
    return determine_mor(c, m->id);
  }
  fail(ErrKind::Type, "determine needs an object or morphism reference");
}

std::vector<MorId> hom_set(const FinCat& c, ObjId a, ObjId b) {
  if (a < 0 || a >= c.n_objects || b < 0 || b >= c.n_objects)
    fail(ErrKind::Type, "hom_set: unknown object");
  std::vector<MorId> out;
  for (MorId m = 0; m < c.n_morphisms(); ++m)
    if (c.src[m] == a && c.tgt[m] == b) out.push_back(m);
  return out;
}

FunctorData compose_functors(const FunctorData& outer, const FunctorData& inner) {
  if (inner.cod != outer.dom)
    fail(ErrKind::Type, "functor composition: codomain/domain mismatch");
  FunctorData f;
  f.dom = inner.dom;
  f.cod = outer.cod;
  f.obj_map.resize(inner.obj_map.size());
  for (size_t i = 0; i < inner.obj_map.size(); ++i) f.obj_map[i] = outer.obj_map[inner.obj_map[i]];
  f.mor_map.resize(inner.mor_map.size());
  for (size_t i = 0; i < inner.mor_map.size(); ++i) f.mor_map[i] = outer.mor_map[inner.mor_map[i]];
  return f;
}

std::pair<FinCat, FunctorData> relabel(const FinCat& c, const std::vector<ObjId>& obj_perm,
                                       const std::vector<MorId>& mor_perm) {
  const int n = c.n_objects, m = c.n_morphisms();
  FinCat r;
  r.n_objects = n;
  r.src.resize(m);
  r.tgt.resize(m);
  r.identity.resize(n);
  r.comp.assign(static_cast<size_t>(m) * m, kNoMor);
  for (MorId f = 0; f < m; ++f) {
    r.src[mor_perm[f]] = obj_perm[c.src[f]];
    r.tgt[mor_perm[f]] = obj_perm[c.tgt[f]];
  }
  for (ObjId x = 0; x < n; ++x) r.identity[obj_perm[x]] = mor_perm[c.identity[x]];
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f) {
      MorId gf = c.compose(g, f);
      if (gf != kNoMor)
        r.comp[static_cast<size_t>(mor_perm[g]) * m + mor_perm[f]] = mor_perm[gf];
    }
  FunctorData w;
  w.dom = c;
  w.cod = r;
  w.obj_map = obj_perm;
  w.mor_map = mor_perm;
  return {r, w};
}

std::pair<FinCat, FunctorData> shuffle(const FinCat& c, std::mt19937& rng) {
  std::vector<ObjId> op(c.n_objects);
  std::iota(op.begin(), op.end(), 0);
  std::shuffle(op.begin(), op.end(), rng);
  std::vector<MorId> mp(c.n_morphisms());
  std::iota(mp.begin(), mp.end(), 0);
  std::shuffle(mp.begin(), mp.end(), rng);
  return relabel(c, op, mp);
}

// ---------------------------------------------------------------------------
// Exact keys

static void key_cat(std::string& s, const FinCat& c) {
  s += 'C';
  s += std::to_string(c.n_objects);
  s += ':';
  for (size_t i = 0; i < c.src.size(); ++i) {
    s += std::to_string(c.src[i]);
    s += '>';
    s += std::to_string(c.tgt[i]);
    s += ',';
  }
  s += ';';
  for (MorId i : c.identity) {
    s += std::to_string(i);
    s += ',';
  }
  s += ';';
  for (MorId x : c.comp) {
    s += (x == kNoMor) ? std::string(".") : std::to_string(x);
    s += ',';
  }
}

static void key_fun(std::string& s, const FunctorData& f) {
  s += 'F';
  key_cat(s, f.dom);
  s += '|';
  key_cat(s, f.cod);
  s += '|';
  for (ObjId o : f.obj_map) {
    s += std::to_string(o);
    s += ',';
  }
  s += ';';
  for (MorId m : f.mor_map) {
    s += std::to_string(m);
    s += ',';
  }
}

std::string exact_key(const FinCat& c) {
  std::string s;
  key_cat(s, c);
  return s;
}

std::string exact_key(const FunctorData& f) {
  std::string s;
  key_fun(s, f);
  return s;
}

std::string exact_key(const NatTransData& t) {
  std::string s;
  s += 'N';
  key_fun(s, t.src_fun);
  s += '|';
  key_fun(s, t.tgt_fun);
  s += '|';
  for (MorId m : t.components) {
    s += std::to_string(m);
    s += ',';
  }
  return s;
}

std::string exact_key(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, FinCat>) return exact_key(x);
        else if constexpr (std::is_same_v<T, FunctorData>) return exact_key(x);
        else if constexpr (std::is_same_v<T, NatTransData>) return exact_key(x);
        else if constexpr (std::is_same_v<T, ObjRef>)
          return "O" + std::to_string(x.id) + "@" + exact_key(x.home);
        else
          return "M" + std::to_string(x.id) + "@" + exact_key(x.home);
      },
      v);
}

}  // namespace sammy
